#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmdef/compose.hpp"
#include "swarmdef/rng.hpp"

using namespace swarmdef;

namespace {

Chromosome team_of(std::initializer_list<int> warehouses,
                   HeuristicId h = HeuristicId::Chase, double p = 0.5) {
    Chromosome c;
    for (int w : warehouses) c.push_back({h, w, p});
    return c;
}

PoolMember member_of(std::initializer_list<int> warehouses, double winrate,
                     HeuristicId h = HeuristicId::Chase, long long visits = 100) {
    PoolMember m;
    m.chrom = team_of(warehouses, h);
    m.key = sub_chromosome_key(m.chrom);
    m.winrate = winrate;
    m.prior_winrate = winrate;
    m.prior_visits = visits;
    m.visits = visits;
    return m;
}

void set_pool(WinRateTable& t, int r, int b, std::vector<PoolMember> pool) {
    CellStats& cell = t.cell(r, b);
    cell.pool = std::move(pool);
    sort_pool(cell);
}

const PoolMember* find_member(const CellStats& cell, const SubChromosomeKey& key) {
    for (const PoolMember& m : cell.pool)
        if (m.key == key) return &m;
    return nullptr;
}

std::string candidates_repr(const std::vector<AssembledCandidate>& cands) {
    std::string out;
    for (const auto& c : cands) {
        out += exact_chromosome_repr(c.chrom);
        out += '\n';
    }
    return out;
}

} // namespace

TEST_SUITE("compose") {

TEST_CASE("refinement config validation") {
    RefinementConfig good;
    CHECK_NOTHROW(good.validate());
    CHECK(good.prior_strength_k == 200.0);

    RefinementConfig bad = good;
    bad.prior_strength_k = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = good;
    bad.candidates_per_partition = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = good;
    bad.eval_episodes_large = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = good;
    bad.refinement_iterations = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("refined_winrate matches precomputed blends") {
    CHECK(refined_winrate(200.0, 600, 0.2, 0.8) == 0.6500000000000001);
    CHECK(refined_winrate(200.0, 200, 0.4, 0.6) == 0.5);

    // zero evidence is a fixed point
    CHECK(refined_winrate(200.0, 0, 0.37, 0.99) == 0.37);
    CHECK(refined_winrate(50.0, 0, 0.0, 1.0) == 0.0);
}

TEST_CASE("refined_winrate is a convex blend that forgets the prior in the limit") {
    Rng rng(606);
    for (int i = 0; i < 10000; ++i) {
        const double k = rng.uniform(1.0, 1000.0);
        const long long n = static_cast<long long>(rng.uniform_int(100000));
        const double w_old = rng.next_double();
        const double w3 = rng.next_double();
        const double w = refined_winrate(k, n, w_old, w3);
        CHECK(w >= std::min(w_old, w3) - 1e-12);
        CHECK(w <= std::max(w_old, w3) + 1e-12);
        // equivalent incremental form
        const double nn = static_cast<double>(n);
        const double alt = w_old + nn / (nn + k) * (w3 - w_old);
        CHECK(w == doctest::Approx(alt).epsilon(1e-12));
    }
    const long long huge = 200ll * 1000000ll;
    CHECK(std::abs(refined_winrate(200.0, huge, 0.1, 0.9) - 0.9) < 1e-5);
}

TEST_CASE("sample_candidates assembles teams in partition order") {
    WinRateTable table(2, 4);
    set_pool(table, 2, 3, {member_of({0, 1, 2}, 0.7),
                           member_of({3, 4, 5}, 0.4, HeuristicId::ZoneDefense)});
    set_pool(table, 1, 1, {member_of({6}, 0.9),
                           member_of({7}, 0.2, HeuristicId::Circle)});

    DPSolution sol;
    sol.feasible = true;
    sol.value = 0.42;
    sol.partition = {2, 1};
    sol.allocation = {3, 1};

    RefinementConfig cfg;
    cfg.candidates_per_partition = 10;
    const auto cands = sample_candidates(sol, table, cfg, 9001);
    REQUIRE(cands.size() == 10);
    for (const AssembledCandidate& cand : cands) {
        CHECK(cand.dp_value == 0.42);
        REQUIRE(cand.chrom.size() == 4);
        REQUIRE(cand.provenance.size() == 2);
        CHECK(cand.provenance[0].r == 2);
        CHECK(cand.provenance[0].b == 3);
        CHECK(cand.provenance[1].r == 1);
        CHECK(cand.provenance[1].b == 1);

        // each segment is exactly the chromosome of the member it names
        const PoolMember* head = find_member(table.cell(2, 3), cand.provenance[0].key);
        REQUIRE(head != nullptr);
        const Chromosome seg_head(cand.chrom.begin(), cand.chrom.begin() + 3);
        CHECK(sub_chromosome_key(seg_head) == head->key);
        const PoolMember* tail = find_member(table.cell(1, 1), cand.provenance[1].key);
        REQUIRE(tail != nullptr);
        const Chromosome seg_tail(cand.chrom.begin() + 3, cand.chrom.end());
        CHECK(sub_chromosome_key(seg_tail) == tail->key);

        CHECK(cand.measured == 0.0);
        CHECK(cand.episodes == 0);
    }

    // same seed, same draws
    const auto again = sample_candidates(sol, table, cfg, 9001);
    CHECK(candidates_repr(again) == candidates_repr(cands));
}

TEST_CASE("sample_candidates sums sub-team lengths across the partition") {
    WinRateTable table(4, 8);
    set_pool(table, 4, 7, {member_of({0, 1, 2, 3, 4, 5, 6}, 0.6)});
    set_pool(table, 3, 4, {member_of({7, 0, 1, 2}, 0.5)});

    DPSolution sol;
    sol.feasible = true;
    sol.value = 0.15;
    sol.partition = {4, 3, 3};
    sol.allocation = {7, 4, 4};

    RefinementConfig cfg;
    cfg.candidates_per_partition = 3;
    const auto cands = sample_candidates(sol, table, cfg, 5);
    REQUIRE(cands.size() == 3);
    for (const auto& cand : cands) {
        CHECK(cand.chrom.size() == 15);
        CHECK(cand.provenance.size() == 3);
        // single-member pools make every candidate identical
        CHECK(exact_chromosome_repr(cand.chrom) ==
              exact_chromosome_repr(cands[0].chrom));
    }
}

TEST_CASE("zero-blue subgroups contribute no genes") {
    WinRateTable table(2, 4);
    set_pool(table, 2, 3, {member_of({0, 1, 2}, 0.7)});

    DPSolution sol;
    sol.feasible = true;
    sol.partition = {2, 1};
    sol.allocation = {3, 0};

    RefinementConfig cfg;
    cfg.candidates_per_partition = 2;
    const auto cands = sample_candidates(sol, table, cfg, 8);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0].chrom.size() == 3);
    REQUIRE(cands[0].provenance.size() == 1);
    CHECK(cands[0].provenance[0].r == 2);
    CHECK(cands[0].provenance[0].b == 3);
}

TEST_CASE("sample_candidates refuses an empty pool and names the cell") {
    WinRateTable table(2, 4);
    set_pool(table, 2, 3, {member_of({0, 1, 2}, 0.7)});

    DPSolution sol;
    sol.feasible = true;
    sol.partition = {2, 2};
    sol.allocation = {3, 2}; // cell (2,2) has no pool

    RefinementConfig cfg;
    try {
        sample_candidates(sol, table, cfg, 1);
        FAIL("expected table_coverage_error");
    } catch (const table_coverage_error& e) {
        CHECK(std::string(e.what()).find("empty pool at cell (2,2)") !=
              std::string::npos);
    }
}

TEST_CASE("members are drawn proportionally to their win rates") {
    WinRateTable table(1, 2);
    set_pool(table, 1, 2,
             {member_of({0, 1}, 0.6), member_of({2, 3}, 0.3, HeuristicId::Circle),
              member_of({4, 5}, 0.1, HeuristicId::ZoneDefense)});

    DPSolution sol;
    sol.feasible = true;
    sol.partition = {1};
    sol.allocation = {2};

    RefinementConfig cfg;
    cfg.candidates_per_partition = 10000;
    const auto cands = sample_candidates(sol, table, cfg, 77);

    std::map<SubChromosomeKey, int> picks;
    for (const auto& cand : cands) ++picks[cand.provenance[0].key];
    const CellStats& cell = table.cell(1, 2);
    // pool is sorted by winrate: 0.6, 0.3, 0.1; five-sigma binomial bands
    CHECK(std::abs(picks[cell.pool[0].key] - 6000) <= 245);
    CHECK(std::abs(picks[cell.pool[1].key] - 3000) <= 230);
    CHECK(std::abs(picks[cell.pool[2].key] - 1000) <= 150);
}

TEST_CASE("a zero-rate member keeps a floor weight and still gets sampled") {
    WinRateTable table(1, 2);
    set_pool(table, 1, 2,
             {member_of({0, 1}, 0.5), member_of({2, 3}, 0.0, HeuristicId::Circle)});

    DPSolution sol;
    sol.feasible = true;
    sol.partition = {1};
    sol.allocation = {2};

    RefinementConfig cfg;
    cfg.candidates_per_partition = 10000;
    const auto cands = sample_candidates(sol, table, cfg, 131);
    int zero_member = 0;
    for (const auto& cand : cands)
        if (cand.provenance[0].key == table.cell(1, 2).pool[1].key) ++zero_member;
    // weight 1e-3 against 0.5: expect about 20 of 10000
    CHECK(zero_member > 0);
    CHECK(zero_member < 100);
}

TEST_CASE("evaluate_candidates measures each team deterministically") {
    SimParams params;
    std::vector<AssembledCandidate> cands(3);
    cands[0].chrom = team_of({0, 4});
    cands[1].chrom = team_of({1, 5}, HeuristicId::PredictiveInterception);
    cands[2].chrom = team_of({0, 4}); // duplicate of the first

    evaluate_candidates(cands, 1, params, 6, 321);
    for (const auto& cand : cands) {
        CHECK(cand.episodes == 6);
        CHECK(cand.wins >= 0);
        CHECK(cand.wins <= 6);
        CHECK(cand.measured == static_cast<double>(cand.wins) / 6.0);
    }
    // identical teams facing the same episode block score identically
    CHECK(cands[0].wins == cands[2].wins);

    std::vector<AssembledCandidate> rerun = cands;
    for (auto& c : rerun) {
        c.measured = 0.0;
        c.wins = 0;
        c.episodes = 0;
    }
    evaluate_candidates(rerun, 1, params, 6, 321);
    for (size_t i = 0; i < cands.size(); ++i) {
        CHECK(rerun[i].wins == cands[i].wins);
        CHECK(rerun[i].measured == cands[i].measured);
    }
}

TEST_CASE("attribute accumulates episodes and wins per provenance key") {
    AttributionLedger ledger;

    AssembledCandidate c1;
    c1.episodes = 128;
    c1.wins = 64;
    c1.provenance = {{2, 3, "X"}, {1, 1, "Y"}};
    AssembledCandidate c2;
    c2.episodes = 128;
    c2.wins = 32;
    c2.provenance = {{2, 3, "X"}};

    attribute({c1}, ledger);
    REQUIRE(ledger.rows.count("X") == 1);
    REQUIRE(ledger.rows.count("Y") == 1);
    CHECK(ledger.rows["X"].episodes == 128);
    CHECK(ledger.rows["X"].wins == 64);
    CHECK(ledger.rows["X"].r == 2);
    CHECK(ledger.rows["X"].b == 3);
    CHECK(ledger.rows["X"].w3() == 0.5);

    attribute({c2}, ledger);
    CHECK(ledger.rows["X"].episodes == 256);
    CHECK(ledger.rows["X"].wins == 96);
    CHECK(ledger.rows["X"].w3() == 0.375);
    CHECK(ledger.rows["Y"].episodes == 128);
    CHECK(ledger.rows["Y"].wins == 64);

    // a batch distributes every candidate to all of its sub-teams
    AssembledCandidate c3;
    c3.episodes = 10;
    c3.wins = 7;
    c3.provenance = {{1, 1, "Y"}, {1, 2, "Z"}};
    attribute({c1, c2, c3}, ledger);
    CHECK(ledger.rows["X"].episodes == 512);
    CHECK(ledger.rows["Y"].episodes == 266);
    CHECK(ledger.rows["Z"].episodes == 10);
    CHECK(ledger.rows["Z"].wins == 7);

    long long total = 0;
    for (const auto& [key, row] : ledger.rows) total += row.episodes;
    CHECK(total == 128 * 2 + 128 + (128 * 2 + 128) + 10 * 2);

    LedgerRow empty;
    CHECK(empty.w3() == 0.0);
}

TEST_CASE("refine_winrates blends the frozen prior with cumulative evidence") {
    WinRateTable table(1, 2);
    PoolMember a = member_of({0, 1}, 0.5);
    a.prior_visits = 100;
    a.visits = 100;
    PoolMember b = member_of({2, 3}, 0.45, HeuristicId::Circle);
    set_pool(table, 1, 2, {a, b});

    AttributionLedger ledger;
    ledger.rows[a.key] = {1, 2, 400, 300}; // w3 = 0.75

    refine_winrates(table, ledger, 200.0);
    const PoolMember* ra = find_member(table.cell(1, 2), a.key);
    REQUIRE(ra != nullptr);
    CHECK(ra->winrate == refined_winrate(200.0, 400, 0.5, 0.75));
    CHECK(ra->winrate == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(ra->prior_winrate == 0.5); // prior stays frozen
    CHECK(ra->prior_visits == 100);
    CHECK(ra->visits == 100 + 400);

    // the member without evidence is untouched
    const PoolMember* rb = find_member(table.cell(1, 2), b.key);
    REQUIRE(rb != nullptr);
    CHECK(rb->winrate == 0.45);
    CHECK(rb->visits == 100);

    // reapplying the same cumulative ledger is a no-op, not a second blend
    const double once = ra->winrate;
    refine_winrates(table, ledger, 200.0);
    CHECK(find_member(table.cell(1, 2), a.key)->winrate == once);

    // more evidence pulls the estimate further toward the measured rate
    ledger.rows[a.key].episodes = 4000;
    ledger.rows[a.key].wins = 3000;
    refine_winrates(table, ledger, 200.0);
    const double more = find_member(table.cell(1, 2), a.key)->winrate;
    CHECK(more > once);
    CHECK(more < 0.75);
    CHECK(more == refined_winrate(200.0, 4000, 0.5, 0.75));

    CHECK_THROWS_AS(refine_winrates(table, ledger, 0.0), std::invalid_argument);
}

TEST_CASE("refinement reorders the pool and refreshes the cell stats") {
    WinRateTable table(1, 2);
    set_pool(table, 1, 2,
             {member_of({0, 1}, 0.6), member_of({2, 3}, 0.5, HeuristicId::Circle)});
    const SubChromosomeKey underdog = table.cell(1, 2).pool[1].key;

    AttributionLedger ledger;
    ledger.rows[underdog] = {1, 2, 2000, 1800}; // w3 = 0.9
    refine_winrates(table, ledger, 200.0);

    const CellStats& cell = table.cell(1, 2);
    CHECK(cell.pool[0].key == underdog);
    const double lifted = refined_winrate(200.0, 2000, 0.5, 0.9);
    CHECK(cell.pool[0].winrate == lifted);
    CHECK(cell.best_winrate == lifted);
    CHECK(cell.top_decile_mean == doctest::Approx((lifted + 0.6) / 2.0).epsilon(1e-12));
}

TEST_CASE("the refinement loop runs stage three and four end to end") {
    SimParams params;
    WinRateTable table(1, 8);
    for (int b = 1; b <= 8; ++b) table.cell(1, b).best_winrate = 0.1;
    set_pool(table, 1, 2,
             {member_of({0, 4}, 0.6), member_of({2, 6}, 0.55, HeuristicId::PredictiveInterception),
              member_of({1, 5}, 0.5, HeuristicId::ZoneDefense)});

    RefinementConfig cfg;
    cfg.candidates_per_partition = 8;
    cfg.eval_episodes_large = 8;
    cfg.refinement_iterations = 3;

    const WinRateTable before = table;
    std::vector<int> seen_iterations;
    const RefinementResult res = run_refinement_loop(
        1, 2, table, 1, TableStat::Best, cfg, params, 0xBEEF,
        true, [&](int it, const DPSolution& sol, const std::vector<AssembledCandidate>& cands,
                  const AttributionLedger& ledger, const WinRateTable&) {
            seen_iterations.push_back(it);
            CHECK(sol.partition == std::vector<int>({1}));
            CHECK(sol.allocation == std::vector<int>({2}));
            CHECK(cands.size() == 8);
            CHECK(!ledger.rows.empty());
        });

    CHECK(seen_iterations == std::vector<int>({0, 1, 2}));
    REQUIRE(res.curve.size() == 3);
    for (size_t i = 0; i < res.curve.size(); ++i) {
        CHECK(res.curve[i].iteration == static_cast<int>(i));
        CHECK(res.curve[i].best >= 0.0);
        CHECK(res.curve[i].best <= 1.0);
        if (i > 0) CHECK(res.curve[i].best >= res.curve[i - 1].best); // running max
    }
    CHECK(res.best.measured == res.curve.back().best);
    CHECK(res.best.episodes == 8);
    CHECK(res.best.chrom.size() == 2);

    // every ledger row keys a pool member and carries the full episode count
    long long total_eps = 0;
    for (const auto& [key, row] : res.ledger.rows) {
        CHECK(find_member(before.cell(1, 2), key) != nullptr);
        total_eps += row.episodes;
    }
    CHECK(total_eps == 3ll * 8 * 8);

    // the argument table is taken by value; the refined copy comes back in
    // the result while visible evidence lands in its pool rates
    CHECK(table.cell(1, 2).pool[0].winrate == before.cell(1, 2).pool[0].winrate);
    bool any_refined = false;
    for (const PoolMember& m : res.table.cell(1, 2).pool)
        if (m.winrate != m.prior_winrate) any_refined = true;
    CHECK(any_refined);

    // bit-identical on replay
    const RefinementResult replay = run_refinement_loop(1, 2, before, 1, TableStat::Best,
                                                        cfg, params, 0xBEEF);
    CHECK(exact_chromosome_repr(replay.best.chrom) ==
          exact_chromosome_repr(res.best.chrom));
    REQUIRE(replay.curve.size() == res.curve.size());
    for (size_t i = 0; i < res.curve.size(); ++i) {
        CHECK(replay.curve[i].best == res.curve[i].best);
        CHECK(replay.curve[i].top_decile == res.curve[i].top_decile);
    }
}

TEST_CASE("the sampling-only arm shares its first iteration with the full loop") {
    SimParams params;
    WinRateTable table(1, 8);
    set_pool(table, 1, 3,
             {member_of({0, 3, 6}, 0.6), member_of({1, 4, 7}, 0.5, HeuristicId::Circle)});
    for (int b = 1; b <= 8; ++b)
        if (b != 3) table.cell(1, b).best_winrate = 0.01;

    RefinementConfig cfg;
    cfg.candidates_per_partition = 6;
    cfg.eval_episodes_large = 6;
    cfg.refinement_iterations = 2;

    struct Snap {
        std::string cands;
        std::vector<double> measured;
    };
    auto capture = [](std::vector<Snap>& into) {
        return [&into](int, const DPSolution&, const std::vector<AssembledCandidate>& cands,
                       const AttributionLedger&, const WinRateTable&) {
            Snap s;
            s.cands = candidates_repr(cands);
            for (const auto& c : cands) s.measured.push_back(c.measured);
            into.push_back(std::move(s));
        };
    };

    std::vector<Snap> full_snaps, ablation_snaps;
    run_refinement_loop(1, 3, table, 1, TableStat::Best, cfg, params, 424242, true,
                        capture(full_snaps));
    run_refinement_loop(1, 3, table, 1, TableStat::Best, cfg, params, 424242, false,
                        capture(ablation_snaps));

    REQUIRE(full_snaps.size() == 2);
    REQUIRE(ablation_snaps.size() == 2);
    CHECK(full_snaps[0].cands == ablation_snaps[0].cands);
    CHECK(full_snaps[0].measured == ablation_snaps[0].measured);

    // without refinement the table never changes
    const RefinementResult frozen = run_refinement_loop(1, 3, table, 1, TableStat::Best,
                                                        cfg, params, 424242, false);
    for (const PoolMember& m : frozen.table.cell(1, 3).pool)
        CHECK(m.winrate == m.prior_winrate);
}

TEST_CASE("the loop surfaces a missing pool as a coverage error") {
    SimParams params;
    WinRateTable table(2, 8);
    table.cell(2, 3).best_winrate = 0.9; // dominant cell, but nothing to sample
    set_pool(table, 1, 1, {member_of({0}, 0.2)});

    RefinementConfig cfg;
    cfg.candidates_per_partition = 2;
    cfg.eval_episodes_large = 2;
    cfg.refinement_iterations = 1;

    CHECK_THROWS_AS(run_refinement_loop(2, 3, table, 2, TableStat::Best, cfg, params, 7),
                    table_coverage_error);
}

} // TEST_SUITE
