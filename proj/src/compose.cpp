#include "swarmdef/compose.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace swarmdef {

void RefinementConfig::validate() const {
    if (prior_strength_k <= 0.0) throw std::invalid_argument("prior strength K must be > 0");
    if (candidates_per_partition < 1)
        throw std::invalid_argument("candidates_per_partition must be >= 1");
    if (eval_episodes_large < 1)
        throw std::invalid_argument("eval_episodes_large must be >= 1");
    if (refinement_iterations < 1)
        throw std::invalid_argument("refinement_iterations must be >= 1");
}

double refined_winrate(double k, long long n, double w_old, double w3) {
    const double nn = static_cast<double>(n);
    return k / (nn + k) * w_old + nn / (nn + k) * w3;
}

std::vector<AssembledCandidate> sample_candidates(const DPSolution& solution,
                                                  const WinRateTable& table,
                                                  const RefinementConfig& cfg,
                                                  std::uint64_t seed) {
    // Fail on any empty pool before drawing, so the error does not depend on
    // how far the sampler got.
    for (size_t i = 0; i < solution.partition.size(); ++i) {
        if (solution.allocation[i] == 0) continue;
        const CellStats& cell = table.cell(solution.partition[i], solution.allocation[i]);
        if (cell.pool.empty())
            throw table_coverage_error("empty pool at cell (" +
                                       std::to_string(solution.partition[i]) + "," +
                                       std::to_string(solution.allocation[i]) + ")");
    }

    Rng rng(seed);
    std::vector<AssembledCandidate> out;
    out.reserve(static_cast<size_t>(cfg.candidates_per_partition));
    constexpr double floor_w = 1e-3;

    for (int c = 0; c < cfg.candidates_per_partition; ++c) {
        AssembledCandidate cand;
        cand.dp_value = solution.value;
        for (size_t i = 0; i < solution.partition.size(); ++i) {
            if (solution.allocation[i] == 0) continue;
            const CellStats& cell =
                table.cell(solution.partition[i], solution.allocation[i]);
            double total = 0.0;
            for (const PoolMember& m : cell.pool) total += std::max(m.winrate, floor_w);
            const double u = rng.next_double() * total;
            double acc = 0.0;
            size_t pick = cell.pool.size() - 1;
            for (size_t j = 0; j < cell.pool.size(); ++j) {
                acc += std::max(cell.pool[j].winrate, floor_w);
                if (u < acc) {
                    pick = j;
                    break;
                }
            }
            const PoolMember& m = cell.pool[pick];
            cand.chrom.insert(cand.chrom.end(), m.chrom.begin(), m.chrom.end());
            cand.provenance.push_back(
                {solution.partition[i], solution.allocation[i], m.key});
        }
        out.push_back(std::move(cand));
    }
    return out;
}

void evaluate_candidates(std::vector<AssembledCandidate>& cands, int n_red,
                         const SimParams& params, int episodes, std::uint64_t seed_block) {
    for (AssembledCandidate& cand : cands) {
        const FitnessRecord rec =
            evaluate_fitness(cand.chrom, n_red, params, episodes, seed_block);
        cand.measured = rec.fitness;
        cand.wins = rec.wins;
        cand.episodes = rec.episodes;
    }
}

void attribute(const std::vector<AssembledCandidate>& cands, AttributionLedger& ledger) {
    for (const AssembledCandidate& cand : cands) {
        for (const ProvenanceEntry& pe : cand.provenance) {
            LedgerRow& row = ledger.rows[pe.key];
            row.r = pe.r;
            row.b = pe.b;
            row.episodes += cand.episodes;
            row.wins += cand.wins;
        }
    }
}

void refine_winrates(WinRateTable& table, const AttributionLedger& ledger, double k) {
    if (k <= 0.0) throw std::invalid_argument("prior strength K must be > 0");
    for (int r = 1; r <= table.r_max(); ++r) {
        for (int b = 1; b <= table.b_max(); ++b) {
            CellStats& cell = table.cell(r, b);
            bool touched = false;
            for (PoolMember& m : cell.pool) {
                const auto it = ledger.rows.find(m.key);
                if (it == ledger.rows.end() || it->second.episodes <= 0) continue;
                // The prior stays frozen; the ledger is cumulative, so each
                // pass recomputes the blend from scratch instead of folding
                // the same evidence in twice.
                m.winrate = refined_winrate(k, it->second.episodes, m.prior_winrate,
                                            it->second.w3());
                m.visits = m.prior_visits + it->second.episodes;
                touched = true;
            }
            if (touched) sort_pool(cell);
        }
    }
}

RefinementResult run_refinement_loop(int n_red, int n_blue, WinRateTable table, int k_max,
                                     TableStat stat, const RefinementConfig& cfg,
                                     const SimParams& params, std::uint64_t seed,
                                     bool apply_refinement, const IterationSink& sink) {
    cfg.validate();
    RefinementResult result;
    bool have_best = false;

    for (int it = 0; it < cfg.refinement_iterations; ++it) {
        DPCache cache; // table contents may have changed; memo is per iteration
        const DPSolution solution = best_defense(n_red, n_blue, table, k_max, stat, &cache);
        std::vector<AssembledCandidate> cands = sample_candidates(
            solution, table, cfg,
            derive_seed(seed, seedtag::sample, static_cast<std::uint64_t>(it)));
        evaluate_candidates(cands, n_red, params, cfg.eval_episodes_large,
                            derive_seed(seed, seedtag::eval_block,
                                        static_cast<std::uint64_t>(it)));
        attribute(cands, result.ledger);
        if (apply_refinement) refine_winrates(table, result.ledger, cfg.prior_strength_k);

        for (const AssembledCandidate& cand : cands) {
            if (!have_best || cand.measured > result.best.measured) {
                result.best = cand;
                have_best = true;
            }
        }
        std::vector<double> measured;
        measured.reserve(cands.size());
        for (const auto& cand : cands) measured.push_back(cand.measured);
        std::sort(measured.begin(), measured.end(), std::greater<>());
        const size_t top = std::max<size_t>(1, measured.size() / 10);
        double tsum = 0.0;
        for (size_t i = 0; i < top; ++i) tsum += measured[i];
        result.curve.push_back({it, result.best.measured, tsum / static_cast<double>(top)});

        if (sink) sink(it, solution, cands, result.ledger, table);
    }
    result.table = std::move(table);
    return result;
}

} // namespace swarmdef
