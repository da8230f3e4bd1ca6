#include "swarmdef/evolve.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace swarmdef {

void GAConfig::validate() const {
    if (pop_size < 1) throw std::invalid_argument("pop_size must be >= 1");
    if (generations < 0) throw std::invalid_argument("generations must be >= 0");
    if (elitism_rate < 0.0 || elitism_rate > 1.0)
        throw std::invalid_argument("elitism_rate must be in [0,1]");
    if (crossover_rate < 0.0 || crossover_rate > 1.0)
        throw std::invalid_argument("crossover_rate must be in [0,1]");
    if (mutation_rate < 0.0 || mutation_rate > 1.0)
        throw std::invalid_argument("mutation_rate must be in [0,1]");
    if (tournament_size < 1) throw std::invalid_argument("tournament_size must be >= 1");
    if (eval_episodes < 1) throw std::invalid_argument("eval_episodes must be >= 1");
}

FitnessRecord evaluate_fitness(const Chromosome& chrom, int n_red, const SimParams& params,
                               int episodes, std::uint64_t seed_block) {
    FitnessRecord rec;
    rec.chrom = chrom;
    rec.episodes = episodes;
    for (int e = 0; e < episodes; ++e) {
        if (run_episode(chrom, n_red, params, seed_block + static_cast<std::uint64_t>(e))
                .blue_win)
            ++rec.wins;
    }
    rec.fitness = static_cast<double>(rec.wins) / static_cast<double>(episodes);
    return rec;
}

std::vector<FitnessRecord> evaluate_population(std::span<const Chromosome> pop, int n_red,
                                               const SimParams& params, int episodes,
                                               std::uint64_t seed_block) {
    std::vector<FitnessRecord> out;
    out.reserve(pop.size());
    std::unordered_map<std::string, size_t> seen; // exact repr -> first record
    for (const Chromosome& c : pop) {
        std::string repr = exact_chromosome_repr(c);
        if (const auto it = seen.find(repr); it != seen.end()) {
            out.push_back(out[it->second]);
            continue;
        }
        out.push_back(evaluate_fitness(c, n_red, params, episodes, seed_block));
        seen.emplace(std::move(repr), out.size() - 1);
    }
    return out;
}

namespace {

// Indices ordered by fitness descending, position ascending on ties.
std::vector<int> rank_indices(std::span<const FitnessRecord> pop) {
    std::vector<int> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pop[a].fitness != pop[b].fitness) return pop[a].fitness > pop[b].fitness;
        return a < b;
    });
    return order;
}

} // namespace

int tournament_pick(std::span<const FitnessRecord> pop, int rounds, Rng& rng) {
    int best = -1;
    for (int k = 0; k < rounds; ++k) {
        const int idx = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(pop.size())));
        if (best < 0 || pop[idx].fitness > pop[best].fitness ||
            (pop[idx].fitness == pop[best].fitness && idx < best))
            best = idx;
    }
    return best;
}

GenerationPlan evolve_generation(std::span<const FitnessRecord> pop, const GAConfig& cfg,
                                 int n_warehouses, Rng& rng) {
    const int n = static_cast<int>(pop.size());
    const int elite_count = static_cast<int>(cfg.elitism_rate * n);
    const auto order = rank_indices(pop);

    GenerationPlan plan;
    plan.elites.reserve(elite_count);
    for (int i = 0; i < elite_count; ++i) plan.elites.push_back(pop[order[i]]);

    const int n_offspring = n - elite_count;
    plan.offspring.reserve(n_offspring);
    while (static_cast<int>(plan.offspring.size()) < n_offspring) {
        const int p1 = tournament_pick(pop, cfg.tournament_size, rng);
        const int p2 = tournament_pick(pop, cfg.tournament_size, rng);
        Chromosome c1 = pop[p1].chrom;
        Chromosome c2 = pop[p2].chrom;
        if (c1.size() >= 2 && rng.next_double() < cfg.crossover_rate) {
            const int point =
                1 + static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(c1.size() - 1)));
            std::tie(c1, c2) = crossover_single_point(c1, c2, point);
        }
        c1 = mutate(std::move(c1), cfg.mutation_rate, n_warehouses, rng);
        c2 = mutate(std::move(c2), cfg.mutation_rate, n_warehouses, rng);
        plan.offspring.push_back(std::move(c1));
        if (static_cast<int>(plan.offspring.size()) < n_offspring)
            plan.offspring.push_back(std::move(c2));
    }
    return plan;
}

GenerationStats population_stats(std::span<const FitnessRecord> pop, int generation) {
    GenerationStats st;
    st.generation = generation;
    if (pop.empty()) return st;
    const auto order = rank_indices(pop);
    st.best = pop[order[0]].fitness;
    double sum = 0.0;
    for (const auto& r : pop) sum += r.fitness;
    st.mean = sum / static_cast<double>(pop.size());
    const int top = std::max<int>(1, static_cast<int>(pop.size() / 10));
    double tsum = 0.0;
    for (int i = 0; i < top; ++i) tsum += pop[order[i]].fitness;
    st.top_decile = tsum / static_cast<double>(top);
    return st;
}

GAResult run_ga(int n_red, int n_blue, const GAConfig& cfg, const SimParams& params,
                std::uint64_t seed) {
    cfg.validate();
    if (n_red < 1 || n_blue < 1)
        throw std::invalid_argument("run_ga needs n_red >= 1 and n_blue >= 1");

    std::vector<Chromosome> pop(static_cast<size_t>(cfg.pop_size));
    for (size_t i = 0; i < pop.size(); ++i) {
        Rng rng(derive_seed(seed, seedtag::init_pop, i));
        pop[i] = random_chromosome(n_blue, params.n_warehouses, rng);
    }

    GAResult out;
    auto records = evaluate_population(pop, n_red, params, cfg.eval_episodes,
                                       derive_seed(seed, seedtag::eval_block, 0));
    out.history.push_back(population_stats(records, 0));

    for (int g = 1; g <= cfg.generations; ++g) {
        Rng sel(derive_seed(seed, seedtag::selection, static_cast<std::uint64_t>(g)));
        GenerationPlan plan = evolve_generation(records, cfg, params.n_warehouses, sel);
        auto kids =
            evaluate_population(plan.offspring, n_red, params, cfg.eval_episodes,
                                derive_seed(seed, seedtag::eval_block, static_cast<std::uint64_t>(g)));
        records = std::move(plan.elites);
        records.insert(records.end(), std::make_move_iterator(kids.begin()),
                       std::make_move_iterator(kids.end()));
        out.history.push_back(population_stats(records, g));
    }
    out.population = std::move(records);
    return out;
}

CellStats cell_stats_from_population(std::span<const FitnessRecord> pop) {
    CellStats cell;
    if (pop.empty()) return cell;
    const auto order = rank_indices(pop);
    const int top = std::max<int>(1, static_cast<int>(pop.size() / 10));
    cell.best_winrate = pop[order[0]].fitness;
    double tsum = 0.0;
    for (int i = 0; i < top; ++i) tsum += pop[order[i]].fitness;
    cell.top_decile_mean = tsum / static_cast<double>(top);

    std::unordered_map<std::string, char> seen;
    for (int i = 0; i < top; ++i) {
        const FitnessRecord& rec = pop[order[i]];
        SubChromosomeKey key = sub_chromosome_key(rec.chrom);
        if (!seen.emplace(key, 1).second) continue;
        PoolMember m;
        m.chrom = rec.chrom;
        m.key = std::move(key);
        m.winrate = rec.fitness;
        m.prior_winrate = rec.fitness;
        m.prior_visits = rec.episodes;
        m.visits = rec.episodes;
        cell.pool.push_back(std::move(m));
    }
    return cell;
}

WinRateTable run_stage1(int r_max, int b_max, const GAConfig& cfg, const SimParams& params,
                        std::uint64_t master_seed, const CellCallback& on_cell) {
    WinRateTable table(r_max, b_max);
    for (int r = 1; r <= r_max; ++r) {
        for (int b = 1; b <= b_max; ++b) {
            const std::uint64_t cell_seed =
                derive_seed(master_seed, seedtag::stage1_cell, static_cast<std::uint64_t>(r),
                            static_cast<std::uint64_t>(b));
            GAResult ga = run_ga(r, b, cfg, params, cell_seed);
            CellStats stats = cell_stats_from_population(ga.population);
            if (on_cell) on_cell(r, b, ga, stats);
            table.cell(r, b) = std::move(stats);
        }
    }
    return table;
}

} // namespace swarmdef
