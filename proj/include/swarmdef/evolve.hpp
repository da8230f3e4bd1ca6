#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "swarmdef/sim_engine.hpp"
#include "swarmdef/win_rate_table.hpp"

namespace swarmdef {

struct GAConfig {
    int pop_size = 1024;
    int generations = 128; // evolution steps after the initial population
    double elitism_rate = 0.2;
    double crossover_rate = 0.7;
    double mutation_rate = 0.1; // per gene
    int tournament_size = 2;
    int eval_episodes = 128;

    void validate() const;
};

struct FitnessRecord {
    Chromosome chrom;
    double fitness = 0.0; // wins / episodes
    int wins = 0;
    int episodes = 0;
};

struct GenerationStats {
    int generation = 0;
    double best = 0.0;
    double mean = 0.0;
    double top_decile = 0.0; // mean fitness of the top tenth (at least one)
};

struct GAResult {
    std::vector<FitnessRecord> population; // final generation, elites first
    std::vector<GenerationStats> history;  // generations 0..generations
};

// Mean win rate over `episodes` episodes seeded seed_block+0 .. +episodes-1.
// Two chromosomes evaluated against the same block face identical red waves.
FitnessRecord evaluate_fitness(const Chromosome& chrom, int n_red, const SimParams& params,
                               int episodes, std::uint64_t seed_block);

// evaluate_fitness for each entry; duplicates within the population are
// computed once (same chromosome + same block always reproduces the same
// record).
std::vector<FitnessRecord> evaluate_population(std::span<const Chromosome> pop, int n_red,
                                               const SimParams& params, int episodes,
                                               std::uint64_t seed_block);

struct GenerationPlan {
    std::vector<FitnessRecord> elites;  // carried over with cached fitness
    std::vector<Chromosome> offspring;  // to be evaluated on the next block
};

// Draws `rounds` candidates uniformly (with replacement) and returns the
// index with the highest fitness; ties go to the lower index.
int tournament_pick(std::span<const FitnessRecord> pop, int rounds, Rng& rng);

// One selection step: keep floor(elitism_rate * pop) elites (fitness desc,
// index asc), then fill with tournament-selected, crossed, mutated offspring.
// Fitness ties in tournaments go to the lower population index.
GenerationPlan evolve_generation(std::span<const FitnessRecord> pop, const GAConfig& cfg,
                                 int n_warehouses, Rng& rng);

GenerationStats population_stats(std::span<const FitnessRecord> pop, int generation);

// Full GA for one cell: n_red attackers vs teams of n_blue genes. All
// randomness is derived from `seed`; per-generation evaluation blocks give
// common random numbers within a generation. Since elites keep their cached
// fitness and blocks are per-generation, the best fitness never decreases.
GAResult run_ga(int n_red, int n_blue, const GAConfig& cfg, const SimParams& params,
                std::uint64_t seed);

// Cell summary for the win-rate table: best fitness, mean of the top tenth
// of records, and the top tenth deduplicated by serialized key as the
// candidate pool (each member's prior frozen at its measured fitness).
CellStats cell_stats_from_population(std::span<const FitnessRecord> pop);

using CellCallback =
    std::function<void(int r, int b, const GAResult& ga, const CellStats& cell)>;

// Runs the GA over every cell r in 1..r_max, b in 1..b_max with
// independently derived seeds and assembles the win-rate table.
WinRateTable run_stage1(int r_max, int b_max, const GAConfig& cfg, const SimParams& params,
                        std::uint64_t master_seed, const CellCallback& on_cell = {});

} // namespace swarmdef
