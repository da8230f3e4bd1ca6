#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "swarmdef/dp_alloc.hpp"
#include "swarmdef/evolve.hpp"

namespace swarmdef {

struct ProvenanceEntry {
    int r = 0;
    int b = 0;
    SubChromosomeKey key;
};

struct AssembledCandidate {
    Chromosome chrom;
    std::vector<ProvenanceEntry> provenance;
    double dp_value = 0.0; // predicted product of subgroup win rates
    double measured = 0.0; // observed large-scale win rate
    int wins = 0;
    int episodes = 0;
};

struct LedgerRow {
    int r = 0;
    int b = 0;
    long long episodes = 0;
    long long wins = 0;
    double w3() const {
        return episodes > 0 ? static_cast<double>(wins) / static_cast<double>(episodes) : 0.0;
    }
};

// Cumulative large-scale evidence per sub-chromosome. An ordered map keeps
// snapshots byte-stable.
struct AttributionLedger {
    std::map<SubChromosomeKey, LedgerRow> rows;
};

struct RefinementConfig {
    double prior_strength_k = 200.0;
    int candidates_per_partition = 64; // candidates sampled per DP solution
    int eval_episodes_large = 128;     // episodes per candidate
    int refinement_iterations = 4;

    void validate() const;
};

// The weighted update w_new = K/(n+K) * w_old + n/(n+K) * w3.
double refined_winrate(double k, long long n, double w_old, double w3);

// Draws cfg.candidates_per_partition full-team chromosomes: per subgroup of
// the solution, one pool member with probability proportional to its current
// winrate (floored at 1e-3), concatenated in partition order. Subgroups
// allocated zero blues contribute no genes. Throws table_coverage_error on
// an empty pool, naming the cell.
std::vector<AssembledCandidate> sample_candidates(const DPSolution& solution,
                                                  const WinRateTable& table,
                                                  const RefinementConfig& cfg,
                                                  std::uint64_t seed);

// Measures each candidate over `episodes` episodes seeded seed_block+0.. so
// every candidate faces the same red waves.
void evaluate_candidates(std::vector<AssembledCandidate>& cands, int n_red,
                         const SimParams& params, int episodes, std::uint64_t seed_block);

// Adds each candidate's (episodes, wins) to the ledger row of every one of
// its provenance entries, in candidate-index order.
void attribute(const std::vector<AssembledCandidate>& cands, AttributionLedger& ledger);

// Applies the weighted update to every pool member with ledger evidence:
// the member's frozen small-scale prior is blended with the cumulative
// large-scale record, then cell stats and pool order are recomputed. Members
// without evidence keep their current winrate.
void refine_winrates(WinRateTable& table, const AttributionLedger& ledger, double k);

struct RefinementCurvePoint {
    int iteration = 0;
    double best = 0.0;       // best measured ever (running maximum)
    double top_decile = 0.0; // mean of the top tenth of this iteration's candidates
};

struct RefinementResult {
    AssembledCandidate best; // best candidate ever observed
    std::vector<RefinementCurvePoint> curve;
    WinRateTable table; // refined
    AttributionLedger ledger;
};

using IterationSink =
    std::function<void(int iteration, const DPSolution& solution,
                       const std::vector<AssembledCandidate>& cands,
                       const AttributionLedger& ledger, const WinRateTable& table)>;

// Stages 3+4: loop best_defense -> sample -> evaluate -> attribute ->
// refine. With apply_refinement = false the refine step is skipped, which is
// the Stage-3-only ablation arm; its iteration 0 is seed-identical to the
// full run's. Episode blocks derive from (seed, iteration), matching the
// GA's per-generation blocks so competing arms share them.
RefinementResult run_refinement_loop(int n_red, int n_blue, WinRateTable table, int k_max,
                                     TableStat stat, const RefinementConfig& cfg,
                                     const SimParams& params, std::uint64_t seed,
                                     bool apply_refinement = true,
                                     const IterationSink& sink = {});

} // namespace swarmdef
