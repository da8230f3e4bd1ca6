#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "swarmdef/win_rate_table.hpp"

namespace swarmdef {

struct DPSolution {
    bool feasible = false;
    double value = 0.0;           // product of subgroup win rates
    double log_value = 0.0;       // sum of logs; all comparisons happen here
    std::vector<int> partition;   // subgroup red counts, non-increasing
    std::vector<int> allocation;  // blues per subgroup, aligned with partition
};

// Strict "a beats b": feasibility, then log value, then fewer parts, then
// lexicographically larger partition, then lexicographically larger
// allocation. Shared by the DP and the brute-force oracle so ties resolve
// identically.
bool solution_better(const DPSolution& a, const DPSolution& b);

// Memo for best_defense subproblems, keyed by (reds, blues, max part size).
// Entries are only valid for one fixed (table contents, stat, k_max), so take
// a fresh cache whenever the table is refined. Safe to share across threads.
class DPCache {
public:
    std::optional<DPSolution> lookup(int r, int b, int m) const;
    void store(int r, int b, int m, const DPSolution& s);
    void clear();
    size_t size() const;

private:
    struct KeyHash {
        size_t operator()(const std::tuple<int, int, int>& k) const {
            const auto [r, b, m] = k;
            return (static_cast<size_t>(r) * 1315423911u) ^
                   (static_cast<size_t>(b) * 2654435761u) ^ static_cast<size_t>(m);
        }
    };
    std::unordered_map<std::tuple<int, int, int>, DPSolution, KeyHash> memo_;
    mutable std::mutex mu_;
};

// All partitions of n into parts of size at most k_max, each partition
// non-increasing, listed in lexicographically decreasing order.
std::vector<std::vector<int>> enumerate_partitions(int n, int k_max);

// Maximizes the product of P(r_i, b_i) over unordered partitions of R into
// parts <= k_max and allocations of exactly B blues (each subgroup takes at
// most b_max blues, possibly zero). R = 0 is a defined corner: certain
// success with an empty plan. Throws table_coverage_error when k_max exceeds
// the table height or no allocation can sum to B.
DPSolution best_defense(int R, int B, const WinRateTable& table, int k_max,
                        TableStat stat = TableStat::Best, DPCache* cache = nullptr);

// Exhaustive reference implementation, same contract and tie-breaking.
// Guarded to R <= 8, B <= 12.
DPSolution brute_force_best_defense(int R, int B, const WinRateTable& table, int k_max,
                                    TableStat stat = TableStat::Best);

// best_defense for every B in [b_lo, b_hi]; infeasible budgets are skipped.
std::vector<std::pair<int, DPSolution>> resource_tradeoff_curve(
    int R, int b_lo, int b_hi, const WinRateTable& table, int k_max,
    TableStat stat = TableStat::Best, DPCache* cache = nullptr);

} // namespace swarmdef
