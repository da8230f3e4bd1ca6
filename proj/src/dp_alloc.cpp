#include "swarmdef/dp_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmdef {

bool solution_better(const DPSolution& a, const DPSolution& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return false;
    if (a.log_value != b.log_value) return a.log_value > b.log_value;
    if (a.partition.size() != b.partition.size())
        return a.partition.size() < b.partition.size();
    if (a.partition != b.partition) return a.partition > b.partition;
    return a.allocation > b.allocation;
}

std::optional<DPSolution> DPCache::lookup(int r, int b, int m) const {
    std::lock_guard<std::mutex> lock(mu_);
    const auto it = memo_.find({r, b, m});
    if (it == memo_.end()) return std::nullopt;
    return it->second;
}

void DPCache::store(int r, int b, int m, const DPSolution& s) {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::tuple<int, int, int>{r, b, m}, s);
}

void DPCache::clear() {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.clear();
}

size_t DPCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.size();
}

namespace {

void partitions_rec(int n, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}

DPSolution certain_empty_solution() {
    DPSolution s;
    s.feasible = true;
    s.value = 1.0;
    s.log_value = 0.0;
    return s;
}

// Subproblem: defend r reds with exactly b blues using subgroup sizes <= m.
// The first (largest) part is chosen here; the rest comes memoized. Keeping
// the whole suffix in the node makes the tie-break chain exact: both value
// and log are composed right-to-left, so a given (partition, allocation)
// yields bit-identical doubles in the DP and the oracle.
DPSolution solve(int r, int b, int m, const WinRateTable& table, TableStat stat,
                 DPCache& cache) {
    if (r == 0) {
        DPSolution s;
        s.feasible = (b == 0);
        if (s.feasible) {
            s.value = 1.0;
            s.log_value = 0.0;
        }
        return s;
    }
    if (auto hit = cache.lookup(r, b, m)) return *hit;

    DPSolution best;
    const int part_hi = std::min(r, m);
    const int alloc_hi = std::min(b, table.b_max());
    for (int part = part_hi; part >= 1; --part) {
        for (int alloc = alloc_hi; alloc >= 0; --alloc) {
            const DPSolution sub = solve(r - part, b - alloc, part, table, stat, cache);
            if (!sub.feasible) continue;
            const double p = table.P(part, alloc, stat);
            DPSolution cand;
            cand.feasible = true;
            cand.value = p * sub.value;
            cand.log_value = std::log(p) + sub.log_value;
            cand.partition.reserve(sub.partition.size() + 1);
            cand.partition.push_back(part);
            cand.partition.insert(cand.partition.end(), sub.partition.begin(),
                                  sub.partition.end());
            cand.allocation.reserve(sub.allocation.size() + 1);
            cand.allocation.push_back(alloc);
            cand.allocation.insert(cand.allocation.end(), sub.allocation.begin(),
                                   sub.allocation.end());
            if (solution_better(cand, best)) best = std::move(cand);
        }
    }
    cache.store(r, b, m, best);
    return best;
}

void check_args(int R, int B, const WinRateTable& table, int k_max) {
    if (R < 0 || B < 0) throw std::invalid_argument("R and B must be non-negative");
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    if (R > 0 && k_max > table.r_max())
        throw table_coverage_error("k_max " + std::to_string(k_max) +
                                   " exceeds table r_max " + std::to_string(table.r_max()));
}

} // namespace

std::vector<std::vector<int>> enumerate_partitions(int n, int k_max) {
    if (n < 0 || k_max < 1) throw std::invalid_argument("bad partition arguments");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    partitions_rec(n, k_max, cur, out);
    return out;
}

DPSolution best_defense(int R, int B, const WinRateTable& table, int k_max,
                        TableStat stat, DPCache* cache) {
    check_args(R, B, table, k_max);
    if (R == 0) return certain_empty_solution();
    DPCache local;
    DPSolution s = solve(R, B, k_max, table, stat, cache ? *cache : local);
    if (!s.feasible)
        throw table_coverage_error("no allocation of " + std::to_string(B) +
                                   " blues over partitions of " + std::to_string(R) +
                                   " reds fits table width " + std::to_string(table.b_max()));
    return s;
}

DPSolution brute_force_best_defense(int R, int B, const WinRateTable& table, int k_max,
                                    TableStat stat) {
    if (R > 8 || B > 12)
        throw std::invalid_argument("brute force oracle limited to R <= 8, B <= 12");
    check_args(R, B, table, k_max);
    if (R == 0) return certain_empty_solution();

    DPSolution best;
    std::vector<int> alloc;
    const auto parts_list = enumerate_partitions(R, k_max);
    for (const auto& parts : parts_list) {
        alloc.assign(parts.size(), 0);
        // Enumerate every way to split exactly B blues over the parts.
        const int k = static_cast<int>(parts.size());
        auto rec = [&](auto&& self, int i, int left) -> void {
            if (i == k) {
                if (left != 0) return;
                DPSolution cand;
                cand.feasible = true;
                cand.value = 1.0;
                cand.log_value = 0.0;
                for (int j = k - 1; j >= 0; --j) {
                    const double p = table.P(parts[j], alloc[j], stat);
                    cand.value = p * cand.value;
                    cand.log_value = std::log(p) + cand.log_value;
                }
                cand.partition = parts;
                cand.allocation = alloc;
                if (solution_better(cand, best)) best = std::move(cand);
                return;
            }
            const int hi = std::min(left, table.b_max());
            for (int a = hi; a >= 0; --a) {
                alloc[i] = a;
                self(self, i + 1, left - a);
            }
        };
        rec(rec, 0, B);
    }
    if (!best.feasible)
        throw table_coverage_error("no allocation of " + std::to_string(B) +
                                   " blues over partitions of " + std::to_string(R) +
                                   " reds fits table width " + std::to_string(table.b_max()));
    return best;
}

std::vector<std::pair<int, DPSolution>> resource_tradeoff_curve(
    int R, int b_lo, int b_hi, const WinRateTable& table, int k_max, TableStat stat,
    DPCache* cache) {
    DPCache local;
    DPCache& use = cache ? *cache : local;
    std::vector<std::pair<int, DPSolution>> out;
    for (int b = b_lo; b <= b_hi; ++b) {
        try {
            out.emplace_back(b, best_defense(R, b, table, k_max, stat, &use));
        } catch (const table_coverage_error&) {
            // Budget not allocatable at this width: leave it off the curve.
        }
    }
    return out;
}

} // namespace swarmdef
