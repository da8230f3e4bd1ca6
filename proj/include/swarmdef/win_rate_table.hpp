#pragma once

#include <string>
#include <vector>

#include "swarmdef/errors.hpp"
#include "swarmdef/genome.hpp"

namespace swarmdef {

// Which per-cell statistic downstream consumers read.
enum class TableStat { Best, TopDecile };

const char* table_stat_name(TableStat s);
TableStat parse_table_stat(const std::string& name); // throws parse_error

struct PoolMember {
    Chromosome chrom;
    SubChromosomeKey key;
    double winrate = 0.0;       // current (possibly refined) estimate
    double prior_winrate = 0.0; // frozen small-scale estimate
    long long prior_visits = 0; // episodes behind the prior
    long long visits = 0;       // prior episodes + accumulated large-scale episodes
};

struct CellStats {
    double best_winrate = 0.0;
    double top_decile_mean = 0.0;
    std::vector<PoolMember> pool; // kept sorted by winrate desc, key asc
};

// Orders by winrate descending, key ascending, and refreshes the cell
// summary stats (best = head of pool, top_decile_mean = pool mean).
void sort_pool(CellStats& cell);

// Win rates indexed by (reds r, blues b), both 1-based up to the stored
// bounds, with the boundary conventions P(0, b) = 1 and P(r, 0) = 0.
class WinRateTable {
public:
    WinRateTable() = default;
    WinRateTable(int r_max, int b_max)
        : r_max_(r_max), b_max_(b_max),
          cells_(static_cast<size_t>(r_max) * static_cast<size_t>(b_max)) {}

    int r_max() const { return r_max_; }
    int b_max() const { return b_max_; }
    bool covers(int r, int b) const {
        return r >= 1 && r <= r_max_ && b >= 1 && b <= b_max_;
    }

    CellStats& cell(int r, int b) { return cells_[index(r, b)]; }
    const CellStats& cell(int r, int b) const { return cells_[index(r, b)]; }

    double P(int r, int b, TableStat stat = TableStat::Best) const {
        if (r == 0) return 1.0;
        if (b == 0 && r >= 1) return 0.0;
        if (!covers(r, b))
            throw table_coverage_error("cell (" + std::to_string(r) + "," + std::to_string(b) +
                                       ") outside table " + std::to_string(r_max_) + "x" +
                                       std::to_string(b_max_));
        const CellStats& c = cell(r, b);
        return stat == TableStat::Best ? c.best_winrate : c.top_decile_mean;
    }

private:
    size_t index(int r, int b) const {
        if (!covers(r, b))
            throw table_coverage_error("cell (" + std::to_string(r) + "," + std::to_string(b) +
                                       ") outside table " + std::to_string(r_max_) + "x" +
                                       std::to_string(b_max_));
        return static_cast<size_t>(r - 1) * static_cast<size_t>(b_max_) +
               static_cast<size_t>(b - 1);
    }

    int r_max_ = 0;
    int b_max_ = 0;
    std::vector<CellStats> cells_;
};

} // namespace swarmdef
