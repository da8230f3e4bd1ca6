#include "swarmdef/win_rate_table.hpp"

#include <algorithm>

namespace swarmdef {

const char* table_stat_name(TableStat s) {
    return s == TableStat::Best ? "best" : "top_decile";
}

TableStat parse_table_stat(const std::string& name) {
    if (name == "best") return TableStat::Best;
    if (name == "top_decile") return TableStat::TopDecile;
    throw parse_error("unknown table stat: '" + name + "'");
}

void sort_pool(CellStats& cell) {
    std::sort(cell.pool.begin(), cell.pool.end(), [](const PoolMember& a, const PoolMember& b) {
        if (a.winrate != b.winrate) return a.winrate > b.winrate;
        return a.key < b.key;
    });
    if (cell.pool.empty()) return;
    cell.best_winrate = cell.pool.front().winrate;
    double sum = 0.0;
    for (const PoolMember& m : cell.pool) sum += m.winrate;
    cell.top_decile_mean = sum / static_cast<double>(cell.pool.size());
}

} // namespace swarmdef
