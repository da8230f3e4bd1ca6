#include "swarmdef/report.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace swarmdef {

std::vector<CoEdge> cooccurrence_edges(const std::vector<ScoredChromosome>& pop,
                                       double fraction) {
    if (pop.empty()) throw std::invalid_argument("co-occurrence input is empty");
    if (fraction <= 0.0 || fraction > 1.0)
        throw std::invalid_argument("fraction must be in (0,1]");

    std::vector<int> order(pop.size());
    for (size_t i = 0; i < pop.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return pop[a].fitness > pop[b].fitness; });
    const size_t take = std::max<size_t>(
        1, static_cast<size_t>(fraction * static_cast<double>(pop.size())));

    std::map<std::pair<int, int>, long long> counts;
    for (size_t i = 0; i < take; ++i) {
        const Chromosome& c = pop[order[i]].chrom;
        for (size_t x = 0; x < c.size(); ++x) {
            for (size_t y = x + 1; y < c.size(); ++y) {
                int a = static_cast<int>(c[x].h);
                int b = static_cast<int>(c[y].h);
                if (a > b) std::swap(a, b);
                ++counts[{a, b}];
            }
        }
    }

    std::vector<CoEdge> edges;
    edges.reserve(counts.size());
    for (const auto& [key, n] : counts) edges.push_back({key.first, key.second, n});
    std::sort(edges.begin(), edges.end(), [](const CoEdge& x, const CoEdge& y) {
        if (x.count != y.count) return x.count > y.count;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return edges;
}

} // namespace swarmdef
