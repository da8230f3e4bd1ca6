#pragma once

#include <vector>

#include "swarmdef/genome.hpp"

namespace swarmdef {

struct ScoredChromosome {
    double fitness = 0.0;
    Chromosome chrom;
};

struct CoEdge {
    int a = 0; // a <= b
    int b = 0;
    long long count = 0;
};

// Takes the top `fraction` of the population by fitness (at least one row;
// ties keep input order) and counts unordered heuristic-id pairs over each
// chromosome's genes. Edges come back sorted by count descending, then
// (a, b) ascending. Throws std::invalid_argument on empty input.
std::vector<CoEdge> cooccurrence_edges(const std::vector<ScoredChromosome>& pop,
                                       double fraction);

} // namespace swarmdef
