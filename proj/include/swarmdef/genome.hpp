#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swarmdef/heuristics.hpp"
#include "swarmdef/rng.hpp"

namespace swarmdef {

// One blue agent: behavior heuristic, launch warehouse, tuning parameter.
struct Gene {
    HeuristicId h = HeuristicId::Straight;
    int warehouse = 0;
    double param = 0.0; // in [0, 1]
};

using Chromosome = std::vector<Gene>;

// Canonical identity of a (sub)chromosome: its serialized text. Equal
// chromosomes produce equal keys by construction.
using SubChromosomeKey = std::string;

// Throws invalid_gene_error on a bad heuristic code, negative or (when
// n_warehouses >= 0) out-of-range warehouse, or parameter outside [0, 1].
void validate_gene(const Gene& g, int n_warehouses = -1);
void validate_chromosome(const Chromosome& c, int n_warehouses = -1);

Chromosome random_chromosome(int n_genes, int n_warehouses, Rng& rng);

// Per-gene mutation: with probability `rate` one field of the gene is
// resampled (heuristic or warehouse uniformly; param by a clipped Gaussian
// nudge of sigma 0.1).
Chromosome mutate(Chromosome c, double rate, int n_warehouses, Rng& rng);

// Single-point crossover. Parents must have equal length N >= 2 and the cut
// must satisfy 1 <= point <= N-1; otherwise invalid_cross_error.
std::pair<Chromosome, Chromosome> crossover_single_point(const Chromosome& a,
                                                         const Chromosome& b,
                                                         int point);

Chromosome concat(std::span<const Chromosome> subs);

// "h,warehouse,param;..." with param printed to six decimals.
std::string serialize_chromosome(const Chromosome& c);

// Inverse of serialize_chromosome; validates gene domains. Throws
// invalid_gene_error on malformed text or domain violations.
Chromosome parse_chromosome(const std::string& text, int n_warehouses = -1);

inline SubChromosomeKey sub_chromosome_key(const Chromosome& c) {
    return serialize_chromosome(c);
}

// Bit-exact rendering of the param field, for caches that must distinguish
// chromosomes the six-decimal key would merge.
std::string exact_chromosome_repr(const Chromosome& c);

} // namespace swarmdef
