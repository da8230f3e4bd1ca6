#pragma once

#include <stdexcept>
#include <string>

namespace swarmdef {

// A gene fell outside its domain (bad heuristic code, warehouse id, or
// parameter range), either from a file or a programmatic constructor.
struct invalid_gene_error : std::runtime_error {
    explicit invalid_gene_error(const std::string& what) : std::runtime_error(what) {}
};

// Crossover preconditions violated (unequal parent lengths, bad cut point).
struct invalid_cross_error : std::runtime_error {
    explicit invalid_cross_error(const std::string& what) : std::runtime_error(what) {}
};

// A win-rate lookup or composition step needed a cell the table does not
// cover, or a covered cell has an empty candidate pool.
struct table_coverage_error : std::runtime_error {
    explicit table_coverage_error(const std::string& what) : std::runtime_error(what) {}
};

// A structured artifact on disk did not parse.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace swarmdef
