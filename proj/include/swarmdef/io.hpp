#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swarmdef/compose.hpp"
#include "swarmdef/report.hpp"

namespace swarmdef {

// Shortest exact decimal rendering of a double (%.17g); reparsing gives the
// same bits, so written tables reload without drift.
std::string format_double(double v);

std::string read_text_file(const std::string& path);   // throws parse_error
void write_text_file(const std::string& path, const std::string& content);

// Win-rate table with full pools; read_table_file inverts it exactly.
std::string format_table_file(const WinRateTable& table);
void write_table_file(const std::string& path, const WinRateTable& table);
WinRateTable read_table_file(const std::string& path);

// r_max rows by b_max columns of the chosen statistic.
void write_heatmap_csv(const std::string& path, const WinRateTable& table, TableStat stat);

void write_population_file(const std::string& path, int generation, int n_red, int n_blue,
                           std::span<const FitnessRecord> pop);

void write_candidates_file(const std::string& path, int iteration, int n_red, int n_blue,
                           std::span<const AssembledCandidate> cands);

// Accepts either a population file or a candidates file; returns
// (score, chromosome) rows in file order.
std::vector<ScoredChromosome> read_scored_chromosomes(const std::string& path);

void write_ledger_file(const std::string& path, const AttributionLedger& ledger);

void write_dp_solution_file(const std::string& path, int n_red, int n_blue, int k_max,
                            TableStat stat, const DPSolution& s);

void write_tradeoff_csv(const std::string& path, int n_red,
                        std::span<const std::pair<int, DPSolution>> curve);

void write_refinement_curve_csv(const std::string& path,
                                std::span<const RefinementCurvePoint> curve);

void write_ga_curve_csv(const std::string& path, std::span<const GenerationStats> history);

std::string format_trace_csv(std::span<const TraceRow> rows);
void write_trace_csv(const std::string& path, std::span<const TraceRow> rows);

// FNV-1a over the formatted trace text: equal traces, equal hashes.
std::uint64_t trace_hash(std::span<const TraceRow> rows);

void write_cooccurrence_csv(const std::string& path, std::span<const CoEdge> edges);

void write_heuristics_manifest_csv(const std::string& path);

struct ComparisonRow {
    int n_red = 0;
    int n_blue = 0;
    std::string arm;
    double best = 0.0;
    double top_decile = 0.0;
};
void write_comparison_csv(const std::string& path, std::span<const ComparisonRow> rows);

// First line that is neither blank nor a '#' comment, parsed as a
// serialized chromosome.
Chromosome read_chromosome_file(const std::string& path);

} // namespace swarmdef
