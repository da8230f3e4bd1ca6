#include "swarmdef/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "swarmdef/io.hpp"

namespace swarmdef {

namespace {

void require_seed(const RunConfig& cfg) {
    if (!cfg.seed_set)
        throw std::invalid_argument("a master seed is required (--seed or config \"seed\")");
}

std::string scenario_dir(const RunConfig& cfg, int n_red, int n_blue) {
    return cfg.out_dir + "/scenario_r" + std::to_string(n_red) + "_b" + std::to_string(n_blue);
}

std::uint64_t scenario_seed(const RunConfig& cfg, const Scenario& sc) {
    return derive_seed(cfg.seed, seedtag::scenario, static_cast<std::uint64_t>(sc.n_red),
                       static_cast<std::uint64_t>(std::llround(sc.ratio * 1e6)));
}

// Runs stage 1 and writes the table, both heatmaps, the heuristic manifest,
// and per-cell population + curve files.
WinRateTable build_stage1(const RunConfig& cfg) {
    std::printf("stage1: grid r=1..%d x b=1..%d, pop %d, %d generations\n", cfg.stage1_r_max,
                cfg.stage1_b_max, cfg.ga.pop_size, cfg.ga.generations);
    const WinRateTable table = run_stage1(
        cfg.stage1_r_max, cfg.stage1_b_max, cfg.ga, cfg.sim, cfg.seed,
        [&](int r, int b, const GAResult& ga, const CellStats& cell) {
            const std::string tag = "_r" + std::to_string(r) + "_b" + std::to_string(b);
            write_population_file(cfg.out_dir + "/populations/cell" + tag + ".txt",
                                  cfg.ga.generations, r, b, ga.population);
            write_ga_curve_csv(cfg.out_dir + "/curves/stage1_cell" + tag + ".csv", ga.history);
            std::printf("  cell (%d,%d): best %.4f, top decile %.4f, pool %zu\n", r, b,
                        cell.best_winrate, cell.top_decile_mean, cell.pool.size());
        });
    write_table_file(cfg.out_dir + "/table.txt", table);
    write_heatmap_csv(cfg.out_dir + "/heatmap_best.csv", table, TableStat::Best);
    write_heatmap_csv(cfg.out_dir + "/heatmap_top_decile.csv", table, TableStat::TopDecile);
    write_heuristics_manifest_csv(cfg.out_dir + "/heuristics_manifest.csv");
    return table;
}

WinRateTable load_or_build_table(const RunConfig& cfg) {
    const std::string path = cfg.out_dir + "/table.txt";
    if (std::filesystem::exists(path)) {
        std::printf("using existing table %s\n", path.c_str());
        return read_table_file(path);
    }
    return build_stage1(cfg);
}

void print_solution(const DPSolution& s) {
    std::printf("value %s\npartition ", format_double(s.value).c_str());
    for (size_t i = 0; i < s.partition.size(); ++i)
        std::printf("%s%d", i ? "," : "", s.partition[i]);
    std::printf("\nallocation ");
    for (size_t i = 0; i < s.allocation.size(); ++i)
        std::printf("%s%d", i ? "," : "", s.allocation[i]);
    std::printf("\n");
}

// Writes candidate/ledger/table snapshots for one refinement iteration.
IterationSink artifact_sink(const RunConfig& cfg, const std::string& dir,
                            const std::string& arm, int n_red, int n_blue) {
    return [=, &cfg](int it, const DPSolution& sol,
                     const std::vector<AssembledCandidate>& cands,
                     const AttributionLedger& ledger, const WinRateTable& table) {
        const std::string tag = "_iter" + std::to_string(it);
        write_dp_solution_file(dir + "/" + arm + "_dp" + tag + ".txt", n_red, n_blue,
                               cfg.k_max, cfg.stat, sol);
        write_candidates_file(dir + "/" + arm + "_candidates" + tag + ".txt", it, n_red,
                              n_blue, cands);
        write_ledger_file(dir + "/" + arm + "_ledger" + tag + ".txt", ledger);
        write_table_file(dir + "/" + arm + "_table" + tag + ".txt", table);
    };
}

} // namespace

int cmd_stage1(const RunConfig& cfg) {
    require_seed(cfg);
    build_stage1(cfg);
    std::printf("stage1 artifacts written to %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_dp(const RunConfig& cfg, int n_red, int n_blue, const std::string& table_path,
           bool tradeoff) {
    const std::string path = table_path.empty() ? cfg.out_dir + "/table.txt" : table_path;
    const WinRateTable table = read_table_file(path);
    const DPSolution s = best_defense(n_red, n_blue, table, cfg.k_max, cfg.stat);
    print_solution(s);
    const std::string tag = "_r" + std::to_string(n_red) + "_b" + std::to_string(n_blue);
    write_dp_solution_file(cfg.out_dir + "/dp" + tag + ".txt", n_red, n_blue, cfg.k_max,
                           cfg.stat, s);
    if (tradeoff) {
        const auto curve =
            resource_tradeoff_curve(n_red, 0, n_blue, table, cfg.k_max, cfg.stat);
        write_tradeoff_csv(cfg.out_dir + "/tradeoff_r" + std::to_string(n_red) + ".csv",
                           n_red, curve);
    }
    return 0;
}

int cmd_pipeline(const RunConfig& cfg) {
    require_seed(cfg);
    const WinRateTable table = load_or_build_table(cfg);
    std::vector<ComparisonRow> rows;

    for (const Scenario& sc : cfg.scenarios) {
        const int n_blue = blues_for(sc.n_red, sc.ratio);
        const std::uint64_t seed = scenario_seed(cfg, sc);
        const std::string dir = scenario_dir(cfg, sc.n_red, n_blue);
        std::printf("scenario n_red=%d ratio=%.3f n_blue=%d\n", sc.n_red, sc.ratio, n_blue);

        const GAResult ga = run_ga(sc.n_red, n_blue, cfg.ga, cfg.sim, seed);
        write_ga_curve_csv(dir + "/flat_ga_curve.csv", ga.history);
        write_population_file(dir + "/flat_ga_population.txt", cfg.ga.generations, sc.n_red,
                              n_blue, ga.population);

        RefinementConfig stage3_cfg = cfg.refine;
        stage3_cfg.refinement_iterations = 1;
        const RefinementResult res3 = run_refinement_loop(
            sc.n_red, n_blue, table, cfg.k_max, cfg.stat, stage3_cfg, cfg.sim, seed,
            /*apply_refinement=*/false, artifact_sink(cfg, dir, "stage3", sc.n_red, n_blue));
        write_refinement_curve_csv(dir + "/stage3_curve.csv", res3.curve);

        const RefinementResult res4 = run_refinement_loop(
            sc.n_red, n_blue, table, cfg.k_max, cfg.stat, cfg.refine, cfg.sim, seed,
            /*apply_refinement=*/true, artifact_sink(cfg, dir, "stage4", sc.n_red, n_blue));
        write_refinement_curve_csv(dir + "/stage4_curve.csv", res4.curve);
        write_text_file(dir + "/best_chromosome.txt",
                        "# best stage4 candidate, measured " +
                            format_double(res4.best.measured) + "\n" +
                            serialize_chromosome(res4.best.chrom) + "\n");

        rows.push_back({sc.n_red, n_blue, "random", ga.history.front().best,
                        ga.history.front().top_decile});
        rows.push_back({sc.n_red, n_blue, "flat_ga", ga.history.back().best,
                        ga.history.back().top_decile});
        rows.push_back({sc.n_red, n_blue, "stage3", res3.curve.back().best,
                        res3.curve.back().top_decile});
        rows.push_back({sc.n_red, n_blue, "stage4", res4.curve.back().best,
                        res4.curve.back().top_decile});
        for (size_t i = rows.size() - 4; i < rows.size(); ++i)
            std::printf("  %-8s best %.4f top_decile %.4f\n", rows[i].arm.c_str(),
                        rows[i].best, rows[i].top_decile);
    }
    write_comparison_csv(cfg.out_dir + "/comparison.csv", rows);
    std::printf("comparison written to %s/comparison.csv\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_baseline(const RunConfig& cfg) {
    require_seed(cfg);
    std::vector<ComparisonRow> rows;
    for (const Scenario& sc : cfg.scenarios) {
        const int n_blue = blues_for(sc.n_red, sc.ratio);
        const std::uint64_t seed = scenario_seed(cfg, sc);
        const std::string dir = scenario_dir(cfg, sc.n_red, n_blue);
        std::printf("scenario n_red=%d ratio=%.3f n_blue=%d\n", sc.n_red, sc.ratio, n_blue);

        const GAResult ga = run_ga(sc.n_red, n_blue, cfg.ga, cfg.sim, seed);
        write_ga_curve_csv(dir + "/flat_ga_curve.csv", ga.history);
        write_population_file(dir + "/flat_ga_population.txt", cfg.ga.generations, sc.n_red,
                              n_blue, ga.population);
        rows.push_back({sc.n_red, n_blue, "random", ga.history.front().best,
                        ga.history.front().top_decile});
        rows.push_back({sc.n_red, n_blue, "flat_ga", ga.history.back().best,
                        ga.history.back().top_decile});
        for (size_t i = rows.size() - 2; i < rows.size(); ++i)
            std::printf("  %-8s best %.4f top_decile %.4f\n", rows[i].arm.c_str(),
                        rows[i].best, rows[i].top_decile);
    }
    write_comparison_csv(cfg.out_dir + "/baseline_comparison.csv", rows);
    return 0;
}

int cmd_report_cooccurrence(const RunConfig& cfg, const std::string& input_path,
                            double fraction) {
    const auto pop = read_scored_chromosomes(input_path);
    const auto edges = cooccurrence_edges(pop, fraction);
    write_cooccurrence_csv(cfg.out_dir + "/cooccurrence.csv", edges);
    std::printf("%zu rows read, %zu edges\n", pop.size(), edges.size());
    const size_t show = edges.size() < 10 ? edges.size() : 10;
    for (size_t i = 0; i < show; ++i)
        std::printf("  (%d,%d): %lld\n", edges[i].a, edges[i].b, edges[i].count);
    return 0;
}

int cmd_trace(const RunConfig& cfg, const std::string& chromosome_path, int n_red) {
    require_seed(cfg);
    const Chromosome chrom = read_chromosome_file(chromosome_path);
    TraceSink trace;
    const EpisodeOutcome out = run_episode(chrom, n_red, cfg.sim, cfg.seed, &trace);
    write_trace_csv(cfg.out_dir + "/trace.csv", trace);
    const char* cause = out.cause == TerminationCause::AllRedDead    ? "all_red_dead"
                        : out.cause == TerminationCause::AllBlueDead ? "all_blue_dead"
                        : out.cause == TerminationCause::TargetHit   ? "target_hit"
                                                                     : "timeout";
    std::printf("blue_win %d cause %s step %d trace_hash %016llx\n", out.blue_win ? 1 : 0,
                cause, out.termination_step,
                static_cast<unsigned long long>(trace_hash(trace)));
    return 0;
}

} // namespace swarmdef
