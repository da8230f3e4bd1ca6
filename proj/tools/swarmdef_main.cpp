#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "swarmdef/commands.hpp"
#include "swarmdef/errors.hpp"

using namespace swarmdef;

int main(int argc, char** argv) {
    CLI::App app{"swarm defense pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string table_stat;
    std::uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed, "master seed")->each([&](const std::string&) {
        seed_given = true;
    });
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--table-stat", table_stat, "table statistic: best or top_decile")
        ->check(CLI::IsMember({"best", "top_decile"}));

    // global flags may appear before or after the subcommand
    auto* stage1 = app.add_subcommand("stage1", "evolve the small-scale win-rate table");
    stage1->fallthrough();

    int dp_r = 0, dp_b = 0;
    std::string dp_table;
    bool dp_tradeoff = false;
    auto* dp = app.add_subcommand("dp", "best partition and allocation from the table");
    dp->fallthrough();
    dp->add_option("--n-red", dp_r, "attacker count")->required();
    dp->add_option("--n-blue", dp_b, "defender budget")->required();
    dp->add_option("--table", dp_table, "table file (default <out>/table.txt)");
    dp->add_flag("--tradeoff", dp_tradeoff, "also sweep budgets 0..n-blue");

    auto* pipeline = app.add_subcommand("pipeline", "baselines + stage3 + stage4 per scenario");
    pipeline->fallthrough();
    auto* baseline = app.add_subcommand("baseline", "random and flat-GA baselines only");
    baseline->fallthrough();

    std::string co_input;
    double co_fraction = 0.1;
    auto* co = app.add_subcommand("report-cooccurrence", "heuristic co-occurrence edge list");
    co->fallthrough();
    co->add_option("--input", co_input, "population or candidates file")->required();
    co->add_option("--fraction", co_fraction, "top fraction by fitness (default 0.1)");

    std::string trace_chrom;
    int trace_reds = 0;
    auto* trace = app.add_subcommand("trace", "dump one seeded episode as CSV");
    trace->fallthrough();
    trace->add_option("--chromosome", trace_chrom, "chromosome file")->required();
    trace->add_option("--n-red", trace_reds, "attacker count")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
        if (seed_given) {
            cfg.seed = seed;
            cfg.seed_set = true;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!table_stat.empty()) cfg.stat = parse_table_stat(table_stat);

        if (stage1->parsed()) return cmd_stage1(cfg);
        if (dp->parsed()) return cmd_dp(cfg, dp_r, dp_b, dp_table, dp_tradeoff);
        if (pipeline->parsed()) return cmd_pipeline(cfg);
        if (baseline->parsed()) return cmd_baseline(cfg);
        if (co->parsed()) return cmd_report_cooccurrence(cfg, co_input, co_fraction);
        if (trace->parsed()) return cmd_trace(cfg, trace_chrom, trace_reds);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
