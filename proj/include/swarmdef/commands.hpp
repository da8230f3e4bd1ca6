#pragma once

#include <string>

#include "swarmdef/config.hpp"

namespace swarmdef {

// Each command validates the config (master seed required), writes its
// artifacts under cfg.out_dir, prints a short summary, and returns an exit
// code. Output bytes are a pure function of (config, seed).

int cmd_stage1(const RunConfig& cfg);

// Solves one (n_red, n_blue) allocation against the table at `table_path`
// (empty = <out_dir>/table.txt). With `tradeoff`, also sweeps budgets
// 0..n_blue into a curve file.
int cmd_dp(const RunConfig& cfg, int n_red, int n_blue, const std::string& table_path,
           bool tradeoff);

// Full ablation per scenario: random + flat-GA baselines (one GA run: the
// random arm is its generation 0), the Stage-3-only arm, and the full
// refinement arm, all on shared per-scenario episode seed blocks.
int cmd_pipeline(const RunConfig& cfg);

// Baselines only, same seed derivations as cmd_pipeline.
int cmd_baseline(const RunConfig& cfg);

int cmd_report_cooccurrence(const RunConfig& cfg, const std::string& input_path,
                            double fraction);

int cmd_trace(const RunConfig& cfg, const std::string& chromosome_path, int n_red);

} // namespace swarmdef
