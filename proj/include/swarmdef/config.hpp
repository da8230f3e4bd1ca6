#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarmdef/compose.hpp"

namespace swarmdef {

struct Scenario {
    int n_red = 0;
    double ratio = 1.0; // blues per red
};

// Everything a command needs, assembled from defaults, an optional JSON
// config file, and flag overrides (in that order).
struct RunConfig {
    SimParams sim;
    GAConfig ga;
    RefinementConfig refine;
    std::vector<Scenario> scenarios; // defaults: {10,20,30} x {1.3,1.5}
    std::uint64_t seed = 0;
    bool seed_set = false; // commands refuse to run without an explicit seed
    std::string out_dir = "out";
    TableStat stat = TableStat::Best;
    int stage1_r_max = 5;
    int stage1_b_max = 8;
    int k_max = 5;
};

RunConfig default_config();

// Round half to even.
int blues_for(int n_red, double ratio);

// Parses a JSON config file over the defaults. Unknown keys are rejected so
// a typo cannot silently fall back to a default.
RunConfig load_config(const std::string& path);

} // namespace swarmdef
