#include "swarmdef/config.hpp"

#include <cfenv>
#include <cmath>

#include <json.hpp>

#include "swarmdef/errors.hpp"
#include "swarmdef/io.hpp"

namespace swarmdef {

using nlohmann::json;

RunConfig default_config() {
    RunConfig cfg;
    for (const int r : {10, 20, 30})
        for (const double ratio : {1.3, 1.5}) cfg.scenarios.push_back({r, ratio});
    return cfg;
}

int blues_for(int n_red, double ratio) {
    if (ratio <= 0.0) throw std::invalid_argument("ratio must be > 0");
    // nearbyint under the default FE_TONEAREST mode rounds half to even
    return static_cast<int>(std::nearbyint(ratio * static_cast<double>(n_red)));
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw parse_error("unknown config key '" + key + "' in " + where);
    }
}

template <typename T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void load_sim(const json& j, SimParams& p) {
    reject_unknown(j,
                   {"dt", "t_max", "omega_max", "v_min_blue", "v_max_blue", "v_min_red",
                    "v_max_red", "agent_radius", "target_radius", "red_spawn_radius_lo",
                    "red_spawn_radius_hi", "red_amplitude_max", "red_frequency_min",
                    "red_frequency_max", "warehouse_ring_radius", "n_warehouses"},
                   "sim");
    take(j, "dt", p.dt);
    take(j, "t_max", p.t_max);
    take(j, "omega_max", p.omega_max);
    take(j, "v_min_blue", p.v_min_blue);
    take(j, "v_max_blue", p.v_max_blue);
    take(j, "v_min_red", p.v_min_red);
    take(j, "v_max_red", p.v_max_red);
    take(j, "agent_radius", p.agent_radius);
    take(j, "target_radius", p.target_radius);
    take(j, "red_spawn_radius_lo", p.red_spawn_radius_lo);
    take(j, "red_spawn_radius_hi", p.red_spawn_radius_hi);
    take(j, "red_amplitude_max", p.red_amplitude_max);
    take(j, "red_frequency_min", p.red_frequency_min);
    take(j, "red_frequency_max", p.red_frequency_max);
    take(j, "warehouse_ring_radius", p.warehouse_ring_radius);
    take(j, "n_warehouses", p.n_warehouses);
}

void load_ga(const json& j, GAConfig& g) {
    reject_unknown(j,
                   {"pop_size", "generations", "elitism_rate", "crossover_rate",
                    "mutation_rate", "tournament_size", "eval_episodes"},
                   "ga");
    take(j, "pop_size", g.pop_size);
    take(j, "generations", g.generations);
    take(j, "elitism_rate", g.elitism_rate);
    take(j, "crossover_rate", g.crossover_rate);
    take(j, "mutation_rate", g.mutation_rate);
    take(j, "tournament_size", g.tournament_size);
    take(j, "eval_episodes", g.eval_episodes);
}

void load_refine(const json& j, RefinementConfig& r) {
    reject_unknown(j,
                   {"prior_strength_k", "candidates_per_partition", "eval_episodes_large",
                    "refinement_iterations"},
                   "refine");
    take(j, "prior_strength_k", r.prior_strength_k);
    take(j, "candidates_per_partition", r.candidates_per_partition);
    take(j, "eval_episodes_large", r.eval_episodes_large);
    take(j, "refinement_iterations", r.refinement_iterations);
}

} // namespace

RunConfig load_config(const std::string& path) {
    RunConfig cfg = default_config();
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw parse_error("config '" + path + "': " + e.what());
    }
    try {
        reject_unknown(j,
                       {"sim", "ga", "refine", "scenarios", "seed", "out_dir", "table_stat",
                        "stage1_r_max", "stage1_b_max", "k_max"},
                       "config root");
        if (j.contains("sim")) load_sim(j.at("sim"), cfg.sim);
        if (j.contains("ga")) load_ga(j.at("ga"), cfg.ga);
        if (j.contains("refine")) load_refine(j.at("refine"), cfg.refine);
        if (j.contains("scenarios")) {
            cfg.scenarios.clear();
            for (const auto& s : j.at("scenarios")) {
                reject_unknown(s, {"n_red", "ratio"}, "scenario");
                Scenario sc;
                sc.n_red = s.at("n_red").get<int>();
                sc.ratio = s.at("ratio").get<double>();
                if (sc.n_red < 1 || sc.ratio <= 0.0)
                    throw parse_error("scenario needs n_red >= 1 and ratio > 0");
                cfg.scenarios.push_back(sc);
            }
        }
        if (j.contains("seed")) {
            cfg.seed = j.at("seed").get<std::uint64_t>();
            cfg.seed_set = true;
        }
        take(j, "out_dir", cfg.out_dir);
        if (j.contains("table_stat"))
            cfg.stat = parse_table_stat(j.at("table_stat").get<std::string>());
        take(j, "stage1_r_max", cfg.stage1_r_max);
        take(j, "stage1_b_max", cfg.stage1_b_max);
        take(j, "k_max", cfg.k_max);
    } catch (const json::exception& e) {
        throw parse_error("config '" + path + "': " + e.what());
    }
    cfg.sim.validate();
    return cfg;
}

} // namespace swarmdef
