#pragma once

#include <stdexcept>

#include "swarmdef/geom.hpp"

namespace swarmdef {

enum class Team { Blue, Red, Target };

struct SimParams {
    double dt = 0.05;
    int t_max = 600;           // steps
    double omega_max = kPi;    // rad/s
    double v_min_blue = 0.05;
    double v_max_blue = 0.15;
    double v_min_red = 0.04;
    double v_max_red = 0.12;
    double agent_radius = 0.01;
    double target_radius = 0.02;
    double red_spawn_radius_lo = 0.75;
    double red_spawn_radius_hi = 0.95;
    double red_amplitude_max = 0.2;   // sinusoid amplitude drawn from [-max, max]
    double red_frequency_min = 1.0;   // integer cycles drawn from [min, max]
    double red_frequency_max = 4.0;
    double warehouse_ring_radius = 0.5;
    int n_warehouses = 8;

    double v_min(Team t) const { return t == Team::Blue ? v_min_blue : v_min_red; }
    double v_max(Team t) const { return t == Team::Blue ? v_max_blue : v_max_red; }

    Vec2 warehouse_position(int w) const {
        const double a = kTau * static_cast<double>(w) / static_cast<double>(n_warehouses);
        return unit_from_angle(a) * warehouse_ring_radius;
    }

    void validate() const {
        if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
        if (t_max <= 0) throw std::invalid_argument("t_max must be positive");
        if (omega_max <= 0.0) throw std::invalid_argument("omega_max must be positive");
        if (v_min_blue < 0.0 || v_max_blue < v_min_blue)
            throw std::invalid_argument("blue speed range invalid");
        if (v_min_red < 0.0 || v_max_red < v_min_red)
            throw std::invalid_argument("red speed range invalid");
        if (agent_radius <= 0.0 || target_radius <= 0.0)
            throw std::invalid_argument("radii must be positive");
        if (red_spawn_radius_lo <= 0.0 || red_spawn_radius_hi < red_spawn_radius_lo)
            throw std::invalid_argument("red spawn annulus invalid");
        if (n_warehouses <= 0) throw std::invalid_argument("n_warehouses must be positive");
        if (warehouse_ring_radius <= 0.0)
            throw std::invalid_argument("warehouse_ring_radius must be positive");
    }
};

} // namespace swarmdef
