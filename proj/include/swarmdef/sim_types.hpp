#pragma once

#include <vector>

#include "swarmdef/geom.hpp"
#include "swarmdef/sim_params.hpp"

namespace swarmdef {

// Normalized control input; both components are clamped to [-1, 1] on
// construction so downstream code never sees an out-of-range command.
struct Action {
    double turn = 0.0;
    double accel = 0.0;

    Action() = default;
    Action(double turn_in, double accel_in)
        : turn(clamp(turn_in, -1.0, 1.0)), accel(clamp(accel_in, -1.0, 1.0)) {}
};

struct AgentState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0; // heading, kept in [0, tau)
    double v = 0.0;
    bool alive = true;

    Vec2 pos() const { return {x, y}; }
    Vec2 velocity() const { return unit_from_angle(theta) * v; }
};

// Frozen at spawn; defines the red's reference path toward the target.
struct RedTrajectory {
    double spawn_radius = 0.0;
    double spawn_angle = 0.0;
    double amplitude = 0.0; // lateral sinusoid amplitude
    double frequency = 0.0; // whole cycles over the full approach
    double speed = 0.0;     // assigned cruise speed
};

enum class TerminationCause { AllRedDead, AllBlueDead, TargetHit, Timeout };

struct WorldState {
    int t = 0; // step counter; wall time is t * dt
    std::vector<AgentState> blues;
    std::vector<AgentState> reds;
    AgentState target;
    std::vector<RedTrajectory> red_trajectories;
};

struct EpisodeOutcome {
    bool blue_win = false;
    TerminationCause cause = TerminationCause::Timeout;
    int termination_step = 0;
    WorldState final_state;
};

struct TraceRow {
    int step = 0;
    Team team = Team::Blue;
    int index = 0;
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    double v = 0.0;
    bool alive = true;
};

} // namespace swarmdef
