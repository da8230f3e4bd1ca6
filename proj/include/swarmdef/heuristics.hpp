#pragma once

#include <span>
#include <vector>

#include "swarmdef/sim_types.hpp"

namespace swarmdef {

enum class HeuristicId : int {
    Straight = 0,
    Chase = 1,
    Circle = 2,
    PredictiveInterception = 3,
    RotationPatrol = 4,
    ZoneDefense = 5,
    DefensivePerimeter = 6,
    DynamicPositioning = 7,
    ThreatLevelAssessment = 8,
    AdaptivePatrolRadius = 9,
    ThreatWeightedPositioning = 10,
};

inline constexpr int kNumHeuristics = 11;

struct HeuristicInfo {
    int code;
    const char* name;
    const char* param_use; // how the gene parameter P is interpreted
};

std::span<const HeuristicInfo> heuristic_manifest();
const char* heuristic_name(HeuristicId h);

// Everything a policy may observe when choosing an action. Spans alias the
// pre-step world snapshot, so all agents act on the same frame.
struct HeuristicContext {
    const AgentState& self;
    int self_index;
    std::span<const AgentState> blues;
    std::span<const AgentState> reds;
    std::span<const HeuristicId> team_heuristics; // heuristic of each blue; empty = self-only team
    Vec2 target_pos;
    int t;
    const SimParams& params;
    // Per-step assign_attackers result over the chase family, filled by the
    // engine so each chaser does not recompute it. Empty = compute on demand.
    std::span<const int> assigned_red = {};
};

// Proportional steering toward a point: turn is the clipped fraction of the
// per-step turn budget, accel closes the speed gap in one step if allowed.
// A point exactly equal to the agent position commands zero turn.
Action steer_to(const AgentState& self, Vec2 point, double desired_speed,
                const SimParams& params);

// Greedy nearest-unclaimed matching. `chasers` holds blue indices in
// ascending order; each takes the nearest unclaimed living red (distance
// ties by lower red index). When reds run out the claim set resets, so
// surplus chasers double up. Returns a per-blue map, -1 for unassigned.
std::vector<int> assign_attackers(std::span<const int> chasers,
                                  std::span<const AgentState> blues,
                                  std::span<const AgentState> reds);

bool is_chase_family(HeuristicId h);

// Builds the chaser list (living blues whose heuristic is in the chase
// family, ascending) and runs assign_attackers over it.
std::vector<int> chase_family_assignment(std::span<const AgentState> blues,
                                         std::span<const AgentState> reds,
                                         std::span<const HeuristicId> team_heuristics);

// Threat scoring used by ThreatLevelAssessment and ThreatWeightedPositioning:
// inverse distance to the target plus positive closing speed.
double threat_score(const AgentState& red, Vec2 target_pos);
int top_threat_index(std::span<const AgentState> reds, Vec2 target_pos);

// Gene parameter mappings, exposed for direct testing.
inline double circle_radius(double p) { return 0.1 + 0.5 * p; }
inline double perimeter_radius(double p) { return 0.25 + 0.25 * p; }
inline double adaptive_radius(double d_nearest, double p) {
    return clamp(d_nearest * (0.25 + 0.75 * p), 0.1, 0.6);
}
inline double lemniscate_scale(double p) { return 0.15 + 0.3 * p; }

// Point on a lemniscate of Bernoulli of scale `a` centered on the origin.
inline Vec2 lemniscate_point(double a, double phi) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    const double denom = 1.0 + s * s;
    return {a * c / denom, a * s * c / denom};
}

// Pure policy dispatch: maps (heuristic, observation, gene parameter) to an
// action. Never mutates the world.
Action heuristic_action(HeuristicId h, const HeuristicContext& ctx, double p);

} // namespace swarmdef
