#include "swarmdef/heuristics.hpp"

#include <array>
#include <cmath>

namespace swarmdef {

namespace {

constexpr std::array<HeuristicInfo, kNumHeuristics> kManifest = {{
    {0, "straight", "unused"},
    {1, "chase", "unused"},
    {2, "circle", "orbit radius 0.1 + 0.5*P"},
    {3, "predictive_interception", "unused"},
    {4, "rotation_patrol", "lemniscate scale 0.15 + 0.3*P and phase 2*pi*P"},
    {5, "zone_defense", "unused"},
    {6, "defensive_perimeter", "station angle 2*pi*P at radius 0.25 + 0.25*P"},
    {7, "dynamic_positioning", "unused"},
    {8, "threat_level_assessment", "unused"},
    {9, "adaptive_patrol_radius", "radius gain 0.25 + 0.75*P"},
    {10, "threat_weighted_positioning", "station/threat blend weight P"},
}};

double dist_sq(const AgentState& a, Vec2 p) {
    const double dx = a.x - p.x;
    const double dy = a.y - p.y;
    return dx * dx + dy * dy;
}

int nearest_alive_red(const AgentState& self, std::span<const AgentState> reds) {
    int best = -1;
    double best_d = 0.0;
    for (int j = 0; j < static_cast<int>(reds.size()); ++j) {
        if (!reds[j].alive) continue;
        const double d = dist_sq(reds[j], self.pos());
        if (best < 0 || d < best_d) {
            best = j;
            best_d = d;
        }
    }
    return best;
}

// Steer around a circle: aim at the point 0.1 rad ahead of the agent's
// current angular position on it.
Action orbit(const AgentState& self, Vec2 center, double radius, double speed,
             const SimParams& params) {
    const double phi = std::atan2(self.y - center.y, self.x - center.x);
    const Vec2 wp = center + unit_from_angle(phi + 0.1) * radius;
    return steer_to(self, wp, speed, params);
}

struct ZoneRank {
    int rank = 0;  // position of self among living users of the heuristic
    int count = 1; // number of living users
};

ZoneRank zone_rank(const HeuristicContext& ctx, HeuristicId h) {
    if (ctx.team_heuristics.empty()) return {0, 1};
    ZoneRank zr{0, 0};
    for (int i = 0; i < static_cast<int>(ctx.team_heuristics.size()); ++i) {
        if (ctx.team_heuristics[i] != h) continue;
        if (!(i == ctx.self_index || ctx.blues[i].alive)) continue;
        if (i == ctx.self_index) zr.rank = zr.count;
        ++zr.count;
    }
    if (zr.count == 0) return {0, 1};
    return zr;
}

Vec2 zone_station(Vec2 target, ZoneRank zr, double radius) {
    const double mid = kTau * (static_cast<double>(zr.rank) + 0.5) /
                       static_cast<double>(zr.count);
    return target + unit_from_angle(mid) * radius;
}

int assigned_for(const HeuristicContext& ctx) {
    if (!ctx.assigned_red.empty()) return ctx.assigned_red[ctx.self_index];
    if (ctx.team_heuristics.empty()) {
        const int self[] = {ctx.self_index};
        return assign_attackers(self, ctx.blues, ctx.reds)[ctx.self_index];
    }
    return chase_family_assignment(ctx.blues, ctx.reds,
                                   ctx.team_heuristics)[ctx.self_index];
}

} // namespace

std::span<const HeuristicInfo> heuristic_manifest() { return kManifest; }

const char* heuristic_name(HeuristicId h) {
    return kManifest[static_cast<int>(h)].name;
}

Action steer_to(const AgentState& self, Vec2 point, double desired_speed,
                const SimParams& params) {
    double turn = 0.0;
    if (point.x != self.x || point.y != self.y) {
        const double err = angle_diff(bearing(self.pos(), point), self.theta);
        turn = clamp(err / (params.omega_max * params.dt), -1.0, 1.0);
    }
    const double accel = clamp((desired_speed - self.v) / params.dt, -1.0, 1.0);
    return {turn, accel};
}

std::vector<int> assign_attackers(std::span<const int> chasers,
                                  std::span<const AgentState> blues,
                                  std::span<const AgentState> reds) {
    std::vector<int> out(blues.size(), -1);
    int n_alive = 0;
    for (const auto& r : reds)
        if (r.alive) ++n_alive;
    if (n_alive == 0) return out;

    std::vector<char> claimed(reds.size(), 0);
    int unclaimed = n_alive;
    for (int b : chasers) {
        if (unclaimed == 0) { // every red claimed: reset and double up
            std::fill(claimed.begin(), claimed.end(), 0);
            unclaimed = n_alive;
        }
        int pick = -1;
        double pick_d = 0.0;
        for (int j = 0; j < static_cast<int>(reds.size()); ++j) {
            if (!reds[j].alive || claimed[j]) continue;
            const double d = dist_sq(reds[j], blues[b].pos());
            if (pick < 0 || d < pick_d) {
                pick = j;
                pick_d = d;
            }
        }
        out[b] = pick;
        claimed[pick] = 1;
        --unclaimed;
    }
    return out;
}

bool is_chase_family(HeuristicId h) {
    return h == HeuristicId::Chase || h == HeuristicId::PredictiveInterception;
}

std::vector<int> chase_family_assignment(std::span<const AgentState> blues,
                                         std::span<const AgentState> reds,
                                         std::span<const HeuristicId> team_heuristics) {
    std::vector<int> chasers;
    for (int i = 0; i < static_cast<int>(team_heuristics.size()); ++i)
        if (blues[i].alive && is_chase_family(team_heuristics[i])) chasers.push_back(i);
    return assign_attackers(chasers, blues, reds);
}

double threat_score(const AgentState& red, Vec2 target_pos) {
    constexpr double eps = 1e-6;
    const Vec2 to_target = target_pos - red.pos();
    const double d = to_target.norm();
    double closing = 0.0;
    if (d > 0.0) closing = red.velocity().dot(to_target * (1.0 / d));
    return 1.0 / (eps + d) + (closing > 0.0 ? closing : 0.0);
}

int top_threat_index(std::span<const AgentState> reds, Vec2 target_pos) {
    int best = -1;
    double best_s = 0.0;
    for (int j = 0; j < static_cast<int>(reds.size()); ++j) {
        if (!reds[j].alive) continue;
        const double s = threat_score(reds[j], target_pos);
        if (best < 0 || s > best_s) {
            best = j;
            best_s = s;
        }
    }
    return best;
}

Action heuristic_action(HeuristicId h, const HeuristicContext& ctx, double p) {
    const SimParams& params = ctx.params;
    const double v_max = params.v_max_blue;
    const AgentState& self = ctx.self;

    switch (h) {
    case HeuristicId::Straight:
        return {0.0, 1.0};

    case HeuristicId::Chase: {
        const int j = assigned_for(ctx);
        if (j < 0) return {0.0, 0.0};
        return steer_to(self, ctx.reds[j].pos(), v_max, params);
    }

    case HeuristicId::Circle:
        return orbit(self, ctx.target_pos, circle_radius(p), v_max, params);

    case HeuristicId::PredictiveInterception: {
        const int j = assigned_for(ctx);
        if (j < 0) return {0.0, 0.0};
        const AgentState& red = ctx.reds[j];
        const double tau = (red.pos() - self.pos()).norm() / v_max;
        const Vec2 lead = red.pos() + red.velocity() * tau;
        return steer_to(self, lead, v_max, params);
    }

    case HeuristicId::RotationPatrol: {
        const double a = lemniscate_scale(p);
        const double phi = 0.02 * static_cast<double>(ctx.t) + kTau * p;
        return steer_to(self, ctx.target_pos + lemniscate_point(a, phi), v_max, params);
    }

    case HeuristicId::ZoneDefense: {
        const ZoneRank zr = zone_rank(ctx, h);
        const double lo = kTau * static_cast<double>(zr.rank) / zr.count;
        const double hi = kTau * static_cast<double>(zr.rank + 1) / zr.count;
        int pick = -1;
        double pick_d = 0.0;
        for (int j = 0; j < static_cast<int>(ctx.reds.size()); ++j) {
            if (!ctx.reds[j].alive) continue;
            const double ang = wrap_angle(bearing(ctx.target_pos, ctx.reds[j].pos()));
            if (ang < lo || ang >= hi) continue;
            const double d = dist_sq(ctx.reds[j], self.pos());
            if (pick < 0 || d < pick_d) {
                pick = j;
                pick_d = d;
            }
        }
        if (pick >= 0) return steer_to(self, ctx.reds[pick].pos(), v_max, params);
        return steer_to(self, zone_station(ctx.target_pos, zr, 0.3), v_max, params);
    }

    case HeuristicId::DefensivePerimeter: {
        int pick = -1;
        double pick_d = 0.0;
        for (int j = 0; j < static_cast<int>(ctx.reds.size()); ++j) {
            if (!ctx.reds[j].alive) continue;
            const double d = dist_sq(ctx.reds[j], self.pos());
            if (d <= 0.2 * 0.2 && (pick < 0 || d < pick_d)) {
                pick = j;
                pick_d = d;
            }
        }
        if (pick >= 0) return steer_to(self, ctx.reds[pick].pos(), v_max, params);
        const Vec2 station = ctx.target_pos + unit_from_angle(kTau * p) * perimeter_radius(p);
        return steer_to(self, station, v_max, params);
    }

    case HeuristicId::DynamicPositioning: {
        Vec2 centroid{0.0, 0.0};
        int n = 0;
        for (const auto& r : ctx.reds) {
            if (!r.alive) continue;
            centroid = centroid + r.pos();
            ++n;
        }
        if (n == 0) return orbit(self, ctx.target_pos, 0.3, v_max, params);
        centroid = centroid * (1.0 / n);
        const Vec2 dir = centroid - ctx.target_pos;
        const double len = dir.norm();
        if (len < 1e-12) return orbit(self, ctx.target_pos, 0.3, v_max, params);
        return steer_to(self, ctx.target_pos + dir * (0.3 / len), v_max, params);
    }

    case HeuristicId::ThreatLevelAssessment: {
        const int j = top_threat_index(ctx.reds, ctx.target_pos);
        if (j < 0) return {0.0, 0.0};
        return steer_to(self, ctx.reds[j].pos(), v_max, params);
    }

    case HeuristicId::AdaptivePatrolRadius: {
        const int j = nearest_alive_red(self, ctx.reds);
        const double d = j < 0 ? 0.0 : (ctx.reds[j].pos() - self.pos()).norm();
        return orbit(self, ctx.target_pos, adaptive_radius(d, p), v_max, params);
    }

    case HeuristicId::ThreatWeightedPositioning: {
        const ZoneRank zr = zone_rank(ctx, h);
        const Vec2 station = zone_station(ctx.target_pos, zr, 0.3);
        const int j = top_threat_index(ctx.reds, ctx.target_pos);
        if (j < 0) return steer_to(self, station, v_max, params);
        const Vec2 goal = station * (1.0 - p) + ctx.reds[j].pos() * p;
        return steer_to(self, goal, v_max, params);
    }
    }
    return {0.0, 0.0};
}

} // namespace swarmdef
