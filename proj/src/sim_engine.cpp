#include "swarmdef/sim_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "swarmdef/heuristics.hpp"

namespace swarmdef {

WorldState init_episode(const Chromosome& chrom, int n_red, const SimParams& params,
                        std::uint64_t seed) {
    params.validate();
    if (n_red < 1) throw std::invalid_argument("n_red must be >= 1");
    if (chrom.empty()) throw std::invalid_argument("chromosome must not be empty");
    validate_chromosome(chrom, params.n_warehouses);

    WorldState w;
    w.t = 0;
    w.target = AgentState{0.0, 0.0, 0.0, 0.0, true};

    w.reds.resize(static_cast<size_t>(n_red));
    w.red_trajectories.resize(static_cast<size_t>(n_red));
    const int freq_choices =
        static_cast<int>(std::floor(params.red_frequency_max - params.red_frequency_min)) + 1;
    for (int j = 0; j < n_red; ++j) {
        Rng rng(derive_seed(seed, seedtag::episode_reds, static_cast<std::uint64_t>(j)));
        RedTrajectory& tr = w.red_trajectories[j];
        tr.spawn_radius = rng.uniform(params.red_spawn_radius_lo, params.red_spawn_radius_hi);
        tr.spawn_angle = rng.uniform(0.0, kTau);
        tr.speed = rng.uniform(params.v_min_red, params.v_max_red);
        tr.amplitude = rng.uniform(-params.red_amplitude_max, params.red_amplitude_max);
        // Whole cycles only, so the lateral offset vanishes at the target.
        tr.frequency = params.red_frequency_min +
                       static_cast<double>(rng.uniform_int(static_cast<std::uint32_t>(
                           freq_choices < 1 ? 1 : freq_choices)));
        const Vec2 pos = unit_from_angle(tr.spawn_angle) * tr.spawn_radius;
        AgentState& s = w.reds[j];
        s.x = pos.x;
        s.y = pos.y;
        s.theta = wrap_angle(tr.spawn_angle + kPi); // facing the target at the origin
        s.v = tr.speed;
        s.alive = true;
    }

    w.blues.resize(chrom.size());
    // Same-warehouse spawns are nudged along the ring tangent by arrival
    // rank, two radii apart, so teammates never start stacked.
    std::vector<int> arrivals(static_cast<size_t>(params.n_warehouses), 0);
    for (size_t i = 0; i < chrom.size(); ++i) {
        Rng rng(derive_seed(seed, seedtag::episode_blues, static_cast<std::uint64_t>(i)));
        const int rank = arrivals[static_cast<size_t>(chrom[i].warehouse)]++;
        const double site = kTau * static_cast<double>(chrom[i].warehouse) /
                            static_cast<double>(params.n_warehouses);
        const Vec2 pos = params.warehouse_position(chrom[i].warehouse) +
                         unit_from_angle(site + kPi * 0.5) *
                             (2.0 * params.agent_radius * static_cast<double>(rank));
        AgentState& s = w.blues[i];
        s.x = pos.x;
        s.y = pos.y;
        s.theta = rng.uniform(0.0, kTau);
        s.v = params.v_min_blue;
        s.alive = true;
    }
    return w;
}

AgentState step_dynamics(const AgentState& s, Action a, const SimParams& params, Team team) {
    if (!s.alive) return s;
    AgentState n = s;
    n.theta = wrap_angle(s.theta + a.turn * params.omega_max * params.dt);
    n.v = clamp(s.v + a.accel * params.dt, params.v_min(team), params.v_max(team));
    n.x = s.x + n.v * std::cos(n.theta) * params.dt;
    n.y = s.y + n.v * std::sin(n.theta) * params.dt;
    return n;
}

Vec2 red_reference_point(const RedTrajectory& traj, int t, const SimParams& params) {
    const Vec2 spawn = unit_from_angle(traj.spawn_angle) * traj.spawn_radius;
    const double len = traj.spawn_radius; // target sits at the origin
    double s = traj.speed * static_cast<double>(t + 1) * params.dt / len;
    if (s > 1.0) s = 1.0;
    const Vec2 u = spawn * (-1.0 / len);   // unit direction spawn -> target
    const Vec2 n{-u.y, u.x};               // left normal
    const double lateral = traj.amplitude * std::sin(kTau * traj.frequency * s);
    return spawn + u * (len * s) + n * lateral;
}

Action red_policy_action(int red_index, const WorldState& world, const SimParams& params) {
    const AgentState& self = world.reds[red_index];
    const RedTrajectory& tr = world.red_trajectories[red_index];
    const Vec2 ref = red_reference_point(tr, world.t, params);
    return steer_to(self, ref, tr.speed, params);
}

namespace {

bool within(Vec2 a, Vec2 b, double thresh) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy <= thresh * thresh;
}

// Shared core: tests current positions, and optionally midpoints of the
// motion segments. Deaths are collected first and applied together.
void resolve_impl(WorldState& w, const Vec2* prev_blues, const Vec2* prev_reds,
                  const SimParams& params) {
    thread_local std::vector<char> blue_dead, red_dead;
    const size_t n_b = w.blues.size();
    const size_t n_r = w.reds.size();
    blue_dead.assign(n_b, 0);
    red_dead.assign(n_r, 0);
    bool target_dead = false;

    const double rr_blue = 2.0 * params.agent_radius;
    const double rr_target = params.agent_radius + params.target_radius;
    const Vec2 target_pos = w.target.pos();

    for (size_t j = 0; j < n_r; ++j) {
        if (!w.reds[j].alive) continue;
        const Vec2 rp = w.reds[j].pos();
        const Vec2 rm = prev_reds ? (prev_reds[j] + rp) * 0.5 : rp;

        for (size_t i = 0; i < n_b; ++i) {
            if (!w.blues[i].alive) continue;
            const Vec2 bp = w.blues[i].pos();
            bool hit = within(bp, rp, rr_blue);
            if (!hit && prev_blues)
                hit = within((prev_blues[i] + bp) * 0.5, rm, rr_blue);
            if (hit) {
                blue_dead[i] = 1;
                red_dead[j] = 1;
            }
        }

        if (w.target.alive &&
            (within(rp, target_pos, rr_target) ||
             (prev_reds && within(rm, target_pos, rr_target)))) {
            red_dead[j] = 1;
            target_dead = true;
        }
    }

    for (size_t i = 0; i < n_b; ++i)
        if (blue_dead[i]) w.blues[i].alive = false;
    for (size_t j = 0; j < n_r; ++j)
        if (red_dead[j]) w.reds[j].alive = false;
    if (target_dead) w.target.alive = false;
}

void record_trace(TraceSink& sink, const WorldState& w) {
    for (size_t i = 0; i < w.blues.size(); ++i) {
        const AgentState& s = w.blues[i];
        sink.push_back({w.t, Team::Blue, static_cast<int>(i), s.x, s.y, s.theta, s.v, s.alive});
    }
    for (size_t j = 0; j < w.reds.size(); ++j) {
        const AgentState& s = w.reds[j];
        sink.push_back({w.t, Team::Red, static_cast<int>(j), s.x, s.y, s.theta, s.v, s.alive});
    }
    const AgentState& t = w.target;
    sink.push_back({w.t, Team::Target, 0, t.x, t.y, t.theta, t.v, t.alive});
}

} // namespace

void resolve_collisions(WorldState& world, const SimParams& params) {
    resolve_impl(world, nullptr, nullptr, params);
}

void resolve_collisions_swept(WorldState& world, std::span<const Vec2> prev_blues,
                              std::span<const Vec2> prev_reds, const SimParams& params) {
    resolve_impl(world, prev_blues.data(), prev_reds.data(), params);
}

std::optional<TerminationCause> check_termination(const WorldState& world,
                                                  const SimParams& params) {
    if (!world.target.alive) return TerminationCause::TargetHit;
    bool any_red = false;
    for (const auto& r : world.reds)
        if (r.alive) { any_red = true; break; }
    if (!any_red) return TerminationCause::AllRedDead;
    bool any_blue = false;
    for (const auto& b : world.blues)
        if (b.alive) { any_blue = true; break; }
    if (!any_blue) return TerminationCause::AllBlueDead;
    if (world.t >= params.t_max) return TerminationCause::Timeout;
    return std::nullopt;
}

EpisodeOutcome run_world(WorldState world, const Chromosome& chrom,
                         const SimParams& params, TraceSink* trace) {
    if (chrom.size() != world.blues.size())
        throw std::invalid_argument("chromosome length does not match blue count");
    if (world.red_trajectories.size() != world.reds.size())
        throw std::invalid_argument("red trajectory count does not match red count");

    const int n_b = static_cast<int>(world.blues.size());
    const int n_r = static_cast<int>(world.reds.size());

    thread_local std::vector<HeuristicId> team;
    thread_local std::vector<Action> blue_act, red_act;
    thread_local std::vector<Vec2> prev_b, prev_r;
    thread_local std::vector<int> chasers, assignment;
    team.resize(n_b);
    blue_act.resize(n_b);
    red_act.resize(n_r);
    prev_b.resize(n_b);
    prev_r.resize(n_r);
    for (int i = 0; i < n_b; ++i) team[i] = chrom[i].h;

    if (trace) record_trace(*trace, world);

    // Degenerate starting worlds (handed in already terminal) still settle in
    // the first iteration: nobody acts, nothing moves, the check fires.
    while (true) {
        chasers.clear();
        for (int i = 0; i < n_b; ++i)
            if (world.blues[i].alive && is_chase_family(team[i])) chasers.push_back(i);
        std::span<const int> assigned = {};
        if (!chasers.empty()) {
            assignment = assign_attackers(chasers, world.blues, world.reds);
            assigned = assignment;
        }

        for (int i = 0; i < n_b; ++i) {
            if (!world.blues[i].alive) continue;
            const HeuristicContext ctx{world.blues[i], i,          world.blues,
                                       world.reds,     team,       world.target.pos(),
                                       world.t,        params,     assigned};
            blue_act[i] = heuristic_action(team[i], ctx, chrom[i].param);
        }
        for (int j = 0; j < n_r; ++j) {
            if (!world.reds[j].alive) continue;
            red_act[j] = red_policy_action(j, world, params);
        }

        for (int i = 0; i < n_b; ++i) {
            prev_b[i] = world.blues[i].pos();
            if (world.blues[i].alive)
                world.blues[i] = step_dynamics(world.blues[i], blue_act[i], params, Team::Blue);
        }
        for (int j = 0; j < n_r; ++j) {
            prev_r[j] = world.reds[j].pos();
            if (world.reds[j].alive)
                world.reds[j] = step_dynamics(world.reds[j], red_act[j], params, Team::Red);
        }
        world.t += 1;

        resolve_collisions_swept(world, prev_b, prev_r, params);
        if (trace) record_trace(*trace, world);

        if (const auto cause = check_termination(world, params)) {
            EpisodeOutcome out;
            out.cause = *cause;
            out.termination_step = world.t;
            out.blue_win = (*cause == TerminationCause::AllRedDead) && world.target.alive;
            out.final_state = std::move(world);
            return out;
        }
    }
}

EpisodeOutcome run_episode(const Chromosome& chrom, int n_red, const SimParams& params,
                           std::uint64_t seed, TraceSink* trace) {
    return run_world(init_episode(chrom, n_red, params, seed), chrom, params, trace);
}

} // namespace swarmdef
