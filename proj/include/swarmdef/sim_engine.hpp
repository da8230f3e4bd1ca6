#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarmdef/genome.hpp"
#include "swarmdef/sim_types.hpp"

namespace swarmdef {

// Builds the t=0 world for one episode. Blue i launches from the warehouse
// named by gene i at v_min with a uniform random heading; red j spawns on the
// outer annulus heading straight at the target with a per-red speed,
// amplitude, and whole-cycle frequency. All draws come from streams derived
// from `seed`, one per agent, so the world is a pure function of
// (chromosome, n_red, params, seed).
WorldState init_episode(const Chromosome& chrom, int n_red, const SimParams& params,
                        std::uint64_t seed);

// One kinematic update: heading first, then speed (clamped to the team
// band), then displacement using the new heading and speed. Dead agents are
// frozen in place.
AgentState step_dynamics(const AgentState& s, Action a, const SimParams& params, Team team);

// Where red j's reference path says it should be heading for at step t. The
// path runs from spawn to target with a lateral sinusoid that closes to zero
// exactly at the target (whole cycles). Aims one step ahead of the nominal
// arc-length position.
Vec2 red_reference_point(const RedTrajectory& traj, int t, const SimParams& params);

// Proportional tracking of the reference point at the red's assigned speed.
Action red_policy_action(int red_index, const WorldState& world, const SimParams& params);

// Overlap test on the current positions. Every pair is judged on the same
// snapshot of positions and alive flags, then all deaths land at once, so
// one agent can eliminate and be eliminated in the same step. Blue-red
// contact kills both; red-target contact kills both; same-team contact and
// blue-target contact do nothing.
void resolve_collisions(WorldState& world, const SimParams& params);

// Same rule, but each pair is additionally tested at the segment midpoint
// between the previous and current positions, to catch fast crossings that
// are separated at both endpoints.
void resolve_collisions_swept(WorldState& world, std::span<const Vec2> prev_blues,
                              std::span<const Vec2> prev_reds, const SimParams& params);

// Priority when several conditions hold at once: target_hit, then
// all_red_dead, then all_blue_dead, then timeout.
std::optional<TerminationCause> check_termination(const WorldState& world,
                                                  const SimParams& params);

using TraceSink = std::vector<TraceRow>;

// Runs the loop act -> step -> resolve -> check from the given world until
// termination. The chromosome supplies each blue's policy. If `trace` is
// given, every agent's state is appended at t=0 and after every step.
EpisodeOutcome run_world(WorldState world, const Chromosome& chrom,
                         const SimParams& params, TraceSink* trace = nullptr);

// init_episode + run_world.
EpisodeOutcome run_episode(const Chromosome& chrom, int n_red, const SimParams& params,
                           std::uint64_t seed, TraceSink* trace = nullptr);

} // namespace swarmdef
