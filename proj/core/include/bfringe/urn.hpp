#ifndef BFRINGE_URN_HPP
#define BFRINGE_URN_HPP

#include <bfringe/replacement.hpp>
#include <bfringe/rng.hpp>

#include <cstdint>
#include <vector>

namespace bfringe {

/// State of the gap urn chain: composition in gap coordinates, step index n
/// and the gap total K_n = n + |G_0|.
struct UrnState {
    const ReplacementRule* rule = nullptr;
    CompositionVector gaps;
    std::int64_t n = 0;
    std::int64_t gap_total = 0;
};

/// Validated initial state. Throws std::invalid_argument when `initial` is
/// not tenable for the rule.
UrnState make_state(const ReplacementRule& rule, CompositionVector initial);

/// Maps a uniform gap index in [0, K_n) to the color of the drawn gap
/// (0-based), scanning types in order. This is the deterministic half of a
/// step; the B-tree simulator consumes the same indices for the coupling.
int color_of_gap_index(const UrnState& state, std::uint64_t gap_index);

/// Adds row `color` of the rule to the composition. Throws std::logic_error
/// if a coordinate would go negative (impossible from a tenable start).
void apply_color(UrnState& state, int color);

/// One transition: draw a gap uniformly, replace per the drawn color.
void step(UrnState& state, Xoshiro256pp& rng);

/// Seeded record of (n, composition) samples, optionally with the
/// continuous-time jump instants tau_(n) aligned to the records.
struct Trajectory {
    ReplacementRule rule;
    CompositionVector initial;
    std::uint64_t seed = 0;
    std::int64_t stride = 0;  // 0 when recorded at explicit checkpoints
    std::int64_t n_steps = 0;
    std::vector<std::int64_t> record_n;
    std::vector<CompositionVector> record_gaps;
    std::vector<double> jump_times;  // empty unless embedded; aligned with record_n

    bool has_jump_times() const { return !jump_times.empty(); }
};

/// Runs the chain for n_steps, recording at multiples of `stride` (and the
/// final step). Deterministic given the seed.
Trajectory run_trajectory(const ReplacementRule& rule, CompositionVector initial,
                          std::int64_t n_steps, std::uint64_t seed, std::int64_t stride);

/// Same, recording at the given sorted step indices (plus step 0 and the
/// final step). Used for log-spaced sampling.
Trajectory run_trajectory_at(const ReplacementRule& rule, CompositionVector initial,
                             std::int64_t n_steps, std::uint64_t seed,
                             std::vector<std::int64_t> checkpoints);

/// Geometrically spaced checkpoints 1, ..., n_final with the given ratio.
std::vector<std::int64_t> log_spaced_checkpoints(std::int64_t n_final, double ratio);

/// Continuous-time embedding via the jump chain: holding time after step n
/// is exponential with rate K_n (one unit-rate clock per gap). Returns a
/// copy of the trajectory with jump_times filled in; the embedded jump
/// chain is the input discrete chain, untouched.
Trajectory embed_continuous(const Trajectory& trajectory, std::uint64_t seed);

/// xi-hat = n * exp(-tau_(n)) at the final recorded step. Throws
/// std::invalid_argument when jump times are missing or the trajectory is
/// too short (final n < 1000).
double estimate_xi(const Trajectory& trajectory);

/// Fringe coordinates L = P^{-1} G (entries exactly divisible).
CompositionVector gaps_to_fringe(const ReplacementRule& rule, const CompositionVector& gaps);

} // namespace bfringe

#endif
