#include <bfringe/urn.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bfringe {

UrnState make_state(const ReplacementRule& rule, CompositionVector initial) {
    if (!check_tenable(rule, initial)) {
        throw std::invalid_argument("urn: initial composition is not tenable");
    }
    UrnState s;
    s.rule = &rule;
    s.gap_total = std::accumulate(initial.begin(), initial.end(), std::int64_t{0});
    s.gaps = std::move(initial);
    s.n = 0;
    return s;
}

int color_of_gap_index(const UrnState& state, std::uint64_t gap_index) {
    std::uint64_t cum = 0;
    const int d = state.rule->dim;
    for (int k = 0; k < d; ++k) {
        cum += static_cast<std::uint64_t>(state.gaps[k]);
        if (gap_index < cum) return k;
    }
    throw std::invalid_argument("urn: gap index out of range");
}

void apply_color(UrnState& state, int color) {
    const auto& row = state.rule->rows[color];
    for (int j = 0; j < state.rule->dim; ++j) {
        state.gaps[j] += row[j];
        if (state.gaps[j] < 0) {
            // Cannot happen from a tenable start; a negative count means the
            // chain itself is broken.
            throw std::logic_error("urn: negative composition entry");
        }
    }
    state.n += 1;
    state.gap_total += state.rule->balance;
}

void step(UrnState& state, Xoshiro256pp& rng) {
    if (state.gap_total < 1) throw std::logic_error("urn: empty state");
    const auto idx = uniform_below(rng, static_cast<std::uint64_t>(state.gap_total));
    apply_color(state, color_of_gap_index(state, idx));
}

namespace {

Trajectory run_impl(const ReplacementRule& rule, CompositionVector initial,
                    std::int64_t n_steps, std::uint64_t seed,
                    std::int64_t stride, std::vector<std::int64_t> checkpoints) {
    if (n_steps < 0) throw std::invalid_argument("run_trajectory: n_steps < 0");

    Trajectory t;
    t.rule = rule;
    t.initial = initial;
    t.seed = seed;
    t.stride = stride;
    t.n_steps = n_steps;

    UrnState state = make_state(t.rule, std::move(initial));
    auto rng = Xoshiro256pp::substream(seed, 0);

    auto should_record = [&](std::int64_t n) {
        if (n == 0 || n == n_steps) return true;
        if (stride > 0) return n % stride == 0;
        return std::binary_search(checkpoints.begin(), checkpoints.end(), n);
    };

    if (should_record(0)) {
        t.record_n.push_back(0);
        t.record_gaps.push_back(state.gaps);
    }
    for (std::int64_t i = 1; i <= n_steps; ++i) {
        step(state, rng);
        if (should_record(i)) {
            t.record_n.push_back(i);
            t.record_gaps.push_back(state.gaps);
        }
    }
    return t;
}

} // namespace

Trajectory run_trajectory(const ReplacementRule& rule, CompositionVector initial,
                          std::int64_t n_steps, std::uint64_t seed, std::int64_t stride) {
    if (stride <= 0) throw std::invalid_argument("run_trajectory: stride must be positive");
    return run_impl(rule, std::move(initial), n_steps, seed, stride, {});
}

Trajectory run_trajectory_at(const ReplacementRule& rule, CompositionVector initial,
                             std::int64_t n_steps, std::uint64_t seed,
                             std::vector<std::int64_t> checkpoints) {
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    return run_impl(rule, std::move(initial), n_steps, seed, 0, std::move(checkpoints));
}

std::vector<std::int64_t> log_spaced_checkpoints(std::int64_t n_final, double ratio) {
    if (n_final < 1 || ratio <= 1.0) {
        throw std::invalid_argument("log_spaced_checkpoints: bad arguments");
    }
    std::vector<std::int64_t> out;
    double x = 1.0;
    std::int64_t last = 0;
    while (true) {
        auto n = static_cast<std::int64_t>(std::llround(x));
        if (n > n_final) break;
        if (n > last) {
            out.push_back(n);
            last = n;
        }
        x *= ratio;
        if (x <= static_cast<double>(last)) x = static_cast<double>(last) + 1.0;
    }
    if (out.empty() || out.back() != n_final) out.push_back(n_final);
    return out;
}

Trajectory embed_continuous(const Trajectory& trajectory, std::uint64_t seed) {
    Trajectory out = trajectory;
    out.jump_times.assign(out.record_n.size(), 0.0);

    const std::int64_t k0 = std::accumulate(out.initial.begin(), out.initial.end(), std::int64_t{0});
    auto rng = Xoshiro256pp::substream(seed, 1);

    // Holding times depend only on the deterministic gap totals K_n = K_0 + n,
    // so they can be attached after the discrete chain has been generated.
    double tau = 0.0;
    std::size_t rec = 0;
    if (!out.record_n.empty() && out.record_n[0] == 0) {
        out.jump_times[0] = 0.0;
        rec = 1;
    }
    for (std::int64_t n = 1; n <= out.n_steps && rec < out.record_n.size(); ++n) {
        tau += exponential(rng, static_cast<double>(k0 + n - 1));
        if (out.record_n[rec] == n) {
            out.jump_times[rec] = tau;
            ++rec;
        }
    }
    return out;
}

double estimate_xi(const Trajectory& trajectory) {
    if (!trajectory.has_jump_times()) {
        throw std::invalid_argument("estimate_xi: trajectory has no jump times");
    }
    if (trajectory.record_n.empty() || trajectory.record_n.back() < 1000) {
        throw std::invalid_argument("estimate_xi: final n must be >= 1000");
    }
    const double n = static_cast<double>(trajectory.record_n.back());
    return n * std::exp(-trajectory.jump_times.back());
}

CompositionVector gaps_to_fringe(const ReplacementRule& rule, const CompositionVector& gaps) {
    if (static_cast<int>(gaps.size()) != rule.dim) {
        throw std::invalid_argument("gaps_to_fringe: dimension mismatch");
    }
    CompositionVector fringe(gaps.size());
    for (int k = 0; k < rule.dim; ++k) {
        if (gaps[k] % rule.gap_diag[k] != 0) {
            throw std::logic_error("gaps_to_fringe: entry not divisible by gap count");
        }
        fringe[k] = gaps[k] / rule.gap_diag[k];
    }
    return fringe;
}

} // namespace bfringe
