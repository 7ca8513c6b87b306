#ifndef BFRINGE_WLIMIT_HPP
#define BFRINGE_WLIMIT_HPP

#include <bfringe/rng.hpp>
#include <bfringe/specfun.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace bfringe {

/// The two smoothing-equation variants characterizing the limit laws:
/// ct:  W = B^lambda (W' + W''),              B ~ Beta(m, m)
/// dt:  W = B1^lambda W' + B2^lambda W'',     (B1, B2) ~ Dirichlet(m, m)
enum class WVariant { ct, dt };

std::string to_string(WVariant v);
WVariant wvariant_from_string(const std::string& s);

/// Monte Carlo samples of a W-type limit law with provenance and moment
/// summaries. `variance` is the unbiased empirical E|Y - mean|^2; the
/// predicted values come from the exact variance recursion, at the sampled
/// depth and at the depth -> infinity fixed point.
struct WSampleSet {
    WVariant variant = WVariant::ct;
    int m = 0;
    Complex lambda;
    int depth = 0;
    std::uint64_t seed = 0;
    Complex anchor;
    std::vector<Complex> samples;
    Complex mean;
    double second_abs_moment = 0.0;
    double variance = 0.0;
    double predicted_variance_at_depth = 0.0;
    double predicted_variance_limit = 0.0;
};

/// Analytic moments mu[p] = E W^p, p = 0..pmax. mu[1] is the anchor (the
/// p = 1 equation is vacuous because 2 E B^lambda = 1 at roots).
struct MomentTable {
    WVariant variant = WVariant::ct;
    int m = 0;
    Complex lambda;
    Complex anchor;
    std::vector<Complex> mu;
};

/// Default anchors: m for the ct variant (tree-start continuous-time limit),
/// m!/Gamma(m + lambda) for dt.
Complex default_anchor(WVariant variant, int m, Complex lambda);

/// E B^{2 Re lambda} for B ~ Beta(m, m): the L2 contraction driver.
double contraction_q(int m, Complex lambda);

/// Exact E|W|^2 of the fixed-point law, from the mixed-moment recursion
/// over E[W^a conj(W)^b] with E B^{lambda a + conj(lambda) b} weights.
double second_abs_moment_exact(WVariant variant, int m, Complex lambda, Complex anchor);

/// `count` independent cascade samples at the given depth (recursive binary
/// branching with fresh Beta/Dirichlet weights; depth 0 is the point mass at
/// the anchor). Parallel across samples, deterministic given the seed.
/// Throws phase_error when Re(lambda) <= 1/2 and std::invalid_argument when
/// 2^depth exceeds the node budget.
WSampleSet cascade_sample(WVariant variant, int m, Complex lambda, int depth,
                          std::size_t count, std::uint64_t seed,
                          std::optional<Complex> anchor = std::nullopt);

/// Moment recursion mu_p (1 - 2 E B^{lambda p}) = <lower-order convolution>.
/// Throws numeric_error if a solvability coefficient degenerates (cannot
/// happen for Re(lambda) > 1/2).
MomentTable moments_W(WVariant variant, int m, Complex lambda, Complex anchor, int pmax);

/// Per-type p-th moments mu_p^(k), k = 1..m, chained through the per-clock
/// transforms nu_k / (nu_k + lambda p) with nu_k = m + k - 1.
std::vector<Complex> intermediate_moments(int m, Complex lambda, Complex anchor, int p);

/// Residuals of the m coupled first-order transform equations, evaluated as
/// truncated power series through order pmax on anchor-normalized moment
/// tables. Coefficient mismatches are measured relative to coefficient
/// magnitude; the k = m equation closes the loop through the quadratic term
/// while k < m check the chain.
std::vector<double> laplace_residual(int m, Complex lambda, int pmax);

/// Same residuals evaluated on a caller-supplied normalized moment table
/// mu[0..pmax] (mu[0] = 1, mu[1] = 1). Lets tests probe the sensitivity of
/// the check to table perturbations.
std::vector<double> laplace_residual_of(int m, Complex lambda,
                                        const std::vector<Complex>& normalized_mu);

struct FixpointOptions {
    std::size_t wass_subsample = 256;  // points per empirical W2 evaluation
    int trace_stride = 1;              // evaluate W2 every this many iterations
};

struct FixpointResult {
    WSampleSet samples;                      // final iterate
    std::vector<double> distance_trace;      // empirical W2 between consecutive iterates
    std::vector<double> second_moment_trace; // empirical E|X|^2 after each iteration
    double contraction_bound = 0.0;          // sqrt(2 E B^{2 Re lambda})
};

/// Iterates the empirical smoothing map from the point mass at the anchor.
FixpointResult fixpoint_iterate(WVariant variant, int m, Complex lambda, Complex anchor,
                                std::size_t n_samples, int n_iters, std::uint64_t seed,
                                FixpointOptions options = {});

struct ExpMomentRow {
    Complex t;
    double empirical = 0.0;      // mean of exp(<t, W>)
    double std_error = 0.0;
    double bound = 0.0;          // exp(m Re t + C |t|^2)
    bool flagged = false;        // empirical beyond bound + 3 SE
    double empirical_abs = 0.0;  // mean of exp(|t W|)
    double bound_abs = 0.0;      // 4 exp(m |t| + 2 C |t|^2)
    bool flagged_abs = false;
};

/// Compares empirical exponential moments against the quadratic bounds with
/// the configured constants. Violations are reported, not fatal.
std::vector<ExpMomentRow> exp_moment_check(const WSampleSet& samples,
                                           const std::vector<Complex>& t_grid,
                                           double C, double eps);

} // namespace bfringe

#endif
