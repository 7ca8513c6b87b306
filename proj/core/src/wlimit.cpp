#include <bfringe/wlimit.hpp>

#include <bfringe/errors.hpp>
#include <bfringe/spectral.hpp>
#include <bfringe/transport.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bfringe {

namespace {

void require_contractive(Complex lambda) {
    if (lambda.real() <= 0.5) {
        throw phase_error("wlimit: non-contractive, need Re(lambda) > 1/2");
    }
}

// E B^s through the clock-product route (equals beta_moment/2).
Complex e_beta_pow(int m, Complex s) { return 0.5 * beta_moment(m, s); }

// E[B^a (1-B)^c] for B ~ Beta(m, m), gamma-ratio form.
Complex joint_beta_moment(int m, Complex a, Complex c) {
    const double dm = static_cast<double>(m);
    return std::exp(log_gamma(dm + a) + log_gamma(dm + c) + log_gamma(Complex(2.0 * dm)) -
                    2.0 * log_gamma(Complex(dm)) - log_gamma(2.0 * dm + a + c));
}

// One-step variance recursion: Var Y_{n+1} = 2q Var Y_n + |A|^2 * gain.
double variance_gain(WVariant variant, int m, Complex lambda) {
    const double q = contraction_q(m, lambda);
    if (variant == WVariant::ct) return 4.0 * q - 1.0;
    const double rj = joint_beta_moment(m, lambda, std::conj(lambda)).real();
    return 2.0 * q + 2.0 * rj - 1.0;
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
    return b;
}

struct CascadeWorker {
    WVariant variant;
    int m;
    Complex lambda;
    Complex anchor;

    Complex node(Xoshiro256pp& rng, int depth) const {
        if (depth == 0) return anchor;
        const Complex left = node(rng, depth - 1);
        const Complex right = node(rng, depth - 1);
        const double b = beta_draw(rng, static_cast<double>(m), static_cast<double>(m));
        if (variant == WVariant::ct) {
            return std::exp(lambda * std::log(b)) * (left + right);
        }
        return std::exp(lambda * std::log(b)) * left +
               std::exp(lambda * std::log1p(-b)) * right;
    }
};

void summarize(WSampleSet& set) {
    const auto n = static_cast<double>(set.samples.size());
    Complex mean = 0.0;
    double abs2 = 0.0;
    for (const Complex& y : set.samples) {
        mean += y;
        abs2 += std::norm(y);
    }
    mean /= n;
    abs2 /= n;
    set.mean = mean;
    set.second_abs_moment = abs2;
    set.variance = n > 1 ? (abs2 - std::norm(mean)) * n / (n - 1.0) : 0.0;
}

} // namespace

std::string to_string(WVariant v) { return v == WVariant::ct ? "ct" : "dt"; }

WVariant wvariant_from_string(const std::string& s) {
    if (s == "ct") return WVariant::ct;
    if (s == "dt") return WVariant::dt;
    throw std::invalid_argument("unknown W variant: " + s);
}

Complex default_anchor(WVariant variant, int m, Complex lambda) {
    if (variant == WVariant::ct) return Complex(static_cast<double>(m));
    // m! / Gamma(m + lambda)
    return std::exp(log_gamma(Complex(static_cast<double>(m) + 1.0)) -
                    log_gamma(static_cast<double>(m) + lambda));
}

double contraction_q(int m, Complex lambda) {
    return e_beta_pow(m, Complex(2.0 * lambda.real())).real();
}

double second_abs_moment_exact(WVariant variant, int m, Complex lambda, Complex anchor) {
    const double q = contraction_q(m, lambda);
    const double denom = 1.0 - 2.0 * q;
    if (denom <= 0.0) throw phase_error("wlimit: second moment diverges (2 E B^{2 Re l} >= 1)");
    if (variant == WVariant::ct) return 2.0 * q * std::norm(anchor) / denom;
    const double rj = joint_beta_moment(m, lambda, std::conj(lambda)).real();
    return 2.0 * rj * std::norm(anchor) / denom;
}

WSampleSet cascade_sample(WVariant variant, int m, Complex lambda, int depth,
                          std::size_t count, std::uint64_t seed,
                          std::optional<Complex> anchor) {
    if (m < 2) throw std::invalid_argument("cascade_sample: m must be >= 2");
    require_contractive(lambda);
    if (depth < 0) throw std::invalid_argument("cascade_sample: negative depth");
    if (depth > 26) {
        throw std::invalid_argument("cascade_sample: 2^depth exceeds the node budget");
    }
    if (count == 0) throw std::invalid_argument("cascade_sample: count must be positive");

    WSampleSet set;
    set.variant = variant;
    set.m = m;
    set.lambda = lambda;
    set.depth = depth;
    set.seed = seed;
    set.anchor = anchor.value_or(default_anchor(variant, m, lambda));
    set.samples.resize(count);

    const CascadeWorker worker{variant, m, lambda, set.anchor};
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_threads = std::min<std::size_t>(hw, 8);
    if (n_threads <= 1 || count < 256) {
        for (std::size_t i = 0; i < count; ++i) {
            auto rng = Xoshiro256pp::substream(seed, i);
            set.samples[i] = worker.node(rng, depth);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = t; i < count; i += n_threads) {
                    auto rng = Xoshiro256pp::substream(seed, i);
                    set.samples[i] = worker.node(rng, depth);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    summarize(set);

    const double q = contraction_q(m, lambda);
    const double gain = variance_gain(variant, m, lambda) * std::norm(set.anchor);
    double v = 0.0;
    for (int d = 0; d < depth; ++d) v = 2.0 * q * v + gain;
    set.predicted_variance_at_depth = v;
    set.predicted_variance_limit = gain / (1.0 - 2.0 * q);
    return set;
}

MomentTable moments_W(WVariant variant, int m, Complex lambda, Complex anchor, int pmax) {
    if (m < 2) throw std::invalid_argument("moments_W: m must be >= 2");
    require_contractive(lambda);
    if (pmax < 1) throw std::invalid_argument("moments_W: pmax must be >= 1");

    MomentTable t;
    t.variant = variant;
    t.m = m;
    t.lambda = lambda;
    t.anchor = anchor;
    t.mu.assign(static_cast<std::size_t>(pmax) + 1, Complex(0.0));
    t.mu[0] = 1.0;
    t.mu[1] = anchor;
    for (int p = 2; p <= pmax; ++p) {
        const Complex ebp = e_beta_pow(m, lambda * static_cast<double>(p));
        const Complex coef = 1.0 - 2.0 * ebp;
        if (std::abs(coef) < 1e-10) {
            throw numeric_error("moments_W: degenerate coefficient at p = " + std::to_string(p));
        }
        Complex rhs = 0.0;
        if (variant == WVariant::ct) {
            Complex conv = 0.0;
            for (int j = 1; j < p; ++j) {
                conv += binomial(p, j) * t.mu[static_cast<std::size_t>(j)] *
                        t.mu[static_cast<std::size_t>(p - j)];
            }
            rhs = ebp * conv;
        } else {
            for (int j = 1; j < p; ++j) {
                const Complex w = joint_beta_moment(m, lambda * static_cast<double>(j),
                                                    lambda * static_cast<double>(p - j));
                rhs += binomial(p, j) * w * t.mu[static_cast<std::size_t>(j)] *
                       t.mu[static_cast<std::size_t>(p - j)];
            }
        }
        t.mu[static_cast<std::size_t>(p)] = rhs / coef;
    }
    return t;
}

std::vector<Complex> intermediate_moments(int m, Complex lambda, Complex anchor, int p) {
    if (p < 0) throw std::invalid_argument("intermediate_moments: p must be >= 0");
    const MomentTable t = moments_W(WVariant::ct, m, lambda, anchor, std::max(1, p));
    std::vector<Complex> out(static_cast<std::size_t>(m));
    const Complex mu_p = p == 0 ? Complex(1.0) : t.mu[static_cast<std::size_t>(p)];
    Complex chain = mu_p;
    for (int k = 1; k <= m; ++k) {
        out[static_cast<std::size_t>(k - 1)] = chain;
        const double nu = static_cast<double>(m + k - 1);
        chain *= (nu + lambda * static_cast<double>(p)) / nu;
    }
    return out;
}

std::vector<double> laplace_residual(int m, Complex lambda, int pmax) {
    if (pmax < 1) throw std::invalid_argument("laplace_residual: pmax must be >= 1");
    require_contractive(lambda);
    // Anchor-normalized type-1 table (the system is scale covariant, so the
    // residual does not depend on the anchor).
    const MomentTable t = moments_W(WVariant::ct, m, lambda, Complex(1.0), pmax);
    return laplace_residual_of(m, lambda, t.mu);
}

std::vector<double> laplace_residual_of(int m, Complex lambda,
                                        const std::vector<Complex>& normalized_mu) {
    if (normalized_mu.size() < 2) {
        throw std::invalid_argument("laplace_residual: moment table missing");
    }
    const int pmax = static_cast<int>(normalized_mu.size()) - 1;

    // per-type tables T[k][p], k = 1..m (index 0 unused)
    std::vector<std::vector<Complex>> type_mu(static_cast<std::size_t>(m) + 1,
                                              std::vector<Complex>(static_cast<std::size_t>(pmax) + 1));
    for (int p = 0; p <= pmax; ++p) {
        Complex chain = normalized_mu[static_cast<std::size_t>(p)];
        for (int k = 1; k <= m; ++k) {
            type_mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] = chain;
            const double nu = static_cast<double>(m + k - 1);
            chain *= (nu + lambda * static_cast<double>(p)) / nu;
        }
    }

    std::vector<double> residuals(static_cast<std::size_t>(m), 0.0);
    for (int k = 1; k <= m; ++k) {
        const Complex nu_over_l = static_cast<double>(m + k - 1) / lambda;
        double worst = 0.0;
        for (int p = 0; p <= pmax; ++p) {
            const Complex lhs = (nu_over_l + static_cast<double>(p)) *
                                type_mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
            Complex rhs;
            if (k < m) {
                rhs = nu_over_l * type_mu[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(p)];
            } else {
                Complex conv = 0.0;
                for (int j = 0; j <= p; ++j) {
                    conv += binomial(p, j) *
                            type_mu[1][static_cast<std::size_t>(j)] *
                            type_mu[1][static_cast<std::size_t>(p - j)];
                }
                rhs = nu_over_l * conv;
            }
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
        residuals[static_cast<std::size_t>(k - 1)] = worst;
    }
    return residuals;
}

FixpointResult fixpoint_iterate(WVariant variant, int m, Complex lambda, Complex anchor,
                                std::size_t n_samples, int n_iters, std::uint64_t seed,
                                FixpointOptions options) {
    if (m < 2) throw std::invalid_argument("fixpoint_iterate: m must be >= 2");
    require_contractive(lambda);
    if (n_samples < 2 || n_iters < 1) {
        throw std::invalid_argument("fixpoint_iterate: need n_samples >= 2, n_iters >= 1");
    }

    FixpointResult result;
    result.contraction_bound = std::sqrt(2.0 * contraction_q(m, lambda));

    std::vector<Complex> current(n_samples, anchor);
    std::vector<Complex> next(n_samples);
    auto rng = Xoshiro256pp::substream(seed, 0);
    auto sub_rng = Xoshiro256pp::substream(seed, 1);

    const double dm = static_cast<double>(m);
    for (int it = 0; it < n_iters; ++it) {
        for (std::size_t i = 0; i < n_samples; ++i) {
            const Complex x = current[uniform_below(rng, n_samples)];
            const Complex y = current[uniform_below(rng, n_samples)];
            const double b = beta_draw(rng, dm, dm);
            if (variant == WVariant::ct) {
                next[i] = std::exp(lambda * std::log(b)) * (x + y);
            } else {
                next[i] = std::exp(lambda * std::log(b)) * x +
                          std::exp(lambda * std::log1p(-b)) * y;
            }
        }
        if (it % std::max(1, options.trace_stride) == 0) {
            auto s1 = subsample(current, options.wass_subsample, sub_rng);
            auto s2 = subsample(next, options.wass_subsample, sub_rng);
            result.distance_trace.push_back(wasserstein2(s1, s2));
        }
        double abs2 = 0.0;
        for (const Complex& y : next) abs2 += std::norm(y);
        result.second_moment_trace.push_back(abs2 / static_cast<double>(n_samples));
        std::swap(current, next);
    }

    result.samples.variant = variant;
    result.samples.m = m;
    result.samples.lambda = lambda;
    result.samples.depth = n_iters;
    result.samples.seed = seed;
    result.samples.anchor = anchor;
    result.samples.samples = std::move(current);
    summarize(result.samples);
    const double q = contraction_q(m, lambda);
    const double gain = variance_gain(variant, m, lambda) * std::norm(anchor);
    result.samples.predicted_variance_limit = gain / (1.0 - 2.0 * q);
    double v = 0.0;
    for (int d = 0; d < n_iters; ++d) v = 2.0 * q * v + gain;
    result.samples.predicted_variance_at_depth = v;
    return result;
}

std::vector<ExpMomentRow> exp_moment_check(const WSampleSet& samples,
                                           const std::vector<Complex>& t_grid,
                                           double C, double eps) {
    if (samples.samples.empty()) throw std::invalid_argument("exp_moment_check: no samples");
    std::vector<ExpMomentRow> rows;
    rows.reserve(t_grid.size());
    const double n = static_cast<double>(samples.samples.size());
    const double dm = static_cast<double>(samples.m);
    for (const Complex& t : t_grid) {
        if (std::abs(t) > eps + 1e-15) {
            throw std::invalid_argument("exp_moment_check: |t| exceeds the configured epsilon");
        }
        ExpMomentRow row;
        row.t = t;
        double s = 0.0, s2 = 0.0, sa = 0.0;
        for (const Complex& w : samples.samples) {
            // real pairing <t, w> = Re(conj(t) w)
            const double e = std::exp((std::conj(t) * w).real());
            s += e;
            s2 += e * e;
            sa += std::exp(std::abs(t * w));
        }
        row.empirical = s / n;
        row.std_error = std::sqrt(std::max(0.0, s2 / n - row.empirical * row.empirical) / n);
        row.bound = std::exp(dm * t.real() + C * std::norm(t));
        row.flagged = row.empirical > row.bound + 3.0 * row.std_error;
        row.empirical_abs = sa / n;
        row.bound_abs = 4.0 * std::exp(dm * std::abs(t) + 2.0 * C * std::norm(t));
        row.flagged_abs = row.empirical_abs > row.bound_abs;
        rows.push_back(row);
    }
    return rows;
}

} // namespace bfringe
