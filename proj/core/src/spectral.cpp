#include <bfringe/spectral.hpp>

#include <bfringe/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bfringe {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNewtonTol = 1e-13;
constexpr int kNewtonMaxIter = 200;
constexpr double kDedupDistance = 1e-6;

void require_m(int m) {
    if (m < 2) throw std::invalid_argument("spectral: m must be >= 2");
}

// log of the normalized characteristic product, principal logs per factor:
// sum_k [Log(x+k) - log(k+1)], k = m..2m-1. Zero mod 2*pi*i at the roots.
Complex log_char(int m, Complex x) {
    Complex s = 0.0;
    for (int k = m; k <= 2 * m - 1; ++k) {
        s += std::log(x + static_cast<double>(k)) - std::log(static_cast<double>(k + 1));
    }
    return s;
}

Complex log_char_derivative(int m, Complex x) {
    Complex s = 0.0;
    for (int k = m; k <= 2 * m - 1; ++k) s += 1.0 / (x + static_cast<double>(k));
    return s;
}

// Damped Newton on log_char(x) = 2*pi*i*j. Returns the converged root or
// throws numeric_error naming the branch.
Complex newton_branch(int m, int j, Complex x0) {
    const Complex target(0.0, 2.0 * kPi * j);
    // Floor for the achievable |chi| given the rounding noise of a product
    // of 2m factors.
    const double tol = std::max(kNewtonTol, 2e-15 * m);
    Complex x = x0;
    double best = std::abs(char_poly_eval(m, x));
    for (int it = 0; it < kNewtonMaxIter; ++it) {
        if (best < tol) return x;
        const Complex g = log_char(m, x) - target;
        const Complex gp = log_char_derivative(m, x);
        if (std::abs(gp) == 0.0) break;
        Complex step = g / gp;
        // Step halving keeps iterates from tunnelling across the log branch
        // cuts near the pole cluster.
        for (int h = 0; h < 50; ++h) {
            const Complex cand = x - step;
            const double val = std::abs(char_poly_eval(m, cand));
            if (val < best || h == 49) {
                x = cand;
                best = val;
                break;
            }
            step *= 0.5;
        }
    }
    if (best < tol) return x;
    throw numeric_error("spectral: Newton failed on branch " + std::to_string(j) +
                        " for m = " + std::to_string(m));
}

// Quadratic-corrected first-order seed for branch j: solves
// S1*x - S2*x^2/2 = log 2 + 2*pi*i*j in closed form.
Complex branch_seed(int m, int j) {
    double s1 = 0.0, s2 = 0.0;
    for (int k = m; k <= 2 * m - 1; ++k) {
        s1 += 1.0 / k;
        s2 += 1.0 / (static_cast<double>(k) * k);
    }
    const Complex rhs(std::log(2.0), 2.0 * kPi * j);
    const Complex disc = std::sqrt(Complex(s1 * s1) - 2.0 * s2 * rhs);
    const Complex root1 = (Complex(s1) - disc) / s2;
    const Complex root2 = (Complex(s1) + disc) / s2;
    const Complex linear = rhs / s1;
    return std::abs(root1 - linear) < std::abs(root2 - linear) ? root1 : root2;
}

Complex solve_branch(int m, int j, const std::vector<Complex>& hints,
                     const std::vector<Complex>& taken = {}) {
    std::vector<Complex> seeds = hints;
    seeds.push_back(branch_seed(m, j));
    if (j == 1) seeds.insert(seeds.begin(), Complex(0.5, 9.0));
    seeds.push_back(Complex(1.0, 2.0 * kPi * j / std::log(2.0)));
    for (const Complex& s : seeds) {
        try {
            Complex r = newton_branch(m, j, s);
            if (r.imag() < 0.0) r = std::conj(r);
            bool fresh = true;
            for (const Complex& t : taken) {
                if (std::abs(r - t) < kDedupDistance) { fresh = false; break; }
            }
            if (fresh) return r;
        } catch (const numeric_error&) {
            // try next seed
        }
    }
    throw numeric_error("spectral: all seeds failed on branch " + std::to_string(j) +
                        " for m = " + std::to_string(m));
}

// Far-left real root (present for even m): the unique x < -(2m-1) with
// prod(x+k) = (2m)!/m!. Solved by bisection on t = -x.
double far_real_root(int m) {
    auto f = [m](double t) {
        double s = 0.0;
        for (int k = m; k <= 2 * m - 1; ++k) {
            s += std::log(t - static_cast<double>(k)) - std::log(static_cast<double>(k + 1));
        }
        return s;
    };
    double lo = 2.0 * m - 1.0 + 1e-12;
    double hi = 4.0 * m + 2.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid; else hi = mid;
    }
    return -0.5 * (lo + hi);
}

std::vector<Complex> all_roots(int m) {
    std::vector<Complex> roots;
    roots.emplace_back(1.0, 0.0);

    const int pairs = (m - 1) / 2;
    std::vector<Complex> uppers;
    for (int j = 1; j <= pairs; ++j) {
        std::vector<Complex> hints;
        if (uppers.size() >= 2) {
            hints.push_back(2.0 * uppers.back() - uppers[uppers.size() - 2]);
        } else if (uppers.size() == 1) {
            hints.push_back(uppers.back() + Complex(0.0, 2.0 * kPi / std::log(2.0)));
        }
        Complex r = solve_branch(m, j, hints, uppers);
        uppers.push_back(r);
        roots.push_back(r);
        roots.push_back(std::conj(r));
    }
    if (m % 2 == 0) roots.push_back(Complex(far_real_root(m), 0.0));

    // dedup guard
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (std::abs(roots[i] - roots[j]) < kDedupDistance) {
                throw numeric_error("spectral: duplicate root detected for m = " +
                                    std::to_string(m));
            }
        }
    }
    if (static_cast<int>(roots.size()) != m) {
        throw numeric_error("spectral: root count mismatch for m = " + std::to_string(m));
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return roots;
}

} // namespace

Complex char_poly_eval(int m, Complex x) {
    require_m(m);
    Complex prod = 1.0;
    for (int k = m; k <= 2 * m - 1; ++k) {
        prod *= (x + static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    return prod - 1.0;
}

Complex branch_root(int m, int j) {
    require_m(m);
    if (j < 1 || j > (m - 1) / 2) {
        throw std::invalid_argument("branch_root: branch index out of range");
    }
    std::vector<Complex> hints;
    if (j >= 2) {
        // walk the branch curve from below for a good seed
        Complex prev2 = Complex(1.0, 0.0);
        Complex prev = solve_branch(m, 1, {});
        for (int i = 2; i <= j; ++i) {
            Complex seed = 2.0 * prev - prev2;
            Complex r = solve_branch(m, i, {seed});
            prev2 = prev;
            prev = r;
        }
        return prev;
    }
    return solve_branch(m, j, hints);
}

Complex lambda2_root(int m) {
    require_m(m);
    if (m < 3) {
        throw std::invalid_argument("lambda2_root: no nonreal root exists for m = 2");
    }
    return branch_root(m, 1);
}

std::pair<std::vector<Complex>, std::vector<Complex>> eigen_data(int m, Complex lambda) {
    require_m(m);
    if (std::abs(char_poly_eval(m, lambda)) >= 1e-8) {
        throw std::invalid_argument("eigen_data: lambda is not a root");
    }
    // v(lambda): prefactor 1 / ((m+lambda) * sum_{j=m}^{2m-1} 1/(lambda+j)),
    // coordinates as running products of (m+j)/(m+j+lambda).
    Complex h = 0.0;
    for (int j = m; j <= 2 * m - 1; ++j) h += 1.0 / (lambda + static_cast<double>(j));
    const Complex pref = 1.0 / ((static_cast<double>(m) + lambda) * h);

    std::vector<Complex> v(static_cast<std::size_t>(m));
    Complex running = 1.0;
    for (int k = 1; k <= m; ++k) {
        v[static_cast<std::size_t>(k - 1)] = pref * running;
        running *= static_cast<double>(m + k) / (static_cast<double>(m + k) + lambda);
    }

    // u(lambda) coefficients: running products of (lambda+m+j)/(1+m+j).
    std::vector<Complex> u(static_cast<std::size_t>(m));
    running = 1.0;
    for (int k = 1; k <= m; ++k) {
        u[static_cast<std::size_t>(k - 1)] = running;
        running *= (lambda + static_cast<double>(m + k - 1)) / static_cast<double>(m + k);
    }
    return {std::move(v), std::move(u)};
}

SpectrumBundle compute_spectrum(int m) {
    require_m(m);
    SpectrumBundle b;
    b.m = m;
    b.roots = all_roots(m);

    // lambda2: largest real part among roots with positive imaginary part.
    // m = 2 has none; fall back to the real second root.
    const Complex* best = nullptr;
    for (const auto& r : b.roots) {
        if (r.imag() > 1e-9 && (best == nullptr || r.real() > best->real())) best = &r;
    }
    if (best != nullptr) {
        b.lambda2 = *best;
    } else {
        b.lambda2 = b.roots.at(1);
    }
    b.sigma2 = b.lambda2.real();
    b.tau2 = b.lambda2.imag();

    // sigma3: third largest distinct real part.
    std::vector<double> res;
    for (const auto& r : b.roots) {
        bool seen = false;
        for (double x : res) {
            if (std::abs(x - r.real()) < 1e-9) { seen = true; break; }
        }
        if (!seen) res.push_back(r.real());
    }
    std::sort(res.begin(), res.end(), std::greater<>());
    b.sigma3 = res.size() >= 3 ? res[2] : std::numeric_limits<double>::quiet_NaN();

    b.eigvecs.reserve(b.roots.size());
    b.eigforms.reserve(b.roots.size());
    for (const auto& r : b.roots) {
        auto [v, u] = eigen_data(m, r);
        b.eigvecs.push_back(std::move(v));
        b.eigforms.push_back(std::move(u));
    }

    b.v1.resize(static_cast<std::size_t>(m));
    double hm = 0.0;
    for (int k = 1; k <= m; ++k) hm += 1.0 / static_cast<double>(m + k);
    for (int k = 1; k <= m; ++k) {
        b.v1[static_cast<std::size_t>(k - 1)] = 1.0 / (hm * static_cast<double>(m + k));
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < b.roots.size(); ++i) {
        for (std::size_t j = 0; j < b.roots.size(); ++j) {
            Complex dot = 0.0;
            for (int k = 0; k < m; ++k) {
                dot += b.eigforms[i][static_cast<std::size_t>(k)] *
                       b.eigvecs[j][static_cast<std::size_t>(k)];
            }
            const double delta = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot - delta));
        }
    }
    b.max_dual_residual = worst;
    return b;
}

Complex beta_moment(int m, Complex s) {
    require_m(m);
    if (s.real() <= -static_cast<double>(m)) {
        throw std::invalid_argument("beta_moment: need Re(s) > -m");
    }
    // 2 E(B^s) = (m+1)(m+2)...(2m) / ((m+s)...(2m-1+s)), already carrying
    // the factor 2 through (2m)!/m! = 2 * (2m-1)!/(m-1)!.
    Complex prod = 1.0;
    for (int k = m; k <= 2 * m - 1; ++k) {
        const Complex denom = s + static_cast<double>(k);
        if (std::abs(denom) < 1e-12) {
            throw std::invalid_argument("beta_moment: pole at s = -" + std::to_string(k));
        }
        prod *= static_cast<double>(k + 1) / denom;
    }
    return prod;
}

Complex beta_moment_gamma_route(int m, Complex s) {
    require_m(m);
    const double dm = static_cast<double>(m);
    const Complex lg = log_gamma(s + dm) + log_gamma(Complex(2.0 * dm)) -
                       log_gamma(Complex(dm)) - log_gamma(s + 2.0 * dm);
    return 2.0 * std::exp(lg);
}

std::pair<double, double> expansion_sigma_tau(int m) {
    require_m(m);
    const double l2 = std::log(2.0);
    const double sigma = 1.0 - kPi * kPi / (l2 * l2 * l2) / static_cast<double>(m);
    const double tau = 2.0 * kPi / l2 + kPi / (2.0 * l2 * l2) / static_cast<double>(m);
    return {sigma, tau};
}

Complex apply_form(const std::vector<Complex>& form_coeffs, const CompositionVector& x) {
    if (form_coeffs.size() != x.size()) {
        throw std::invalid_argument("apply_form: dimension mismatch");
    }
    Complex s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += form_coeffs[k] * static_cast<double>(x[k]);
    }
    return s;
}

Complex apply_form(const std::vector<Complex>& form_coeffs, const std::vector<Complex>& x) {
    if (form_coeffs.size() != x.size()) {
        throw std::invalid_argument("apply_form: dimension mismatch");
    }
    Complex s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += form_coeffs[k] * x[k];
    return s;
}

} // namespace bfringe
