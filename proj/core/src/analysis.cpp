#include <bfringe/analysis.hpp>

#include <bfringe/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bfringe {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

ProjectionSeries project_W(const Trajectory& trajectory, const SpectrumBundle& spectrum) {
    if (trajectory.rule.algorithm != Algorithm::optimistic) {
        throw std::invalid_argument("project_W: trajectory must use the optimistic rule");
    }
    if (trajectory.rule.m != spectrum.m) {
        throw std::invalid_argument("project_W: m mismatch between trajectory and spectrum");
    }
    // u2 coefficients for lambda2
    auto eig = eigen_data(spectrum.m, spectrum.lambda2);
    const auto& u2 = eig.second;

    ProjectionSeries s;
    s.m = spectrum.m;
    s.lambda2 = spectrum.lambda2;
    for (std::size_t i = 0; i < trajectory.record_n.size(); ++i) {
        const std::int64_t n = trajectory.record_n[i];
        if (n < 1) continue;
        const auto& g = trajectory.record_gaps[i];
        const Complex un = apply_form(u2, g);
        const double logn = std::log(static_cast<double>(n));
        s.n.push_back(n);
        s.w.push_back(std::exp(-spectrum.lambda2 * logn) * un);
        double err = 0.0;
        for (int k = 0; k < spectrum.m; ++k) {
            const double coord = static_cast<double>(g[static_cast<std::size_t>(k)]) /
                                 static_cast<double>(n);
            err = std::max(err, std::fabs(coord - spectrum.v1[static_cast<std::size_t>(k)]));
        }
        s.drift_error.push_back(err);
    }
    return s;
}

OscillationFit oscillation_fit(const ProjectionSeries& series) {
    if (series.m <= 59) {
        throw phase_error("oscillation_fit: only the large phase (m >= 60) oscillates");
    }
    if (series.n.empty() || series.n.back() < 100000) {
        throw std::invalid_argument("oscillation_fit: series too short (final n < 1e5)");
    }
    const double tau2 = series.lambda2.imag();
    const std::int64_t n_final = series.n.back();
    const std::int64_t n_lo = n_final / 10;

    // x(n) = 2 Re(n^{i tau2} W_n) ~ rho cos(tau2 log n + phi); fit against
    // the cos/sin pair by 2x2 normal equations.
    double scc = 0.0, sss = 0.0, scs = 0.0, sxc = 0.0, sxs = 0.0;
    std::vector<double> theta, xs;
    for (std::size_t i = 0; i < series.n.size(); ++i) {
        if (series.n[i] < n_lo) continue;
        const double logn = std::log(static_cast<double>(series.n[i]));
        const double x = 2.0 * (std::exp(Complex(0.0, tau2 * logn)) * series.w[i]).real();
        const double c = std::cos(tau2 * logn);
        const double s = std::sin(tau2 * logn);
        scc += c * c;
        sss += s * s;
        scs += c * s;
        sxc += x * c;
        sxs += x * s;
        theta.push_back(logn);
        xs.push_back(x);
    }
    if (theta.size() < 8) {
        throw std::invalid_argument("oscillation_fit: need at least 8 points in the last decade");
    }
    const double det = scc * sss - scs * scs;
    if (std::fabs(det) < 1e-12 * (scc + sss)) {
        throw numeric_error("oscillation_fit: degenerate regressors");
    }
    const double a = (sxc * sss - sxs * scs) / det;
    const double b = (sxs * scc - sxc * scs) / det;

    OscillationFit fit;
    fit.rho = std::hypot(a, b);
    fit.phi = std::atan2(-b, a);
    if (fit.phi < 0.0) fit.phi += kTwoPi;
    double sq = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double model = a * std::cos(series.lambda2.imag() * theta[i]) +
                             b * std::sin(series.lambda2.imag() * theta[i]);
        sq += (xs[i] - model) * (xs[i] - model);
    }
    const double rms = std::sqrt(sq / static_cast<double>(theta.size()));
    fit.residual = fit.rho > 0.0 ? rms / fit.rho : std::numeric_limits<double>::infinity();
    return fit;
}

GaussianDiagnostic gaussian_diagnostic(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < 500) {
        throw std::invalid_argument("gaussian_diagnostic: need at least 500 samples");
    }
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);

    GaussianDiagnostic g;
    g.skewness = m3 / std::pow(m2, 1.5);
    g.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    const double se_skew = std::sqrt(6.0 / static_cast<double>(n));
    const double se_kurt = std::sqrt(24.0 / static_cast<double>(n));
    g.pass = std::fabs(g.skewness) < 4.0 * se_skew && std::fabs(g.excess_kurtosis) < 4.0 * se_kurt;
    return g;
}

} // namespace bfringe
