#ifndef BFRINGE_ANALYSIS_HPP
#define BFRINGE_ANALYSIS_HPP

#include <bfringe/spectral.hpp>
#include <bfringe/urn.hpp>

#include <cstdint>
#include <vector>

namespace bfringe {

/// Projection of a gap trajectory along the second spectral direction:
/// w[i] = u2(G_n) / n^{lambda2} at n = n[i], plus the sup-norm drift error
/// of G_n/n against v1 at the same indices. Entries start at n >= 1.
struct ProjectionSeries {
    int m = 0;
    Complex lambda2;
    std::vector<std::int64_t> n;
    std::vector<Complex> w;
    std::vector<double> drift_error;
};

/// Computes the series from a recorded trajectory. The trajectory must use
/// the optimistic rule with the same m as the spectrum (throws
/// std::invalid_argument otherwise). Powers of n are taken in log space.
ProjectionSeries project_W(const Trajectory& trajectory, const SpectrumBundle& spectrum);

struct OscillationFit {
    double rho = 0.0;       // fitted amplitude, ~ 2|W|
    double phi = 0.0;       // fitted phase in [0, 2 pi)
    double residual = 0.0;  // RMS misfit relative to rho
};

/// Least-squares fit of 2 Re(n^{i tau2} W_n) against cos/sin(tau2 log n)
/// over the last decade of n. Only meaningful in the large phase: throws
/// phase_error for m <= 59, std::invalid_argument when the series is too
/// short (final n < 1e5).
OscillationFit oscillation_fit(const ProjectionSeries& series);

struct GaussianDiagnostic {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    bool pass = false;
};

/// Moment-based normality gate: pass iff |skewness| and |excess kurtosis|
/// are below 4 standard errors of the normal null. Needs >= 500 samples.
GaussianDiagnostic gaussian_diagnostic(const std::vector<double>& samples);

} // namespace bfringe

#endif
