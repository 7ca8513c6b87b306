#ifndef BFRINGE_SPECTRAL_HPP
#define BFRINGE_SPECTRAL_HPP

#include <bfringe/replacement.hpp>
#include <bfringe/specfun.hpp>

#include <complex>
#include <utility>
#include <vector>

namespace bfringe {

/// Spectral data of the optimistic replacement matrix for one value of m.
/// Roots are sorted by decreasing real part, a positive imaginary part
/// listed before its conjugate. Eigen data is aligned with `roots`.
struct SpectrumBundle {
    int m = 0;
    std::vector<Complex> roots;
    Complex lambda2;       // second largest real part, positive imaginary part;
                           // for m == 2 no nonreal root exists and lambda2
                           // degenerates to the real root (tau2 == 0)
    double sigma2 = 0.0;
    double tau2 = 0.0;
    double sigma3 = 0.0;   // third largest distinct real part; NaN when absent
    std::vector<std::vector<Complex>> eigvecs;   // v(lambda), transposed-matrix eigenvectors
    std::vector<std::vector<Complex>> eigforms;  // coefficients of the eigenforms u(lambda)
    std::vector<double> v1;                      // positive, sums to 1
    double max_dual_residual = 0.0;              // max |u(l)(v(mu)) - delta|
};

/// Normalized characteristic value: prod_{k=m}^{2m-1} (x+k)/(k+1) - 1.
/// Same roots as the characteristic polynomial, overflow-free up to m ~ 300.
Complex char_poly_eval(int m, Complex x);

/// The root with the second largest real part and positive imaginary part
/// (Newton on the branch equation, seeded at 0.5 + 9.0i). Requires m >= 3;
/// for m == 2 there is no nonreal root.
Complex lambda2_root(int m);

/// Root of the j-th upper-half-plane branch (j >= 1). Used by the spectrum
/// sweep; branch 1 is lambda2, branch 2 carries sigma3 for large m.
Complex branch_root(int m, int j);

/// All m roots plus eigen data and duality residuals.
SpectrumBundle compute_spectrum(int m);

/// Eigenvector v(lambda) of the transposed matrix and the coefficients of
/// the eigenform u(lambda), built from their closed forms. Throws
/// std::invalid_argument when lambda is not a root (|chi| >= 1e-8).
std::pair<std::vector<Complex>, std::vector<Complex>> eigen_data(int m, Complex lambda);

/// 2 E(B^s) for B ~ Beta(m, m), via the product form
/// prod_{k=m}^{2m-1} (k+1)/(k+s). Requires Re(s) > -m.
Complex beta_moment(int m, Complex s);

/// Same quantity through log-gamma ratios; used as an independent route.
Complex beta_moment_gamma_route(int m, Complex s);

/// First-order 1/m expansions of sigma2 and tau2.
std::pair<double, double> expansion_sigma_tau(int m);

/// u(lambda) applied to an integer composition.
Complex apply_form(const std::vector<Complex>& form_coeffs, const CompositionVector& x);

/// u(lambda) applied to a complex vector.
Complex apply_form(const std::vector<Complex>& form_coeffs, const std::vector<Complex>& x);

} // namespace bfringe

#endif
