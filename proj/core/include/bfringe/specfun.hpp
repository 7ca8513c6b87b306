#ifndef BFRINGE_SPECFUN_HPP
#define BFRINGE_SPECFUN_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace bfringe {

using Complex = std::complex<double>;

/// Principal branch of log Gamma for complex argument (Lanczos).
Complex log_gamma(Complex z);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

/// Complement of the Kolmogorov distribution, Q(t) = P(sup|B| > t).
double kolmogorov_q(double t);

/// Critical Kolmogorov-Smirnov distance at level alpha for n samples
/// (asymptotic law), i.e. the d with P(D_n > d) ~= alpha.
double ks_critical(double alpha, std::size_t n);

/// Two-sided KS distance of `samples` against the CDF values provided by
/// `cdf` evaluated at each sample (samples need not be sorted).
double ks_distance(std::vector<double> samples, double (*cdf)(double, double), double param);

} // namespace bfringe

#endif
