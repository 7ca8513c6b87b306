#ifndef BFRINGE_TRANSPORT_HPP
#define BFRINGE_TRANSPORT_HPP

#include <bfringe/rng.hpp>
#include <bfringe/specfun.hpp>

#include <vector>

namespace bfringe {

/// Exact minimum-cost assignment value for a square cost matrix
/// (Jonker-Volgenant style shortest augmenting paths, O(n^3)).
double assignment_cost(const std::vector<std::vector<double>>& cost);

/// Empirical 2-Wasserstein distance between two equal-size point sets in
/// the complex plane, via exact assignment on squared distances.
double wasserstein2(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Deterministic uniform subsample of size at most k.
std::vector<Complex> subsample(const std::vector<Complex>& points, std::size_t k,
                               Xoshiro256pp& rng);

} // namespace bfringe

#endif
