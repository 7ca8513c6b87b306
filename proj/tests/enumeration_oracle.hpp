#ifndef BFRINGE_TESTS_ENUMERATION_ORACLE_HPP
#define BFRINGE_TESTS_ENUMERATION_ORACLE_HPP

// Test-only oracle: exhaustive enumeration of the urn's k-step distribution.
// Walks every branch of the transition tree with exact rational-in-double
// probabilities; independent of the sampling path in the library.

#include <bfringe/replacement.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace bfringe::testing {

using Distribution = std::map<CompositionVector, double>;

inline Distribution enumerate_steps(const ReplacementRule& rule,
                                    const CompositionVector& initial, int steps) {
    Distribution current{{initial, 1.0}};
    for (int s = 0; s < steps; ++s) {
        Distribution next;
        for (const auto& [gaps, prob] : current) {
            const double total = static_cast<double>(
                std::accumulate(gaps.begin(), gaps.end(), std::int64_t{0}));
            for (int k = 0; k < rule.dim; ++k) {
                if (gaps[static_cast<std::size_t>(k)] == 0) continue;
                const double p =
                    prob * static_cast<double>(gaps[static_cast<std::size_t>(k)]) / total;
                CompositionVector g = gaps;
                for (int j = 0; j < rule.dim; ++j) {
                    g[static_cast<std::size_t>(j)] += rule.rows[static_cast<std::size_t>(k)]
                                                               [static_cast<std::size_t>(j)];
                }
                next[g] += p;
            }
        }
        current = std::move(next);
    }
    return current;
}

} // namespace bfringe::testing

#endif
