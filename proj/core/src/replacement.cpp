#include <bfringe/replacement.hpp>

#include <numeric>
#include <stdexcept>

namespace bfringe {

std::string to_string(Algorithm a) {
    return a == Algorithm::optimistic ? "optimistic" : "prudent";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "optimistic") return Algorithm::optimistic;
    if (s == "prudent") return Algorithm::prudent;
    throw std::invalid_argument("unknown algorithm: " + s);
}

ReplacementRule make_rule(int m, Algorithm algorithm) {
    if (m < 2) throw std::invalid_argument("make_rule: m must be >= 2");

    ReplacementRule rule;
    rule.m = m;
    rule.algorithm = algorithm;
    rule.dim = (algorithm == Algorithm::optimistic) ? m : m + 1;
    const int d = rule.dim;

    // A fringe node of type k owns m+k-1 gaps; types run 1..dim
    // (0-based index k holds m+k).
    rule.gap_diag.resize(d);
    for (int k = 0; k < d; ++k) rule.gap_diag[k] = m + k;

    // Increment vectors: type k -> type k+1 for k < dim, and the last type
    // splits into two type-1 nodes (optimistic) or one type-1 plus one
    // type-2 node (prudent).
    rule.increments.assign(d, std::vector<std::int64_t>(d, 0));
    for (int k = 0; k + 1 < d; ++k) {
        rule.increments[k][k] = -1;
        rule.increments[k][k + 1] = 1;
    }
    if (algorithm == Algorithm::optimistic) {
        rule.increments[d - 1][0] = 2;
        rule.increments[d - 1][d - 1] += -1;
    } else {
        rule.increments[d - 1][0] = 1;
        rule.increments[d - 1][1] += 1;
        rule.increments[d - 1][d - 1] += -1;
    }

    // Gap-process rows: row k = gap_diag applied to w_k.
    rule.rows.assign(d, std::vector<std::int64_t>(d, 0));
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) {
            rule.rows[k][j] = rule.gap_diag[j] * rule.increments[k][j];
        }
    }
    rule.balance = std::accumulate(rule.rows[0].begin(), rule.rows[0].end(), std::int64_t{0});

    validate_rule(rule);
    return rule;
}

void validate_rule(const ReplacementRule& rule) {
    const int d = rule.dim;
    if (d <= 0 || static_cast<int>(rule.rows.size()) != d) {
        throw std::logic_error("rule invariant: dimension mismatch");
    }
    if (rule.balance != 1) throw std::logic_error("rule invariant: balance != 1");
    for (int k = 0; k < d; ++k) {
        std::int64_t sum = 0;
        for (int j = 0; j < d; ++j) {
            sum += rule.rows[k][j];
            if (rule.rows[k][j] != rule.gap_diag[j] * rule.increments[k][j]) {
                throw std::logic_error("rule invariant: rows != gap_diag * w_k");
            }
            if (j == k && rule.rows[k][j] >= 0) {
                throw std::logic_error("rule invariant: diagonal entry not negative");
            }
            if (j != k && rule.rows[k][j] < 0) {
                throw std::logic_error("rule invariant: negative off-diagonal entry");
            }
        }
        if (sum != rule.balance) throw std::logic_error("rule invariant: unbalanced row");
    }
    // Tenability precondition: every entry of column j is a multiple of
    // the absolute diagonal entry |a_jj|.
    for (int j = 0; j < d; ++j) {
        const std::int64_t q = -rule.rows[j][j];
        if (q <= 0) throw std::logic_error("rule invariant: diagonal sign");
        for (int k = 0; k < d; ++k) {
            if (rule.rows[k][j] % q != 0) {
                throw std::logic_error("rule invariant: column divisibility");
            }
        }
    }
}

bool check_tenable(const ReplacementRule& rule, const CompositionVector& initial) {
    if (static_cast<int>(initial.size()) != rule.dim) {
        throw std::invalid_argument("check_tenable: dimension mismatch");
    }
    bool all_zero = true;
    for (auto v : initial) {
        if (v < 0) throw std::invalid_argument("check_tenable: negative entry");
        if (v != 0) all_zero = false;
    }
    if (all_zero) throw std::invalid_argument("check_tenable: empty urn");
    for (int k = 0; k < rule.dim; ++k) {
        const std::int64_t q = -rule.rows[k][k];
        if (initial[k] % q != 0) return false;
    }
    return true;
}

} // namespace bfringe
