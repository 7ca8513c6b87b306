#include <doctest.h>

#include <bfringe/replacement.hpp>

#include <numeric>
#include <stdexcept>

using namespace bfringe;

TEST_CASE("optimistic rule for m = 2") {
    const auto r = make_rule(2, Algorithm::optimistic);
    CHECK(r.dim == 2);
    CHECK(r.balance == 1);
    CHECK(r.rows == std::vector<std::vector<std::int64_t>>{{-2, 3}, {4, -3}});
    CHECK(r.gap_diag == std::vector<std::int64_t>{2, 3});
    CHECK(r.increments == std::vector<std::vector<std::int64_t>>{{-1, 1}, {2, -1}});
}

TEST_CASE("prudent rule for m = 2") {
    const auto r = make_rule(2, Algorithm::prudent);
    CHECK(r.dim == 3);
    CHECK(r.rows == std::vector<std::vector<std::int64_t>>{{-2, 3, 0}, {0, -3, 4}, {2, 3, -4}});
    CHECK(r.gap_diag == std::vector<std::int64_t>{2, 3, 4});
}

TEST_CASE("m < 2 is rejected") {
    CHECK_THROWS_AS(make_rule(1, Algorithm::optimistic), std::invalid_argument);
    CHECK_THROWS_AS(make_rule(0, Algorithm::prudent), std::invalid_argument);
}

TEST_CASE("tenability checks") {
    const auto r = make_rule(2, Algorithm::optimistic);
    CHECK(check_tenable(r, {2, 0}));
    CHECK_FALSE(check_tenable(r, {1, 0}));
    CHECK(check_tenable(r, {4, 3}));
    CHECK_THROWS_AS(check_tenable(r, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(check_tenable(r, {2, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(check_tenable(r, {-2, 4}), std::invalid_argument);
}

TEST_CASE("all rules up to m = 300 satisfy the structural invariants") {
    for (int m = 2; m <= 300; ++m) {
        for (auto alg : {Algorithm::optimistic, Algorithm::prudent}) {
            const auto r = make_rule(m, alg);
            CHECK_NOTHROW(validate_rule(r));
            // every row sums to the balance
            for (const auto& row : r.rows) {
                CHECK(std::accumulate(row.begin(), row.end(), std::int64_t{0}) == 1);
            }
            // column divisibility modulus is the per-type gap count m+k-1
            for (int k = 0; k < r.dim; ++k) {
                CHECK(-r.rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] ==
                      static_cast<std::int64_t>(m + k));
                CHECK(r.gap_diag[static_cast<std::size_t>(k)] ==
                      static_cast<std::int64_t>(m + k));
            }
        }
    }
}
