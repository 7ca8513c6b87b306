#include <bfringe/transport.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bfringe {

double assignment_cost(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    if (n == 0) return 0.0;
    for (const auto& row : cost) {
        if (row.size() != n) throw std::invalid_argument("assignment_cost: matrix not square");
    }
    const double inf = std::numeric_limits<double>::infinity();
    // potentials over rows/columns, matching stored per column (1-based pad)
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        std::vector<std::size_t> way(n + 1, 0);
        std::size_t j0 = 0;
        match[0] = i;
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        // augment along the path
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        if (match[j] != 0) total += cost[match[j] - 1][j - 1];
    }
    return total;
}

double wasserstein2(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("wasserstein2: size mismatch");
    if (a.empty()) return 0.0;
    const std::size_t n = a.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cost[i][j] = std::norm(a[i] - b[j]);
        }
    }
    return std::sqrt(assignment_cost(cost) / static_cast<double>(n));
}

std::vector<Complex> subsample(const std::vector<Complex>& points, std::size_t k,
                               Xoshiro256pp& rng) {
    if (points.size() <= k) return points;
    std::vector<Complex> out;
    out.reserve(k);
    // reservoir sampling keeps the pass deterministic and single-scan
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (out.size() < k) {
            out.push_back(points[i]);
        } else {
            const std::uint64_t j = uniform_below(rng, i + 1);
            if (j < k) out[static_cast<std::size_t>(j)] = points[i];
        }
    }
    return out;
}

} // namespace bfringe
