#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace relaynet {

enum class LpStatus { Optimal, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double value = 0.0;
    std::vector<double> x;
    std::size_t pivots = 0;
};

// maximize c^T x  subject to  A x <= b, x >= 0, with b >= 0 so the slack basis is feasible.
// Dense tableau, Bland's rule for both entering and leaving variables.
inline LpResult simplex_max(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                            const std::vector<double>& c, double eps = 1e-12) {
    const std::size_t m = A.size(), n = c.size();
    if (b.size() != m) throw ArgumentError("simplex: b has wrong length");
    for (std::size_t i = 0; i < m; ++i) {
        if (A[i].size() != n) throw ArgumentError("simplex: ragged A");
        if (b[i] < 0) throw ArgumentError("simplex: requires b >= 0");
    }
    const std::size_t cols = n + m + 1; // structural, slack, rhs
    std::vector<double> T((m + 1) * cols, 0.0);
    auto at = [&](std::size_t r, std::size_t k) -> double& { return T[r * cols + k]; };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) at(i, j) = A[i][j];
        at(i, n + i) = 1.0;
        at(i, cols - 1) = b[i];
    }
    for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    LpResult res;
    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (at(m, j) < -eps) {
                enter = j;
                break;
            }
        if (enter == cols) break;

        std::size_t leave = m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double a = at(i, enter);
            if (a > eps) {
                double ratio = at(i, cols - 1) / a;
                if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && leave < m && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) {
            res.status = LpStatus::Unbounded;
            return res;
        }

        double piv = at(leave, enter);
        for (std::size_t k = 0; k < cols; ++k) at(leave, k) /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave) continue;
            double f = at(r, enter);
            if (f == 0.0) continue;
            for (std::size_t k = 0; k < cols; ++k) at(r, k) -= f * at(leave, k);
        }
        basis[leave] = enter;
        ++res.pivots;
    }
    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = at(i, cols - 1);
    res.value = at(m, cols - 1);
    return res;
}

} // namespace relaynet
