#pragma once

#include <cmath>
#include <cstddef>

namespace relaynet {

struct Proportion {
    std::size_t trials = 0;
    std::size_t hits = 0;
    double p_hat = 0.0;
    double sigma = 0.0; // binomial standard error at p_hat
    double ci_low = 0.0;
    double ci_high = 0.0;
};

// Wilson score interval; z = 1.96 gives 95%.
inline Proportion proportion(std::size_t hits, std::size_t trials, double z = 1.96) {
    Proportion r;
    r.trials = trials;
    r.hits = hits;
    if (trials == 0) return r;
    double n = static_cast<double>(trials);
    double p = static_cast<double>(hits) / n;
    r.p_hat = p;
    r.sigma = std::sqrt(p * (1 - p) / n);
    double den = 1 + z * z / n;
    double mid = (p + z * z / (2 * n)) / den;
    double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / den;
    r.ci_low = std::max(0.0, mid - half);
    r.ci_high = std::min(1.0, mid + half);
    return r;
}

inline double binomial_sigma(double p, std::size_t trials) {
    return trials ? std::sqrt(p * (1 - p) / static_cast<double>(trials)) : 0.0;
}

} // namespace relaynet
