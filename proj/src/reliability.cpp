#include "aea/reliability.hpp"

#include <algorithm>
#include <cmath>

namespace aea {

double transmission_probability(int n, double mu) {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (!(mu >= 0.0)) throw NegativeInputError("mu must be >= 0");
    double term = std::exp(-mu);  // Poisson pmf at k = 0
    double sum = term;
    for (int k = 1; k < n; ++k) {
        term *= mu / k;
        sum += term;
    }
    return std::clamp(sum, 0.0, 1.0);
}

ThresholdSolution solve_threshold(int n, double delta, double tol) {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (!(delta > 0.0 && delta <= 1.0))
        throw ConfigError("delta must be in (0, 1]");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");

    if (delta == 1.0) return {0.0, 1.0, 0, 0.0};

    constexpr int max_iter = 200;
    int iters = 0;

    double lo = 0.0;  // p_t(0) = 1 > delta
    double hi = 1.0;
    while (transmission_probability(n, hi) > delta) {
        hi *= 2.0;
        if (++iters >= max_iter)
            throw ToleranceError("threshold bracket not found");
    }

    while (iters < max_iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-13 * std::max(1.0, mid)) break;
        if (transmission_probability(n, mid) > delta)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }

    ThresholdSolution sol;
    sol.mu = 0.5 * (lo + hi);
    sol.achieved_pt = transmission_probability(n, sol.mu);
    sol.iterations = iters;
    sol.residual = std::abs(sol.achieved_pt - delta);
    if (sol.residual > tol)
        throw ToleranceError("threshold solver residual above tolerance");
    return sol;
}

}  // namespace aea
