#pragma once

#include "aea/errors.hpp"

namespace aea {

/// P{||h_b||^2 > mu} for a Gamma(n,1) gain: e^-mu * sum_{k<n} mu^k / k!.
/// Evaluated with the Poisson-term recursion so no factorial or power ever
/// overflows (every term is a Poisson pmf value <= 1).
double transmission_probability(int n, double mu);

struct ThresholdSolution {
    double mu = 0.0;
    double achieved_pt = 1.0;
    int iterations = 0;
    double residual = 0.0;  ///< |p_t(mu) - delta|
};

/// Bisection inverse of transmission_probability in mu; the map is strictly
/// decreasing so the solution is unique. delta = 1 returns mu = 0 exactly.
/// Throws ToleranceError if the residual tolerance cannot be met within the
/// iteration cap (200).
ThresholdSolution solve_threshold(int n, double delta, double tol = 1e-11);

}  // namespace aea
