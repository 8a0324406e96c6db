#pragma once

#include <functional>

#include "aea/errors.hpp"

namespace aea {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  ///< accumulated error estimate
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b]. The worst
/// interval is bisected until the accumulated error estimate satisfies
/// max(abs_tol, rel_tol*|I|). Throws QuadratureError when the subdivision
/// cap is exhausted first.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double rel_tol = 1e-10,
                              double abs_tol = 0.0, int max_subdivisions = 2000);

/// Gamma(n,1) density.
double gamma_pdf(int n, double x);

/// Conditional expectation E[f(g) | g > mu] for g ~ Gamma(n,1), computed by
/// adaptive quadrature over the shifted variable t = g - mu against the
/// truncated density. The normalizer is the exact finite-sum tail
/// probability, not a second quadrature.
QuadResult truncated_gamma_expectation(int n, double mu,
                                       const std::function<double(double)>& f,
                                       double rel_tol = 1e-8);

/// Monte Carlo route for the same conditional expectation (gamma variates by
/// sums of exponentials, rejection below mu). Deterministic given the seed;
/// se_out receives the standard error of the mean when non-null.
double truncated_gamma_mc_mean(int n, double mu,
                               const std::function<double(double)>& f,
                               std::uint64_t samples, std::uint64_t seed,
                               double* se_out = nullptr);

}  // namespace aea
