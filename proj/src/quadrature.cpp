#include "aea/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "aea/reliability.hpp"
#include "aea/rng.hpp"

namespace aea {

namespace {

// (G7, K15) nodes and weights on [-1, 1]; xk[7] = 0 is the center.
constexpr double xk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
constexpr double wk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
constexpr double wg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = wk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xk[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        kronrod += wk[i] * (f1 + f2);
        if (i % 2 == 1) gauss += wg[(i - 1) / 2] * (f1 + f2);
    }
    return {a, b, kronrod * h, std::abs(kronrod - gauss) * h};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double rel_tol, double abs_tol,
                              int max_subdivisions) {
    if (!(b >= a)) throw QuadratureError("inverted integration interval");
    std::priority_queue<Interval> q;
    q.push(gk15(f, a, b));
    double total = q.top().value;
    double err = q.top().error;
    int subdivisions = 0;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (subdivisions >= max_subdivisions)
            throw QuadratureError("quadrature failed to converge");
        const Interval worst = q.top();
        q.pop();
        total -= worst.value;
        err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const Interval& half :
             {gk15(f, worst.a, mid), gk15(f, mid, worst.b)}) {
            total += half.value;
            err += half.error;
            q.push(half);
        }
        ++subdivisions;
    }
    return {total, err, subdivisions};
}

double gamma_pdf(int n, double x) {
    if (x <= 0.0) return 0.0;
    if (n == 1) return std::exp(-x);
    return std::exp((n - 1) * std::log(x) - x - std::lgamma(n));
}

QuadResult truncated_gamma_expectation(int n, double mu,
                                       const std::function<double(double)>& f,
                                       double rel_tol) {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (!(mu >= 0.0)) throw NegativeInputError("mu must be >= 0");
    const double tail = transmission_probability(n, mu);
    if (!(tail > 0.0))
        throw QuadratureError("no probability mass above threshold");

    // Conditional mass beyond mu + span is negligible against the tail
    // (Gamma(n,1) is concentrated within n + O(sqrt(n)) of the origin).
    const double span =
        12.0 * std::sqrt(static_cast<double>(n)) + 50.0 +
        std::max(0.0, static_cast<double>(n) - mu);
    QuadResult q = integrate_adaptive(
        [&](double t) {
            const double g = mu + t;
            return f(g) * gamma_pdf(n, g);
        },
        0.0, span, rel_tol);
    q.value /= tail;
    q.abs_error /= tail;
    return q;
}

double truncated_gamma_mc_mean(int n, double mu,
                               const std::function<double(double)>& f,
                               std::uint64_t samples, std::uint64_t seed,
                               double* se_out) {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (samples == 0) throw ConfigError("samples must be >= 1");
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        CounterRng rng(seed, i);
        double g;
        do {
            g = 0.0;
            for (int k = 0; k < n; ++k) g -= std::log(rng.uniform());
        } while (g <= mu);
        const double v = f(g);
        sum += v;
        sumsq += v * v;
    }
    const double m = static_cast<double>(samples);
    const double mean = sum / m;
    if (se_out) {
        const double var = std::max(0.0, (sumsq - m * mean * mean) / (m - 1.0));
        *se_out = std::sqrt(var / m);
    }
    return mean;
}

}  // namespace aea
