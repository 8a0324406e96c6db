#pragma once

#include <cmath>
#include <functional>

namespace aea {

struct ScalarMin {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section minimization on [lo, hi]. Returns the best point actually
/// evaluated, so the result is never worse than any probe.
inline ScalarMin golden_section_minimize(const std::function<double(double)>& f,
                                         double lo, double hi,
                                         double x_tol = 1e-6,
                                         int max_iter = 200) {
    constexpr double inv_gr = 0.6180339887498949;  // 1/golden ratio
    double a = lo, b = hi;
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    double fc = f(c), fd = f(d);
    ScalarMin best = fc <= fd ? ScalarMin{c, fc} : ScalarMin{d, fd};
    for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gr * (b - a);
            fd = f(d);
        }
        const ScalarMin cand = fc <= fd ? ScalarMin{c, fc} : ScalarMin{d, fd};
        if (cand.value < best.value) best = cand;
    }
    return best;
}

}  // namespace aea
