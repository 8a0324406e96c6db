#include <doctest.h>

#include <cmath>

#include "aea/design.hpp"
#include "aea/quadrature.hpp"
#include "aea/rng.hpp"

using namespace aea;

namespace {

SystemConfig make_config(int n, double delta, double p_max, double beta_m) {
    SystemConfig c;
    c.n_antennas = n;
    c.delta = delta;
    c.p_max = p_max;
    c.beta_m = beta_m;
    c.sigma_e_sq = 1.0;
    return c;
}

// Exhaustive maximization of the phi objective; the independent check used
// against every closed form below.
double grid_search_best_aea(const SystemConfig& config, double mu,
                            double step = 1e-4, double* arg = nullptr) {
    double best = -1e300;
    double best_phi = step;
    for (double phi = step; phi < 1.0; phi += step) {
        const double v = nast_phi_objective(config, mu, phi);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
    }
    if (arg) *arg = best_phi;
    return best;
}

// Random comfortably-feasible scenario. The margin keeps the relative grid
// comparison meaningful, and the power/floor ranges keep the optimum split
// large enough that central differences can resolve stationarity in double
// precision; exact boundary cases are covered separately.
SystemConfig random_feasible(CounterRng& rng, int n_lo = 1, int n_hi = 8) {
    for (;;) {
        const int n =
            n_lo + static_cast<int>(rng.uniform() * (n_hi - n_lo + 1));
        const double delta = 0.1 + 0.85 * rng.uniform();
        const double p_db = 18.0 * rng.uniform();
        const double beta_m = std::exp(std::log(0.3) +
                                       std::log(4.0 / 0.3) * rng.uniform());
        SystemConfig c = make_config(std::min(n, n_hi), delta,
                                     std::pow(10.0, p_db / 10.0), beta_m);
        const double mu = c.n_antennas == 1
                              ? std::log(1.0 / delta)
                              : solve_threshold(c.n_antennas, delta).mu;
        if (c.p_max * mu > 1.3 * beta_m) return c;
    }
}

}  // namespace

TEST_SUITE("design") {

TEST_CASE("ability vanishes without redundancy") {
    for (double phi : {0.1, 0.5, 0.9}) {
        const auto p = make_design_params(10.0, phi, 2.0, 2.0, 0.0);
        CHECK(aea_of(p) == 0.0);
    }
}

TEST_CASE("ability closed-form spot values") {
    CHECK(aea_of(make_design_params(10.0, 0.5, 3.0, 1.0, 0.0)) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(aea_of(make_design_params(10.0, 0.25, 1.0, 0.0, 0.0)) ==
          doctest::Approx(3.0).epsilon(1e-15));
    CHECK(aea_of(make_design_params(10.0, 1.0, 1.0, 1.0, 0.0)) == 0.0);
    DesignParams bad = make_design_params(10.0, 0.5, 1.0, 0.0, 0.0);
    bad.phi = 0.0;
    CHECK_THROWS_AS(aea_of(bad), InvalidPhiError);
}

TEST_CASE("multi-antenna design at the feasibility boundary") {
    const double mu = solve_threshold(2, 0.9).mu;
    const auto cfg = make_config(2, 0.9, 1.0, mu);  // p_max * mu == beta_m
    const NastDesign d = nast_design(cfg);
    CHECK_FALSE(d.feasible);
    CHECK(d.aea == 0.0);
    CHECK(d.params.phi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("four-antenna reference design") {
    const auto cfg = make_config(4, 0.9, 10.0, 1.0);
    const NastDesign d = nast_design(cfg);
    CHECK(d.feasible);
    CHECK(std::abs(d.params.mu - 1.745) < 1e-3);
    CHECK(std::abs(d.params.phi - 0.2394) < 1e-3);
    CHECK(std::abs(d.aea - 5.05) < 0.01);
    CHECK(d.params.beta_s == 1.0);
    CHECK(d.params.beta_t ==
          doctest::Approx(d.params.phi * 10.0 * d.params.mu).epsilon(1e-12));

    const double grid = grid_search_best_aea(cfg, d.params.mu);
    CHECK(std::abs(d.aea - grid) <= 1e-3 * d.aea);
    CHECK(d.aea >= grid - 1e-12);
}

TEST_CASE("power split scales with the square root of the secrecy floor") {
    const auto strict = nast_design(make_config(4, 0.9, 10.0, 1.0));
    const auto relaxed = nast_design(make_config(4, 0.9, 10.0, 0.25));
    CHECK(relaxed.params.phi / strict.params.phi ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(relaxed.aea > strict.aea);
}

TEST_CASE("single-antenna design at the feasibility boundary") {
    const double mu = std::log(1.0 / 0.9);
    const auto cfg = make_config(1, 0.9, 1.0, mu);
    const NastDesign d = nast_design(cfg);
    CHECK_FALSE(d.feasible);
    CHECK(d.aea == 0.0);
}

TEST_CASE("single-antenna ability saturates at the secrecy bound") {
    const auto cfg = make_config(1, 0.5, 1e6, 1.0);
    const NastDesign d = nast_design(cfg);
    CHECK(d.feasible);
    CHECK(std::abs(d.aea - 0.5) < 0.01 * 0.5);
}

TEST_CASE("single-antenna reference design") {
    const auto cfg = make_config(1, 0.9, 10.0, 1.0);
    const NastDesign d = nast_design(cfg);
    CHECK(d.feasible);
    CHECK(std::abs(d.aea - 1.70e-4) < 2e-6);

    // exhaustive 2-D search over the split and the codeword threshold
    double best = -1e300;
    const double p = cfg.p_max, mu = d.params.mu;
    for (double phi = 1e-4; phi < 1.0; phi += 1e-4) {
        const double cap = phi * p * mu / ((1.0 - phi) * p * mu + 1.0);
        for (int k = 1; k <= 100; ++k) {
            const double beta_t = cap * k / 100.0;
            const double v = (1.0 - phi) / phi * (beta_t - cfg.beta_m) /
                             (1.0 + cfg.beta_m);
            if (v > best) best = v;
        }
    }
    CHECK(std::abs(d.aea - best) <= 1e-3 * d.aea);
    CHECK(d.aea >= best - 1e-12);

    // the codeword threshold sits exactly on the reliability bound
    const double bound = d.params.phi * p * mu /
                         ((1.0 - d.params.phi) * p * mu + 1.0);
    CHECK(std::abs(d.params.beta_t - bound) <= 1e-12 * (1.0 + d.params.beta_t));
}

TEST_CASE("secrecy floor of zero is rejected") {
    auto cfg = make_config(4, 0.9, 10.0, 0.0);
    CHECK_THROWS_AS(nast_design(cfg), ConfigError);
    CHECK_THROWS_AS(ast_design(cfg, 2.0), ConfigError);
}

TEST_CASE("closed form matches grid search on random scenarios") {
    CounterRng rng(515, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const SystemConfig cfg = random_feasible(rng);
        const NastDesign d = nast_design(cfg);
        REQUIRE(d.feasible);
        double arg = 0.0;
        const double grid = grid_search_best_aea(cfg, d.params.mu, 1e-4, &arg);
        CHECK(std::abs(d.aea - grid) <= 1e-3 * std::max(d.aea, 1e-12));
        CHECK(d.aea >= grid - 1e-12);
        CHECK(std::abs(arg - d.params.phi) <= 2e-4);
    }
}

TEST_CASE("stationarity at the optimal split") {
    CounterRng rng(516, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const SystemConfig cfg = random_feasible(rng);
        const NastDesign d = nast_design(cfg);
        const double h = 1e-5 * d.params.phi;
        const double fd = (nast_phi_objective(cfg, d.params.mu,
                                              d.params.phi + h) -
                           nast_phi_objective(cfg, d.params.mu,
                                              d.params.phi - h)) /
                          (2.0 * h);
        CHECK(std::abs(fd) < 1e-6);
    }
}

TEST_CASE("phi objective is unimodal") {
    CounterRng rng(517, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const SystemConfig cfg = random_feasible(rng, 2, 8);
        const NastDesign d = nast_design(cfg);
        const int grid_n = 1000;
        double prev = nast_phi_objective(cfg, d.params.mu, 1.0 / (grid_n + 1));
        int direction_changes = 0;
        bool rising = true;
        double best_phi = 1.0 / (grid_n + 1);
        double best = prev;
        for (int k = 2; k <= grid_n; ++k) {
            const double phi = static_cast<double>(k) / (grid_n + 1);
            const double v = nast_phi_objective(cfg, d.params.mu, phi);
            if (v > best) {
                best = v;
                best_phi = phi;
            }
            if (rising && v < prev) {
                rising = false;
                ++direction_changes;
            } else if (!rising && v > prev) {
                rising = true;
                ++direction_changes;
            }
            prev = v;
        }
        CHECK(direction_changes <= 1);
        CHECK(std::abs(best_phi - d.params.phi) <= 1.0 / (grid_n + 1) + 1e-12);
    }
}

TEST_CASE("optimal split shrinks with antennas and grows with the floor") {
    double prev_phi = 1.0;
    for (int n = 2; n <= 8; ++n) {
        const double phi = nast_design(make_config(n, 0.9, 10.0, 1.0)).params.phi;
        CHECK(phi < prev_phi);
        prev_phi = phi;
    }
    double prev = 0.0;
    for (double beta_m : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        const double phi =
            nast_design(make_config(4, 0.9, 10.0, beta_m)).params.phi;
        CHECK(phi > prev);
        prev = phi;
    }
}

TEST_CASE("ability grows with power and shrinks with the delay constraint") {
    double prev = -1.0;
    for (double p_db : {5.0, 10.0, 15.0, 20.0}) {
        const double a =
            nast_design(make_config(4, 0.9, std::pow(10.0, p_db / 10.0), 1.0))
                .aea;
        CHECK(a > prev);
        prev = a;
    }
    prev = 1e300;
    for (double delta : {0.3, 0.5, 0.7, 0.9, 0.99}) {
        const double a = nast_design(make_config(4, delta, 10.0, 1.0)).aea;
        CHECK(a < prev);
        prev = a;
    }
    // single antenna never exceeds the secrecy-floor bound
    for (double p_db : {0.0, 10.0, 30.0, 60.0}) {
        const auto d =
            nast_design(make_config(1, 0.5, std::pow(10.0, p_db / 10.0), 1.0));
        CHECK(d.aea <= 1.0 / (1.0 + 1.0) + 1e-12);
    }
}

TEST_CASE("adaptive design reduces to the fixed one at the gate") {
    for (int n : {1, 2, 4, 8}) {
        const auto cfg = make_config(n, 0.9, 10.0, 1.0);
        const NastDesign fixed = nast_design(cfg);
        const AstDesign at_gate = ast_design(cfg, fixed.params.mu);
        CHECK(at_gate.aea ==
              doctest::Approx(fixed.aea).epsilon(1e-12));
        CHECK(at_gate.params.phi ==
              doctest::Approx(fixed.params.phi).epsilon(1e-12));
    }
}

TEST_CASE("adaptive design dominates above the gate") {
    CounterRng rng(518, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const SystemConfig cfg = random_feasible(rng);
        const NastDesign fixed = nast_design(cfg);
        const double gain =
            fixed.params.mu * (1.0 + 1e-6 + 4.0 * rng.uniform());
        const AstDesign a = ast_design(cfg, gain, fixed.params.mu);
        CHECK(a.aea > fixed.aea);
    }
}

TEST_CASE("adaptive single-antenna ability approaches the same constant") {
    const auto cfg = make_config(1, 0.9, 10.0, 1.0);
    const AstDesign a = ast_design(cfg, 1e7);
    CHECK(std::abs(a.aea - 0.5) < 0.01 * 0.5);
}

TEST_CASE("adaptive ability clips to zero below the positivity gain") {
    const auto cfg = make_config(2, 0.9, 10.0, 1.0);
    const AstDesign a = ast_design(cfg, 1e-3);  // p_max * gain = 0.01 < beta_m
    CHECK(a.aea == 0.0);
}

TEST_CASE("overall ability is the constant for the fixed scheme") {
    const auto cfg = make_config(4, 0.9, 10.0, 1.0);
    const OverallAea o = overall_aea(cfg, Scheme::Nast);
    CHECK(o.value == nast_design(cfg).aea);
    CHECK(o.method == ExpectationMethod::Quadrature);
}

TEST_CASE("adaptive overall ability: quadrature and sampling agree") {
    const auto cfg = make_config(2, 0.9, 10.0, 1.0);
    const OverallAea o = overall_aea(cfg, Scheme::Ast);
    CHECK(o.method == ExpectationMethod::Quadrature);
    const double mu = nast_design(cfg).params.mu;
    double se = 0.0;
    const double mc = truncated_gamma_mc_mean(
        2, mu, [&](double g) { return ast_design(cfg, g, mu).aea; }, 400'000,
        31, &se);
    CHECK(std::abs(o.value - mc) <= 3.0 * se);
}

TEST_CASE("adaptive overall ability dominates the fixed one") {
    CounterRng rng(519, 0);
    for (int rep = 0; rep < 100; ++rep) {
        const SystemConfig cfg = random_feasible(rng);
        const double fixed = overall_aea(cfg, Scheme::Nast).value;
        const double adaptive = overall_aea(cfg, Scheme::Ast).value;
        CHECK(adaptive > fixed);
    }
}

}  // TEST_SUITE
