#include <doctest.h>

#include <cmath>

#include "aea/model.hpp"
#include "aea/quadrature.hpp"
#include "aea/rng.hpp"
#include "aea/sop.hpp"

using namespace aea;

namespace {

SystemConfig make_config(int n, double delta, double p_max, double beta_m,
                         double sigma = 1.0) {
    SystemConfig c;
    c.n_antennas = n;
    c.delta = delta;
    c.p_max = p_max;
    c.beta_m = beta_m;
    c.sigma_e_sq = sigma;
    return c;
}

// Empirical outage frequency of fixed params through the full signal model.
double chain_outage_frequency(int n, const DesignParams& params, double sigma,
                              int n_draws, std::uint64_t seed) {
    SystemConfig cfg = make_config(n, 0.9, params.p_total, 1.0, sigma);
    CounterRng rng(seed, 0);
    int outages = 0;
    for (int i = 0; i < n_draws; ++i) {
        const auto ch = sample_bob_channel(n, rng);
        const Precoder pre = build_precoder(ch);
        const auto eve = sample_eve_channel(n, rng);
        if (sinr_eve(params, pre, eve, cfg) > params.beta_e) ++outages;
    }
    return static_cast<double>(outages) / n_draws;
}

}  // namespace

TEST_SUITE("sop") {

TEST_CASE("zero ability means certain outage") {
    for (int n : {1, 2, 4, 8}) {
        for (double sigma : {0.0, 1.0, 3.0}) {
            CHECK(sop_given_aea(n, 0.0, 0.5, 10.0, sigma) == 1.0);
        }
    }
}

TEST_CASE("two antennas, worst case, unit ability") {
    CHECK(sop_given_aea(2, 1.0, 0.5, 10.0, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-15));
    // cross-check through the signal model: phi = 1/2, beta_e = 1
    const auto params = make_design_params(10.0, 0.5, 1.0, 0.0, 0.0);
    const double p = chain_outage_frequency(2, params, 0.0, 1'000'000, 21);
    CHECK(std::abs(p - 0.5) <= 3.0 * std::sqrt(0.25 / 1e6));
}

TEST_CASE("single antenna with ability above one cannot leak") {
    CHECK(sop_given_aea(1, 1.0, 0.4, 10.0, 1.0) == 0.0);
    CHECK(sop_given_aea(1, 2.5, 0.4, 10.0, 0.0) == 0.0);
    // Eve's SINR is bounded by phi/(1-phi) = 2/3 < beta_e = 0.7: brute force
    // finds no outage at all.
    const auto params = make_design_params(10.0, 0.4, 0.7, 0.0, 0.0);
    CHECK((1.0 - 0.4) / 0.4 * params.beta_e > 1.0);
    const double p = chain_outage_frequency(1, params, 0.5, 100'000, 22);
    CHECK(p == 0.0);
}

TEST_CASE("noisy single antenna expression") {
    // ability below one: exponential expression in closed form
    const double v = sop_given_aea(1, 0.5, 0.25, 8.0, 2.0);
    CHECK(v == doctest::Approx(std::exp(-2.0 * 0.5 / (8.0 * 0.75 * 0.5)))
                   .epsilon(1e-14));
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(sop_given_aea(2, 1.0, 0.0, 10.0, 1.0), InvalidPhiError);
    CHECK_THROWS_AS(sop_given_aea(2, 1.0, 1.0, 10.0, 1.0), InvalidPhiError);
    CHECK_THROWS_AS(sop_given_aea(2, -0.5, 0.5, 10.0, 1.0),
                    NegativeInputError);
}

TEST_CASE("worst-case outage closed form") {
    // beta_e = 0 leaves certain outage
    const auto no_redundancy = make_design_params(10.0, 0.5, 1.0, 1.0, 0.0);
    CHECK(worst_case_sop(no_redundancy, 4) == 1.0);

    // ability 3 with four antennas: (1+1)^-3
    const auto strong = make_design_params(10.0, 0.25, 1.0, 0.0, 0.0);
    CHECK(worst_case_sop(strong, 4) == doctest::Approx(0.125).epsilon(1e-15));
    const double p = chain_outage_frequency(4, strong, 0.0, 1'000'000, 23);
    CHECK(std::abs(p - 0.125) <= 3.0 * std::sqrt(0.125 * 0.875 / 1e6));

    // huge ability drives the outage to zero
    const auto huge = make_design_params(10.0, 1e-4, 2.0, 0.0, 0.0);
    CHECK(worst_case_sop(huge, 4) < 1e-11);

    CHECK_THROWS_AS(worst_case_sop(strong, 1), ConfigError);
    auto full = make_design_params(10.0, 1.0, 1.0, 0.0, 0.0);
    CHECK_THROWS_AS(worst_case_sop(full, 4), InvalidPhiError);
}

TEST_CASE("outage decreases strictly in the ability") {
    for (int n : {2, 4, 8}) {
        double prev = 1.1;
        for (double a = 0.1; a < 10.0; a += 0.1) {
            const double v = sop_given_aea(n, a, 0.3, 10.0, 1.0);
            CHECK(v < prev);
            prev = v;
        }
    }
    double prev = 1.1;
    for (double a = 0.05; a < 1.0; a += 0.05) {
        const double v = sop_given_aea(1, a, 0.3, 10.0, 1.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("worst-case argmin over phi equals the ability argmax exactly") {
    for (int n : {2, 4, 8}) {
        const auto cfg = make_config(n, 0.9, 10.0, 1.0, 0.0);
        const double mu = solve_threshold(n, cfg.delta).mu;
        int argmin = -1, argmax = -1;
        double best_sop = 2.0, best_aea = -1e300;
        for (int k = 1; k < 1000; ++k) {
            const double phi = k * 1e-3;
            const double a = nast_phi_objective(cfg, mu, phi);
            const double s =
                sop_given_aea(n, std::max(0.0, a), phi, cfg.p_max, 0.0);
            if (s < best_sop) {
                best_sop = s;
                argmin = k;
            }
            if (a > best_aea) {
                best_aea = a;
                argmax = k;
            }
        }
        CHECK(argmin == argmax);
    }
}

TEST_CASE("fixed-scheme overall outage is the worst-case constant at zero noise") {
    for (int n : {2, 4, 8}) {
        const auto cfg = make_config(n, 0.9, 10.0, 1.0, 0.0);
        const NastDesign d = nast_design(cfg);
        const double direct =
            std::pow(1.0 + d.aea / (n - 1), 1.0 - static_cast<double>(n));
        CHECK(overall_sop(cfg, Scheme::Nast) ==
              doctest::Approx(direct).epsilon(1e-14));
        CHECK(worst_case_sop(d.params, n) ==
              doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("adaptive overall outage beats the fixed scheme") {
    for (int n = 2; n <= 8; ++n) {
        const auto cfg = make_config(n, 0.9, 10.0, 1.0, 1.0);
        CHECK(overall_sop(cfg, Scheme::Ast) < overall_sop(cfg, Scheme::Nast));
    }
}

TEST_CASE("adaptive overall outage: quadrature versus sampling") {
    const auto cfg = make_config(2, 0.9, 10.0, 1.0, 1.0);
    const double analytic = overall_sop(cfg, Scheme::Ast);
    const double mu = nast_design(cfg).params.mu;
    double se = 0.0;
    const double mc = truncated_gamma_mc_mean(
        2, mu,
        [&](double g) {
            const AstDesign d = ast_design(cfg, g, mu);
            return sop_given_aea(2, d.aea, d.params.phi, cfg.p_max,
                                 cfg.sigma_e_sq);
        },
        400'000, 77, &se);
    CHECK(std::abs(analytic - mc) <= 3.0 * se);
}

TEST_CASE("infeasible scenarios report certain outage") {
    const auto cfg = make_config(2, 0.9, 0.1, 1.0, 1.0);
    CHECK(overall_sop(cfg, Scheme::Nast) == 1.0);
    CHECK(overall_sop(cfg, Scheme::Ast) == 1.0);
    const SopResult r = evaluate_design_sop(cfg, nast_design(cfg));
    CHECK(r.p_so == 1.0);
}

TEST_CASE("analytic outage matches the sampled chain for arbitrary params") {
    struct Case {
        int n;
        double phi, beta_t, beta_s, p, sigma;
    };
    const Case cases[] = {{2, 0.35, 3.0, 0.5, 12.0, 1.0},
                          {4, 0.6, 5.0, 1.0, 20.0, 0.5},
                          {6, 0.2, 2.0, 0.0, 5.0, 2.0},
                          {1, 0.55, 0.8, 0.1, 15.0, 1.0}};
    int idx = 0;
    for (const Case& c : cases) {
        const auto params =
            make_design_params(c.p, c.phi, c.beta_t, c.beta_s, 0.0);
        const double aea = aea_of(params);
        const double want =
            sop_given_aea(c.n, aea, c.phi, c.p, c.sigma);
        const int n_draws = 200'000;
        const double got = chain_outage_frequency(c.n, params, c.sigma,
                                                  n_draws, 900 + idx++);
        const double se =
            std::sqrt(std::max(want * (1.0 - want), 1e-12) / n_draws);
        CHECK(std::abs(got - want) <= 3.0 * se);
    }
}

TEST_CASE("baseline matches the ability-optimal split at zero noise") {
    for (int n : {2, 4}) {
        const auto cfg = make_config(n, 0.9, 10.0, 1.0, 0.0);
        const NastDesign d = nast_design(cfg);
        const BaselineDesign b = ecsi_baseline(cfg, Scheme::Nast);
        CHECK(std::abs(b.params.phi - d.params.phi) <= 2e-3);
        const double aea_sop = overall_sop(cfg, Scheme::Nast);
        CHECK(std::abs(b.p_so - aea_sop) <= 1e-6 * aea_sop);
    }
}

TEST_CASE("baseline never loses to the ability design") {
    CounterRng rng(611, 0);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 1 + static_cast<int>(rng.uniform() * 8);
        const double p_db = 5.0 + 20.0 * rng.uniform();
        const auto cfg = make_config(n, 0.5 + 0.45 * rng.uniform(),
                                     std::pow(10.0, p_db / 10.0), 1.0,
                                     2.0 * rng.uniform());
        if (!nast_design(cfg).feasible) continue;
        for (Scheme s : {Scheme::Nast, Scheme::Ast}) {
            const double aea_sop = overall_sop(cfg, s);
            const double base = ecsi_baseline(cfg, s).p_so;
            CHECK(base <= aea_sop * (1.0 + 1e-9) + 1e-15);
        }
    }
}

TEST_CASE("baseline merges with the ability design at high power") {
    for (int n : {2, 4}) {
        const auto cfg = make_config(n, 0.9, 1e4, 1.0, 1.0);  // 40 dB
        for (Scheme s : {Scheme::Nast, Scheme::Ast}) {
            const double aea_sop = overall_sop(cfg, s);
            const double base = ecsi_baseline(cfg, s).p_so;
            CHECK((aea_sop - base) / base < 0.02);
        }
    }
}

TEST_CASE("baseline search metadata") {
    const auto cfg = make_config(4, 0.9, 10.0, 1.0, 1.0);
    const BaselineDesign b = ecsi_baseline(cfg, Scheme::Ast);
    CHECK(b.search_resolution == 1e-6);
    CHECK(b.params.phi > 0.0);
    CHECK(b.params.phi < 1.0);
    CHECK(b.params.beta_s == cfg.beta_m);
}

}  // TEST_SUITE
