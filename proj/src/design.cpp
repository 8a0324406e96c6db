#include "aea/design.hpp"

#include <cmath>

#include "aea/quadrature.hpp"

namespace aea {

namespace {

// Largest codeword threshold that keeps a transmission at reference gain g
// reliable: the beamformed SINR for N >= 2, the leaked-noise SINR for N = 1.
double capacity_threshold(int n, double p, double phi, double g) {
    if (n >= 2) return phi * p * g;
    return phi * p * g / ((1.0 - phi) * p * g + 1.0);
}

void require_positive_floor(const SystemConfig& config) {
    // phi* degenerates to the all-noise boundary as beta_m -> 0; the design
    // is defined only for a strictly positive secrecy floor.
    if (!(config.beta_m > 0.0))
        throw ConfigError("beta_m must be positive for the closed-form design");
}

}  // namespace

double aea_of(const DesignParams& params) {
    if (!(params.phi > 0.0 && params.phi <= 1.0))
        throw InvalidPhiError("phi must be in (0, 1]");
    return (1.0 - params.phi) / params.phi * (params.beta_t - params.beta_s) /
           (1.0 + params.beta_s);
}

double nast_phi_objective(const SystemConfig& config, double gain_ref,
                          double phi) {
    if (!(phi > 0.0 && phi < 1.0))
        throw InvalidPhiError("phi must be in (0, 1)");
    const double beta_t =
        capacity_threshold(config.n_antennas, config.p_max, phi, gain_ref);
    return (1.0 - phi) / phi * (beta_t - config.beta_m) / (1.0 + config.beta_m);
}

NastDesign nast_design_multi(const SystemConfig& config) {
    config.validate();
    require_positive_floor(config);
    if (config.n_antennas < 2)
        throw ConfigError("multi-antenna design requires n_antennas >= 2");

    const double mu = solve_threshold(config.n_antennas, config.delta).mu;
    const double x = config.p_max * mu;

    NastDesign d;
    d.feasible = x > config.beta_m;
    d.params.p_total = config.p_max;
    d.params.mu = mu;
    d.params.beta_s = config.beta_m;
    if (x > 0.0) {
        d.params.phi = std::sqrt(config.beta_m / x);
        d.params.beta_t = d.params.phi * x;
        d.params.beta_e = (d.params.beta_t - config.beta_m) / (1.0 + config.beta_m);
    } else {
        d.params.phi = 1.0;
        d.params.beta_t = config.beta_m;
        d.params.beta_e = 0.0;
    }
    const double root = std::sqrt(x) - std::sqrt(config.beta_m);
    d.aea = d.feasible ? root * root / (1.0 + config.beta_m) : 0.0;
    return d;
}

NastDesign nast_design_single(const SystemConfig& config) {
    config.validate();
    require_positive_floor(config);
    if (config.n_antennas != 1)
        throw ConfigError("single-antenna design requires n_antennas == 1");

    const double mu = std::log(1.0 / config.delta);
    const double x = config.p_max * mu;

    NastDesign d;
    d.feasible = x > config.beta_m;
    d.params.p_total = config.p_max;
    d.params.mu = mu;
    d.params.beta_s = config.beta_m;
    if (x > 0.0) {
        d.params.beta_t = std::sqrt(x * config.beta_m);
        d.params.phi = std::sqrt(config.beta_m / x) * (1.0 + x) /
                       (1.0 + d.params.beta_t);
        d.params.beta_e = (d.params.beta_t - config.beta_m) / (1.0 + config.beta_m);
    } else {
        d.params.phi = 1.0;
        d.params.beta_t = config.beta_m;
        d.params.beta_e = 0.0;
    }
    const double root = std::sqrt(x) - std::sqrt(config.beta_m);
    d.aea = d.feasible
                ? root * root / ((1.0 + config.beta_m) * (1.0 + x))
                : 0.0;
    return d;
}

NastDesign nast_design(const SystemConfig& config) {
    return config.n_antennas == 1 ? nast_design_single(config)
                                  : nast_design_multi(config);
}

AstDesign ast_design(const SystemConfig& config, double gain) {
    const double mu = config.n_antennas == 1
                          ? std::log(1.0 / config.delta)
                          : solve_threshold(config.n_antennas, config.delta).mu;
    return ast_design(config, gain, mu);
}

AstDesign ast_design(const SystemConfig& config, double gain, double mu) {
    config.validate();
    require_positive_floor(config);
    if (!(gain > 0.0)) throw ConfigError("gain must be positive");

    const int n = config.n_antennas;
    const double x = config.p_max * gain;
    const bool positive = x > config.beta_m;

    AstDesign d;
    d.gain_used = gain;
    d.params.p_total = config.p_max;
    d.params.mu = mu;
    d.params.beta_s = config.beta_m;
    if (n >= 2) {
        d.params.phi = positive ? std::sqrt(config.beta_m / x) : 1.0;
        d.params.beta_t = d.params.phi * x;
        const double root = std::sqrt(x) - std::sqrt(config.beta_m);
        d.aea = positive ? root * root / (1.0 + config.beta_m) : 0.0;
    } else {
        d.params.beta_t = positive ? std::sqrt(x * config.beta_m) : config.beta_m;
        d.params.phi = positive ? std::sqrt(config.beta_m / x) * (1.0 + x) /
                                      (1.0 + d.params.beta_t)
                                : 1.0;
        const double root = std::sqrt(x) - std::sqrt(config.beta_m);
        d.aea = positive
                    ? root * root / ((1.0 + config.beta_m) * (1.0 + x))
                    : 0.0;
    }
    d.params.beta_e =
        (d.params.beta_t - d.params.beta_s) / (1.0 + d.params.beta_s);
    return d;
}

OverallAea overall_aea(const SystemConfig& config, Scheme scheme) {
    const NastDesign nast = nast_design(config);
    if (scheme == Scheme::Nast)
        return {nast.aea, Scheme::Nast, ExpectationMethod::Quadrature, 0.0};

    const double mu = nast.params.mu;
    const auto ability = [&](double g) {
        return ast_design(config, g, mu).aea;
    };
    try {
        const QuadResult q =
            truncated_gamma_expectation(config.n_antennas, mu, ability);
        return {q.value, Scheme::Ast, ExpectationMethod::Quadrature,
                q.abs_error};
    } catch (const QuadratureError&) {
        double se = 0.0;
        const double mean = truncated_gamma_mc_mean(
            config.n_antennas, mu, ability, 1'000'000,
            /*seed=*/0x0a57a11bu, &se);
        return {mean, Scheme::Ast, ExpectationMethod::MonteCarlo, se};
    }
}

}  // namespace aea
