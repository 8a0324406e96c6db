#include "aea/sop.hpp"

#include <algorithm>
#include <cmath>

#include "aea/optimize.hpp"
#include "aea/quadrature.hpp"

namespace aea {

double sop_given_aea(int n, double aea, double phi, double p_total,
                     double sigma_e_sq) {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (!(phi > 0.0 && phi < 1.0))
        throw InvalidPhiError("phi must be in (0, 1)");
    if (!(p_total > 0.0)) throw ConfigError("p_total must be positive");
    if (!(sigma_e_sq >= 0.0)) throw ConfigError("sigma_e_sq must be >= 0");
    if (!(aea >= 0.0)) throw NegativeInputError("aea must be >= 0");

    if (n == 1) {
        // Eve's SINR is capped at phi/(1-phi); an ability of 1 or more puts
        // the redundancy threshold above the cap and outage cannot occur.
        if (aea >= 1.0) return 0.0;
        return std::exp(-sigma_e_sq * aea /
                        (p_total * (1.0 - phi) * (1.0 - aea)));
    }
    const double noise_factor =
        std::exp(-sigma_e_sq * aea / (p_total * (1.0 - phi)));
    return noise_factor *
           std::pow(1.0 + aea / static_cast<double>(n - 1),
                    1.0 - static_cast<double>(n));
}

double worst_case_sop(const DesignParams& params, int n) {
    if (n < 2) throw ConfigError("worst-case form requires n >= 2");
    if (!(params.phi < 1.0))
        throw InvalidPhiError("phi must be below 1 for the worst-case form");
    const double aea = aea_of(params);
    return std::pow(1.0 + aea / static_cast<double>(n - 1),
                    1.0 - static_cast<double>(n));
}

SopResult evaluate_design_sop(const SystemConfig& config, const NastDesign& d) {
    SopResult r;
    r.regime = config.sigma_e_sq == 0.0 ? SopRegime::WorstCase : SopRegime::Noisy;
    r.n_antennas = config.n_antennas;
    r.aea_used = d.aea;
    r.phi_used = d.params.phi;
    r.p_used = d.params.p_total;
    r.p_so = d.feasible
                 ? sop_given_aea(config.n_antennas, d.aea, d.params.phi,
                                 d.params.p_total, config.sigma_e_sq)
                 : 1.0;
    return r;
}

double overall_sop(const SystemConfig& config, Scheme scheme) {
    const NastDesign nast = nast_design(config);
    if (!nast.feasible) return 1.0;
    if (scheme == Scheme::Nast)
        return sop_given_aea(config.n_antennas, nast.aea, nast.params.phi,
                             nast.params.p_total, config.sigma_e_sq);

    const double mu = nast.params.mu;
    const QuadResult q = truncated_gamma_expectation(
        config.n_antennas, mu,
        [&](double g) {
            const AstDesign d = ast_design(config, g, mu);
            if (!(d.aea > 0.0)) return 1.0;
            return sop_given_aea(config.n_antennas, d.aea, d.params.phi,
                                 d.params.p_total, config.sigma_e_sq);
        });
    return std::clamp(q.value, 0.0, 1.0);
}

PhiSearchResult min_sop_over_phi(const SystemConfig& config, double gain_ref) {
    constexpr double grid_step = 1e-3;
    constexpr double refine_tol = 1e-6;
    const auto objective = [&](double phi) {
        const double aea =
            std::max(0.0, nast_phi_objective(config, gain_ref, phi));
        return sop_given_aea(config.n_antennas, aea, phi, config.p_max,
                             config.sigma_e_sq);
    };

    // Coarse scan guards against non-unimodal surprises, then a
    // golden-section pass refines the winning cell.
    PhiSearchResult best{grid_step, objective(grid_step)};
    for (int k = 2; k < 1000; ++k) {
        const double phi = k * grid_step;
        const double v = objective(phi);
        if (v < best.p_so) best = {phi, v};
    }
    const double lo = std::max(best.phi - grid_step, 1e-9);
    const double hi = std::min(best.phi + grid_step, 1.0 - 1e-9);
    const ScalarMin refined =
        golden_section_minimize(objective, lo, hi, refine_tol);
    if (refined.value < best.p_so) best = {refined.x, refined.value};
    return best;
}

BaselineDesign ecsi_baseline(const SystemConfig& config, Scheme scheme) {
    config.validate();
    const NastDesign nast = nast_design(config);
    const double mu = nast.params.mu;
    const int n = config.n_antennas;

    BaselineDesign b;
    b.search_resolution = 1e-6;
    b.params.p_total = config.p_max;
    b.params.beta_s = config.beta_m;
    b.params.mu = mu;

    const auto fill_params = [&](double phi, double gain_ref) {
        b.params.phi = phi;
        b.params.beta_t =
            n >= 2 ? phi * config.p_max * gain_ref
                   : phi * config.p_max * gain_ref /
                         ((1.0 - phi) * config.p_max * gain_ref + 1.0);
        b.params.beta_e =
            (b.params.beta_t - b.params.beta_s) / (1.0 + b.params.beta_s);
    };

    if (scheme == Scheme::Nast) {
        const PhiSearchResult r = min_sop_over_phi(config, mu);
        fill_params(r.phi, mu);
        b.p_so = r.p_so;
        return b;
    }

    const QuadResult q = truncated_gamma_expectation(
        n, mu, [&](double g) { return min_sop_over_phi(config, g).p_so; });
    b.p_so = std::clamp(q.value, 0.0, 1.0);

    // Representative parameters: the per-realization search evaluated at the
    // conditional mean gain E[g | g > mu] = n Q(n+1, mu) / Q(n, mu).
    const double mean_gain = n * transmission_probability(n + 1, mu) /
                             transmission_probability(n, mu);
    fill_params(min_sop_over_phi(config, mean_gain).phi, mean_gain);
    return b;
}

}  // namespace aea
