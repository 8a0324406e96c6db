#pragma once

#include "aea/model.hpp"
#include "aea/reliability.hpp"

namespace aea {

enum class Scheme { Nast, Ast };

/// Anti-eavesdropping ability Omega = ((1-phi)/phi) * (beta_t-beta_s)/(1+beta_s):
/// the redundancy threshold weighted by the noise-to-signal power ratio.
/// Throws InvalidPhiError unless phi is in (0,1]; phi = 1 yields 0.
double aea_of(const DesignParams& params);

/// The statistics-based design objective Omega(phi) with the codeword
/// threshold forced to the reliability boundary for channel-gain reference
/// `gain_ref` (the on-off threshold for the non-adaptive scheme, the
/// realized gain for the adaptive one) and beta_s at the secrecy floor.
/// May return a negative value when no positive-AEA split exists.
double nast_phi_objective(const SystemConfig& config, double gain_ref,
                          double phi);

/// Closed-form non-adaptive design. `feasible` is the strict positivity
/// condition p_max * mu > beta_m; when it fails, aea is 0 and params carry
/// the raw boundary formulas (not usable for transmission).
struct NastDesign {
    DesignParams params;
    double aea = 0.0;
    bool feasible = false;
};

NastDesign nast_design_multi(const SystemConfig& config);   // N >= 2
NastDesign nast_design_single(const SystemConfig& config);  // N = 1
NastDesign nast_design(const SystemConfig& config);         // dispatches on N

/// Per-realization adaptive design: the non-adaptive closed form with the
/// on-off threshold replaced by the realized gain. aea clips to 0 when
/// p_max * gain <= beta_m (cannot occur for gains above a feasible on-off
/// threshold). The 3-argument overload takes a precomputed on-off threshold
/// for use in sampling loops.
struct AstDesign {
    DesignParams params;
    double aea = 0.0;
    double gain_used = 0.0;
};

AstDesign ast_design(const SystemConfig& config, double gain);
AstDesign ast_design(const SystemConfig& config, double gain, double mu);

enum class ExpectationMethod { Quadrature, MonteCarlo };

/// Overall (on-off conditioned) anti-eavesdropping ability. Constant for the
/// non-adaptive scheme; a truncated-gamma expectation for the adaptive one,
/// with a Monte Carlo fallback if the quadrature fails to converge.
struct OverallAea {
    double value = 0.0;
    Scheme scheme = Scheme::Nast;
    ExpectationMethod method = ExpectationMethod::Quadrature;
    double abs_error_estimate = 0.0;
};

OverallAea overall_aea(const SystemConfig& config, Scheme scheme);

}  // namespace aea
