#pragma once

#include "aea/design.hpp"
#include "aea/model.hpp"

namespace aea {

/// Secrecy outage probability of a single-antenna Rayleigh eavesdropper as a
/// function of the achieved anti-eavesdropping ability.
///
/// N = 1: exp(-sigma^2 * W / (P (1-phi)(1-W))) for W < 1, and exactly 0 for
/// W >= 1 (Eve's SINR is capped at phi/(1-phi), so the outage event is
/// impossible). N >= 2: exp(-sigma^2 W / (P(1-phi))) * (1 + W/(N-1))^(1-N).
/// sigma^2 = 0 gives the worst-case specializations.
double sop_given_aea(int n, double aea, double phi, double p_total,
                     double sigma_e_sq);

/// Worst-case (noise-free Eve) outage probability of a design, N >= 2:
/// (1 + Omega/(N-1))^(1-N).
double worst_case_sop(const DesignParams& params, int n);

enum class SopRegime { WorstCase, Noisy };

/// Record of an analytic SOP evaluation, for reporting.
struct SopResult {
    double p_so = 1.0;
    SopRegime regime = SopRegime::Noisy;
    int n_antennas = 1;
    double aea_used = 0.0;
    double phi_used = 1.0;
    double p_used = 0.0;
};

SopResult evaluate_design_sop(const SystemConfig& config, const NastDesign& d);

/// Overall SOP of the optimal design under the on-off rule: the constant
/// value for the non-adaptive scheme, a truncated-gamma expectation for the
/// adaptive one. Returns 1 for infeasible configurations.
double overall_sop(const SystemConfig& config, Scheme scheme);

/// Exhaustive baseline that assumes Eve's channel statistics are known and
/// minimizes the analytic SOP directly over the power split (coarse 1e-3
/// grid plus golden-section refinement; power, secrecy threshold and
/// codeword threshold are at their provably optimal values). For the
/// adaptive scheme the search runs per realization and `params` reports the
/// design at the conditional-mean gain.
struct BaselineDesign {
    DesignParams params;
    double p_so = 1.0;
    double search_resolution = 0.0;
};

BaselineDesign ecsi_baseline(const SystemConfig& config, Scheme scheme);

/// Single-realization baseline search (adaptive scheme building block).
struct PhiSearchResult {
    double phi = 0.0;
    double p_so = 1.0;
};

PhiSearchResult min_sop_over_phi(const SystemConfig& config, double gain_ref);

}  // namespace aea
