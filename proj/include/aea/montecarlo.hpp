#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aea/design.hpp"
#include "aea/model.hpp"

namespace aea {

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    int workers = 1;
    bool antithetic = false;
};

struct McReport {
    double estimate = 0.0;
    double std_error = 0.0;          ///< sqrt(p(1-p)/n) for probabilities
    std::uint64_t samples_used = 0;  ///< samples entering the estimate
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
};

/// Channel-draw hooks; defaults are the Rayleigh samplers. Tests substitute
/// deterministic channels here.
using BobSampler = std::function<ChannelRealization(int, CounterRng&)>;
using EveSampler = std::function<EveRealization(int, CounterRng&)>;

/// End-to-end outage simulation: draw the legitimate channel, apply the
/// on-off gate, design (fixed or per realization), draw Eve, run the full
/// precoded signal model and count decodable codewords. Estimates are exact
/// functions of (config, scheme, samples, seed) regardless of worker count:
/// every sample owns a counter-based substream and partial results merge in
/// a fixed chunk order. Throws InfeasibleError for infeasible configurations
/// and SimulationError when fewer than 100 samples pass the gate.
McReport simulate_sop(const SystemConfig& config, Scheme scheme,
                      const McConfig& mc, const BobSampler& bob = {},
                      const EveSampler& eve = {});

/// As simulate_sop but with explicit, fixed design parameters (test hook for
/// forced thresholds).
McReport simulate_sop_with_params(const SystemConfig& config,
                                  const DesignParams& params,
                                  const McConfig& mc,
                                  const BobSampler& bob = {},
                                  const EveSampler& eve = {});

/// Empirical exceedance frequency of the channel gain over mu.
McReport simulate_pt(const SystemConfig& config, double mu, const McConfig& mc,
                     const BobSampler& bob = {});

/// Empirical mean of the per-realization anti-eavesdropping ability above
/// the on-off gate (constant for the non-adaptive scheme). std_error is the
/// standard error of the mean.
McReport simulate_overall_aea(const SystemConfig& config, Scheme scheme,
                              const McConfig& mc, const BobSampler& bob = {});

/// Empirical SOP of the statistics-based design evaluated on a grid of power
/// splits using common random numbers: one set of channel draws is shared by
/// every grid point, so the empirical argmin is not blurred by independent
/// sampling noise between neighboring points.
struct PhiGridReport {
    std::vector<double> sop;
    std::uint64_t transmitted = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

PhiGridReport simulate_sop_phi_grid(const SystemConfig& config,
                                    const std::vector<double>& phis,
                                    const McConfig& mc);

}  // namespace aea
