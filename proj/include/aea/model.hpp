#pragma once

#include <Eigen/Dense>
#include <complex>

#include "aea/errors.hpp"
#include "aea/rng.hpp"

namespace aea {

/// Scenario constants. All powers are linear ratios normalized to the
/// legitimate receiver's unit noise variance (dB conversion happens at the
/// CLI boundary only).
struct SystemConfig {
    int n_antennas = 1;       ///< transmit antennas N >= 1
    double p_max = 1.0;       ///< power budget P_max > 0 (linear)
    double sigma_e_sq = 1.0;  ///< eavesdropper noise power >= 0
    double delta = 0.9;       ///< transmission-probability floor in (0,1]
    double beta_m = 1.0;      ///< secrecy SINR floor 2^R_m - 1 >= 0

    void validate() const;
};

/// Legitimate channel draw with its squared norm cached.
struct ChannelRealization {
    Eigen::VectorXcd h_b;
    double gain = 0.0;

    /// Test hook: build from explicit entries (gain recomputed).
    static ChannelRealization from_entries(Eigen::VectorXcd entries);
};

struct EveRealization {
    Eigen::VectorXcd h_e;

    static EveRealization from_entries(Eigen::VectorXcd entries);
};

/// One transmit design: power, information/noise split and Wyner encoding
/// thresholds. beta_e is cached from (beta_t, beta_s).
struct DesignParams {
    double p_total = 0.0;  ///< transmit power P in (0, p_max]
    double phi = 1.0;      ///< information-signal power fraction
    double beta_t = 0.0;   ///< codeword SINR threshold 2^R_t - 1
    double beta_s = 0.0;   ///< secrecy SINR threshold 2^R_s - 1
    double beta_e = 0.0;   ///< redundancy threshold (beta_t-beta_s)/(1+beta_s)
    double mu = 0.0;       ///< on-off channel-gain threshold

    double signal_power() const { return phi * p_total; }
    double an_power() const { return (1.0 - phi) * p_total; }
};

/// Validating constructor for DesignParams; computes beta_e.
DesignParams make_design_params(double p_total, double phi, double beta_t,
                                double beta_s, double mu);

/// Maximum-ratio beamformer plus an orthonormal basis of the null space of
/// h_b^T (empty for a single antenna).
struct Precoder {
    Eigen::VectorXcd w;        ///< unit beamformer, h_b^T w = ||h_b||
    Eigen::MatrixXcd g_basis;  ///< N x (N-1), h_b^T G = 0, G^H G = I
};

/// Rayleigh channel draw: each entry CN(0,1).
ChannelRealization sample_bob_channel(int n, CounterRng& rng);
EveRealization sample_eve_channel(int n, CounterRng& rng);

/// Conjugate beamformer and Householder null-space basis. Throws
/// ZeroChannelError when the channel has no energy.
Precoder build_precoder(const ChannelRealization& ch);

/// Bob's SINR. For N >= 2 the artificial noise lives in the null space of
/// h_b and does not appear; for N = 1 the leaked noise interferes.
double sinr_bob(const DesignParams& params, const ChannelRealization& ch,
                const SystemConfig& config);

/// Eve's SINR through the full signal model. Returns +infinity in the
/// measure-zero case of a vanishing denominator (noise-free Eve with no
/// artificial-noise component).
double sinr_eve(const DesignParams& params, const Precoder& pre,
                const EveRealization& eve, const SystemConfig& config);

/// beta = 2^R - 1 and its inverse.
double rate_to_threshold(double rate_bits);
double threshold_to_rate(double beta);

}  // namespace aea
