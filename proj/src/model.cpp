#include "aea/model.hpp"

#include <cmath>
#include <limits>

namespace aea {

namespace {
constexpr double ln2 = 0.6931471805599453;
}

void SystemConfig::validate() const {
    if (n_antennas < 1) throw ConfigError("n_antennas must be >= 1");
    if (!(p_max > 0.0) || !std::isfinite(p_max))
        throw ConfigError("p_max must be a positive finite linear power");
    if (!(sigma_e_sq >= 0.0) || !std::isfinite(sigma_e_sq))
        throw ConfigError("sigma_e_sq must be >= 0");
    if (!(delta > 0.0 && delta <= 1.0))
        throw ConfigError("delta must be in (0, 1]");
    if (!(beta_m >= 0.0) || !std::isfinite(beta_m))
        throw ConfigError("beta_m must be >= 0");
}

ChannelRealization ChannelRealization::from_entries(Eigen::VectorXcd entries) {
    ChannelRealization ch;
    ch.h_b = std::move(entries);
    ch.gain = ch.h_b.squaredNorm();
    return ch;
}

EveRealization EveRealization::from_entries(Eigen::VectorXcd entries) {
    return EveRealization{std::move(entries)};
}

DesignParams make_design_params(double p_total, double phi, double beta_t,
                                double beta_s, double mu) {
    if (!(p_total > 0.0)) throw ConfigError("p_total must be positive");
    if (!(phi > 0.0 && phi <= 1.0))
        throw InvalidPhiError("phi must be in (0, 1]");
    if (!(beta_s >= 0.0 && beta_t >= beta_s))
        throw ConfigError("thresholds must satisfy 0 <= beta_s <= beta_t");
    if (!(mu >= 0.0)) throw ConfigError("mu must be >= 0");
    DesignParams p;
    p.p_total = p_total;
    p.phi = phi;
    p.beta_t = beta_t;
    p.beta_s = beta_s;
    p.beta_e = (beta_t - beta_s) / (1.0 + beta_s);
    p.mu = mu;
    return p;
}

ChannelRealization sample_bob_channel(int n, CounterRng& rng) {
    ChannelRealization ch;
    ch.h_b.resize(n);
    for (int i = 0; i < n; ++i) ch.h_b[i] = rng.cnormal();
    ch.gain = ch.h_b.squaredNorm();
    return ch;
}

EveRealization sample_eve_channel(int n, CounterRng& rng) {
    EveRealization eve;
    eve.h_e.resize(n);
    for (int i = 0; i < n; ++i) eve.h_e[i] = rng.cnormal();
    return eve;
}

Precoder build_precoder(const ChannelRealization& ch) {
    const auto n = ch.h_b.size();
    if (!(ch.gain > 0.0)) throw ZeroChannelError("channel has zero gain");

    Precoder pre;
    const double norm = std::sqrt(ch.gain);
    pre.w = ch.h_b.conjugate() / norm;

    if (n == 1) {
        pre.g_basis.resize(1, 0);
        return pre;
    }

    // Householder reflector sending a = conj(h_b)/||h_b|| onto the first
    // axis; the remaining N-1 columns of the (Hermitian, unitary) reflector
    // are an orthonormal basis of the orthogonal complement of a, i.e. of
    // the null space of h_b^T.
    Eigen::VectorXcd v = pre.w;
    const double a0 = std::abs(v[0]);
    const std::complex<double> phase =
        a0 > 0.0 ? v[0] / a0 : std::complex<double>(1.0, 0.0);
    v[0] += phase;
    const double vsq = 2.0 * (1.0 + a0);  // ||v||^2, never small

    pre.g_basis.resize(n, n - 1);
    for (Eigen::Index c = 1; c < n; ++c) {
        const std::complex<double> scale = 2.0 * std::conj(v[c]) / vsq;
        pre.g_basis.col(c - 1) = -scale * v;
        pre.g_basis(c, c - 1) += 1.0;
    }
    return pre;
}

double sinr_bob(const DesignParams& params, const ChannelRealization& ch,
                const SystemConfig& config) {
    if (ch.h_b.size() != config.n_antennas)
        throw ConfigError("channel length does not match antenna count");
    const double ps = params.signal_power();
    if (config.n_antennas >= 2) return ps * ch.gain;
    const double pa = params.an_power();
    return ps * ch.gain / (pa * ch.gain + 1.0);
}

double sinr_eve(const DesignParams& params, const Precoder& pre,
                const EveRealization& eve, const SystemConfig& config) {
    const auto n = pre.w.size();
    if (eve.h_e.size() != n)
        throw ConfigError("eavesdropper channel length does not match precoder");
    const double ps = params.signal_power();
    const double pa = params.an_power();

    if (n == 1) {
        const double a = std::norm(eve.h_e[0]);
        const double den = pa * a + config.sigma_e_sq;
        if (den == 0.0) return std::numeric_limits<double>::infinity();
        return ps * a / den;
    }

    const std::complex<double> s = (eve.h_e.transpose() * pre.w).value();
    const double signal = std::norm(s);
    const double an = (eve.h_e.transpose() * pre.g_basis).squaredNorm();
    const double den =
        pa * an / static_cast<double>(n - 1) + config.sigma_e_sq;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return ps * signal / den;
}

double rate_to_threshold(double rate_bits) {
    if (!(rate_bits >= 0.0)) throw NegativeInputError("rate must be >= 0");
    return std::expm1(rate_bits * ln2);
}

double threshold_to_rate(double beta) {
    if (!(beta >= 0.0)) throw NegativeInputError("threshold must be >= 0");
    return std::log1p(beta) / ln2;
}

}  // namespace aea
