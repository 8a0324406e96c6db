#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace aea {

// Counter-based random streams built on Philox4x32-10. A stream is fully
// determined by (seed, stream id), so per-sample substreams can be handed to
// parallel workers and the merged results do not depend on the worker count
// or scheduling order.

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& c,
                         const std::array<std::uint32_t, 2>& k) {
    constexpr std::uint64_t m0 = 0xD2511F53ull;
    constexpr std::uint64_t m1 = 0xCD9E8D57ull;
    const std::uint64_t p0 = m0 * c[0];
    const std::uint64_t p1 = m1 * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline std::array<std::uint32_t, 4> philox_block(
    std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t w0 = 0x9E3779B9u;
    constexpr std::uint32_t w1 = 0xBB67AE85u;
    philox_round(ctr, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += w0;
        key[1] += w1;
        philox_round(ctr, key);
    }
    return ctr;
}

}  // namespace detail

/// SplitMix64 finalizer; used to derive sub-seeds for rows/quantities.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ mix64(salt));
}

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          ctr_{static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32), 0u, 0u} {}

    void set_antithetic(bool on) { antithetic_ = on; }

    /// Uniform draw in the open interval (0,1); antithetic mode returns the
    /// complement, which stays in (0,1) because the lattice is symmetric.
    double uniform() {
        const std::uint64_t bits = next_u64();
        const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
        return antithetic_ ? 1.0 - u : u;
    }

    /// Standard normal via Box-Muller; the second variate of the pair is
    /// cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Circularly symmetric complex Gaussian with unit total variance:
    /// real and imaginary parts are each N(0, 1/2). One draw consumes
    /// exactly one Philox block.
    std::complex<double> cnormal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        const double a = 2.0 * pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    static constexpr double pi = 3.14159265358979323846;

    std::uint32_t next_word() {
        if (pos_ == 4) {
            buf_ = detail::philox_block(ctr_, key_);
            if (++ctr_[2] == 0) ++ctr_[3];
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_word();
        const std::uint64_t hi = next_word();
        return (hi << 32) | lo;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    bool antithetic_ = false;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace aea
