#include "aea/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "aea/sop.hpp"

namespace aea {

namespace {

constexpr std::uint64_t kChunk = 4096;

// Runs run_chunk(chunk_index, begin, end) over [0, total) split into
// fixed-size chunks. Workers pull chunk indices from a shared counter; each
// chunk writes only to its own slot, so the caller can fold partial results
// in chunk order and the outcome is independent of the worker count.
void parallel_chunks(
    std::uint64_t total, int workers,
    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>&
        run_chunk, std::uint64_t chunk_size = kChunk) {
    const std::uint64_t n_chunks = (total + chunk_size - 1) / chunk_size;
    const int n_workers = std::max(
        1, std::min<int>(workers, static_cast<int>(
                                      std::min<std::uint64_t>(n_chunks, 256))));
    if (n_workers == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c)
            run_chunk(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            run_chunk(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

CounterRng sample_rng(const McConfig& mc, std::uint64_t index) {
    // Antithetic mode pairs consecutive samples on one substream, the second
    // seeing complemented uniforms.
    const std::uint64_t stream = mc.antithetic ? index >> 1 : index;
    CounterRng rng(mc.seed, stream);
    if (mc.antithetic && (index & 1)) rng.set_antithetic(true);
    return rng;
}

ChannelRealization default_bob(int n, CounterRng& rng) {
    return sample_bob_channel(n, rng);
}

EveRealization default_eve(int n, CounterRng& rng) {
    return sample_eve_channel(n, rng);
}

double bernoulli_se(double p, std::uint64_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

struct Timer {
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    }
};

McReport run_sop_simulation(const SystemConfig& config, const McConfig& mc,
                            double mu, bool adaptive,
                            const DesignParams& fixed_params,
                            const BobSampler& bob, const EveSampler& eve) {
    config.validate();
    if (mc.samples == 0) throw ConfigError("samples must be >= 1");
    const BobSampler& draw_bob = bob ? bob : BobSampler(default_bob);
    const EveSampler& draw_eve = eve ? eve : EveSampler(default_eve);
    const int n = config.n_antennas;

    Timer timer;
    struct Partial {
        std::uint64_t transmitted = 0;
        std::uint64_t outages = 0;
    };
    const std::uint64_t n_chunks = (mc.samples + kChunk - 1) / kChunk;
    std::vector<Partial> partials(n_chunks);

    parallel_chunks(mc.samples, mc.workers,
                    [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
                        Partial acc;
                        for (std::uint64_t i = begin; i < end; ++i) {
                            CounterRng rng = sample_rng(mc, i);
                            const ChannelRealization ch = draw_bob(n, rng);
                            if (!(ch.gain > mu)) continue;
                            ++acc.transmitted;
                            const DesignParams params =
                                adaptive ? ast_design(config, ch.gain, mu).params
                                         : fixed_params;
                            const EveRealization ev = draw_eve(n, rng);
                            const Precoder pre = build_precoder(ch);
                            const double ge = sinr_eve(params, pre, ev, config);
                            if (ge > params.beta_e) ++acc.outages;
                        }
                        partials[c] = acc;
                    });

    std::uint64_t transmitted = 0, outages = 0;
    for (const Partial& p : partials) {
        transmitted += p.transmitted;
        outages += p.outages;
    }
    if (transmitted < 100)
        throw SimulationError(
            "fewer than 100 samples passed the on-off gate; increase the "
            "sample budget or relax delta");

    McReport report;
    report.estimate =
        static_cast<double>(outages) / static_cast<double>(transmitted);
    report.std_error = bernoulli_se(report.estimate, transmitted);
    report.samples_used = transmitted;
    report.seed = mc.seed;
    report.elapsed_seconds = timer.seconds();
    return report;
}

}  // namespace

McReport simulate_sop(const SystemConfig& config, Scheme scheme,
                      const McConfig& mc, const BobSampler& bob,
                      const EveSampler& eve) {
    const NastDesign design = nast_design(config);
    if (!design.feasible)
        throw InfeasibleError("no positive-ability design for this scenario");
    return run_sop_simulation(config, mc, design.params.mu,
                              scheme == Scheme::Ast, design.params, bob, eve);
}

McReport simulate_sop_with_params(const SystemConfig& config,
                                  const DesignParams& params,
                                  const McConfig& mc, const BobSampler& bob,
                                  const EveSampler& eve) {
    return run_sop_simulation(config, mc, params.mu, /*adaptive=*/false,
                              params, bob, eve);
}

McReport simulate_pt(const SystemConfig& config, double mu, const McConfig& mc,
                     const BobSampler& bob) {
    config.validate();
    if (!(mu >= 0.0)) throw NegativeInputError("mu must be >= 0");
    if (mc.samples == 0) throw ConfigError("samples must be >= 1");
    const BobSampler& draw_bob = bob ? bob : BobSampler(default_bob);
    const int n = config.n_antennas;

    Timer timer;
    const std::uint64_t n_chunks = (mc.samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> partials(n_chunks, 0);
    parallel_chunks(mc.samples, mc.workers,
                    [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
                        std::uint64_t hits = 0;
                        for (std::uint64_t i = begin; i < end; ++i) {
                            CounterRng rng = sample_rng(mc, i);
                            if (draw_bob(n, rng).gain > mu) ++hits;
                        }
                        partials[c] = hits;
                    });

    std::uint64_t hits = 0;
    for (std::uint64_t h : partials) hits += h;

    McReport report;
    report.estimate = static_cast<double>(hits) / static_cast<double>(mc.samples);
    report.std_error = bernoulli_se(report.estimate, mc.samples);
    report.samples_used = mc.samples;
    report.seed = mc.seed;
    report.elapsed_seconds = timer.seconds();
    return report;
}

McReport simulate_overall_aea(const SystemConfig& config, Scheme scheme,
                              const McConfig& mc, const BobSampler& bob) {
    const NastDesign design = nast_design(config);
    if (!design.feasible)
        throw InfeasibleError("no positive-ability design for this scenario");
    if (mc.samples == 0) throw ConfigError("samples must be >= 1");
    const BobSampler& draw_bob = bob ? bob : BobSampler(default_bob);
    const int n = config.n_antennas;
    const double mu = design.params.mu;

    Timer timer;
    struct Partial {
        std::uint64_t transmitted = 0;
        double sum = 0.0;
        double sumsq = 0.0;
    };
    const std::uint64_t n_chunks = (mc.samples + kChunk - 1) / kChunk;
    std::vector<Partial> partials(n_chunks);
    parallel_chunks(
        mc.samples, mc.workers,
        [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
            Partial acc;
            for (std::uint64_t i = begin; i < end; ++i) {
                CounterRng rng = sample_rng(mc, i);
                const ChannelRealization ch = draw_bob(n, rng);
                if (!(ch.gain > mu)) continue;
                ++acc.transmitted;
                const double a = scheme == Scheme::Ast
                                     ? ast_design(config, ch.gain, mu).aea
                                     : design.aea;
                acc.sum += a;
                acc.sumsq += a * a;
            }
            partials[c] = acc;
        });

    std::uint64_t transmitted = 0;
    double sum = 0.0, sumsq = 0.0;
    for (const Partial& p : partials) {
        transmitted += p.transmitted;
        sum += p.sum;
        sumsq += p.sumsq;
    }
    if (transmitted < 100)
        throw SimulationError(
            "fewer than 100 samples passed the on-off gate; increase the "
            "sample budget or relax delta");

    const double m = static_cast<double>(transmitted);
    McReport report;
    report.estimate = sum / m;
    const double var =
        std::max(0.0, (sumsq - m * report.estimate * report.estimate) /
                          std::max(1.0, m - 1.0));
    report.std_error = std::sqrt(var / m);
    report.samples_used = transmitted;
    report.seed = mc.seed;
    report.elapsed_seconds = timer.seconds();
    return report;
}

PhiGridReport simulate_sop_phi_grid(const SystemConfig& config,
                                    const std::vector<double>& phis,
                                    const McConfig& mc) {
    config.validate();
    if (phis.empty()) throw ConfigError("phi grid must be nonempty");
    for (double phi : phis)
        if (!(phi > 0.0 && phi < 1.0))
            throw InvalidPhiError("grid phi values must be in (0, 1)");
    if (mc.samples == 0) throw ConfigError("samples must be >= 1");

    const int n = config.n_antennas;
    const double mu = n == 1 ? std::log(1.0 / config.delta)
                             : solve_threshold(n, config.delta).mu;

    // Stage 1: one shared set of channel draws. Per transmitted sample keep
    // the beamformed and null-space powers seen by Eve; every grid point is
    // then a deterministic threshold test on the same numbers (common random
    // numbers keep the empirical argmin sharp).
    struct Sample {
        double signal;  // |h_e^T w|^2   (|h_e|^2 for N = 1)
        double an;      // ||h_e^T G||^2 (unused for N = 1)
    };
    const std::uint64_t n_chunks = (mc.samples + kChunk - 1) / kChunk;
    std::vector<std::vector<Sample>> per_chunk(n_chunks);
    parallel_chunks(
        mc.samples, mc.workers,
        [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
            std::vector<Sample>& out = per_chunk[c];
            for (std::uint64_t i = begin; i < end; ++i) {
                CounterRng rng = sample_rng(mc, i);
                const ChannelRealization ch = sample_bob_channel(n, rng);
                if (!(ch.gain > mu)) continue;
                const EveRealization ev = sample_eve_channel(n, rng);
                if (n == 1) {
                    out.push_back({std::norm(ev.h_e[0]), 0.0});
                    continue;
                }
                const Precoder pre = build_precoder(ch);
                const std::complex<double> s =
                    (ev.h_e.transpose() * pre.w).value();
                const double an =
                    (ev.h_e.transpose() * pre.g_basis).squaredNorm();
                out.push_back({std::norm(s), an});
            }
        });

    std::vector<Sample> samples;
    for (const auto& chunk : per_chunk)
        samples.insert(samples.end(), chunk.begin(), chunk.end());
    if (samples.size() < 100)
        throw SimulationError(
            "fewer than 100 samples passed the on-off gate; increase the "
            "sample budget or relax delta");

    // Stage 2: count outages per grid point.
    PhiGridReport report;
    report.sop.resize(phis.size());
    report.transmitted = samples.size();
    report.samples = mc.samples;
    report.seed = mc.seed;
    const double inv_count = 1.0 / static_cast<double>(samples.size());
    parallel_chunks(
        phis.size(), mc.workers,
        [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t k = begin; k < end; ++k) {
                const double phi = phis[k];
                const double beta_t =
                    n >= 2 ? phi * config.p_max * mu
                           : phi * config.p_max * mu /
                                 ((1.0 - phi) * config.p_max * mu + 1.0);
                const double beta_e =
                    (beta_t - config.beta_m) / (1.0 + config.beta_m);
                const double ps = phi * config.p_max;
                const double pa = (1.0 - phi) * config.p_max;
                std::uint64_t outages = 0;
                for (const Sample& s : samples) {
                    const double den =
                        n >= 2 ? pa * s.an / static_cast<double>(n - 1) +
                                     config.sigma_e_sq
                               : pa * s.signal + config.sigma_e_sq;
                    const double ge =
                        den == 0.0 ? std::numeric_limits<double>::infinity()
                                   : ps * s.signal / den;
                    if (ge > beta_e) ++outages;
                }
                report.sop[k] = static_cast<double>(outages) * inv_count;
            }
        },
        /*chunk_size=*/64);
    return report;
}

}  // namespace aea
