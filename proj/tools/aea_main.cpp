// Command-line front end: closed-form designs, threshold solving, Monte
// Carlo experiments and figure-style parameter sweeps with CSV output.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "aea/montecarlo.hpp"
#include "aea/sop.hpp"
#include "aea/sweep.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct ScenarioFlags {
    int n_antennas = 2;
    double delta = 0.9;
    double pmax_db = 10.0;
    std::optional<double> pmax_linear;
    std::optional<double> beta_m;
    std::optional<double> rate_m;
    double sigma_e_sq = 1.0;

    void add_to(CLI::App& cmd) {
        cmd.add_option("-N,--antennas", n_antennas, "transmit antennas");
        cmd.add_option("--delta", delta,
                       "minimum transmission probability in (0,1]");
        auto* db = cmd.add_option("--pmax-db", pmax_db,
                                  "power budget in dB (noise-normalized)");
        auto* lin = cmd.add_option("--pmax", pmax_linear,
                                   "power budget, linear (overrides --pmax-db)");
        lin->excludes(db);
        auto* bm = cmd.add_option("--beta-m", beta_m,
                                  "secrecy SINR floor (linear)");
        auto* rm = cmd.add_option("--rate-m", rate_m,
                                  "secrecy rate floor in bits/channel use");
        rm->excludes(bm);
        cmd.add_option("--sigma-e-sq", sigma_e_sq,
                       "eavesdropper noise power (0 = worst case)");
    }

    aea::SystemConfig config() const {
        aea::SystemConfig c;
        c.n_antennas = n_antennas;
        c.delta = delta;
        c.p_max = pmax_linear ? *pmax_linear : db_to_linear(pmax_db);
        c.sigma_e_sq = sigma_e_sq;
        c.beta_m = rate_m ? aea::rate_to_threshold(*rate_m)
                          : beta_m.value_or(1.0);
        c.validate();
        return c;
    }
};

struct McFlags {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 1;
    bool antithetic = false;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--samples", samples, "Monte Carlo sample budget");
        cmd.add_option("--seed", seed, "random seed");
        cmd.add_option("--workers", workers, "worker threads");
        cmd.add_flag("--antithetic", antithetic, "antithetic sampling pairs");
    }

    aea::McConfig config() const { return {samples, seed, workers, antithetic}; }
};

std::string scheme_name(aea::Scheme s) {
    return s == aea::Scheme::Nast ? "nast" : "ast";
}

json design_to_json(const aea::SystemConfig& c, const aea::NastDesign& d,
                    const aea::SopResult& sop) {
    return json{{"scheme", "nast"},
                {"n_antennas", c.n_antennas},
                {"delta", c.delta},
                {"p_max", c.p_max},
                {"beta_m", c.beta_m},
                {"sigma_e_sq", c.sigma_e_sq},
                {"mu", d.params.mu},
                {"phi", d.params.phi},
                {"beta_t", d.params.beta_t},
                {"beta_s", d.params.beta_s},
                {"beta_e", d.params.beta_e},
                {"aea", d.aea},
                {"feasible", d.feasible},
                {"sop_analytic", sop.p_so}};
}

void print_design_table(const aea::SystemConfig& c, const aea::NastDesign& d,
                        const aea::SopResult& sop, const char* label) {
    std::printf("scheme        %s\n", label);
    std::printf("N             %d\n", c.n_antennas);
    std::printf("delta         %.6g\n", c.delta);
    std::printf("P_max         %.6g (%.4g dB)\n", c.p_max,
                10.0 * std::log10(c.p_max));
    std::printf("beta_m        %.6g\n", c.beta_m);
    std::printf("sigma_e^2     %.6g\n", c.sigma_e_sq);
    std::printf("mu            %.10g\n", d.params.mu);
    std::printf("phi           %.10g\n", d.params.phi);
    std::printf("beta_t        %.10g\n", d.params.beta_t);
    std::printf("beta_s        %.10g\n", d.params.beta_s);
    std::printf("beta_e        %.10g\n", d.params.beta_e);
    std::printf("aea           %.10g\n", d.aea);
    std::printf("feasible      %s\n", d.feasible ? "yes" : "no");
    std::printf("sop_analytic  %.10g\n", sop.p_so);
}

int run_design(const ScenarioFlags& sc, const std::string& scheme,
               std::optional<double> gain, bool as_json) {
    const aea::SystemConfig c = sc.config();
    aea::NastDesign d;
    std::string label = scheme;
    if (scheme == "nast") {
        d = aea::nast_design(c);
    } else if (scheme == "ast") {
        if (!gain)
            throw aea::ConfigError(
                "--gain is required for the per-realization ast design");
        const aea::AstDesign a = aea::ast_design(c, *gain);
        d.params = a.params;
        d.aea = a.aea;
        d.feasible = a.aea > 0.0;
        label = "ast (gain " + std::to_string(*gain) + ")";
    } else {
        throw aea::ConfigError("scheme must be nast or ast");
    }
    const aea::SopResult sop = aea::evaluate_design_sop(c, d);
    if (as_json) {
        json j = design_to_json(c, d, sop);
        j["scheme"] = scheme;
        if (gain) j["gain"] = *gain;
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        print_design_table(c, d, sop, label.c_str());
    }
    if (!d.feasible) {
        std::fprintf(stderr,
                     "infeasible: P_max * mu = %.6g does not exceed beta_m = "
                     "%.6g; no positive anti-eavesdropping ability\n",
                     c.p_max * d.params.mu, c.beta_m);
        return kExitInfeasible;
    }
    return kExitOk;
}

int run_threshold(int n, double delta, double tol, bool as_json) {
    const aea::ThresholdSolution sol = aea::solve_threshold(n, delta, tol);
    if (as_json) {
        const json j{{"n_antennas", n},
                     {"delta", delta},
                     {"mu", sol.mu},
                     {"achieved_pt", sol.achieved_pt},
                     {"iterations", sol.iterations},
                     {"residual", sol.residual}};
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("mu          %.12g\n", sol.mu);
        std::printf("p_t(mu)     %.12g\n", sol.achieved_pt);
        std::printf("iterations  %d\n", sol.iterations);
        std::printf("residual    %.3g\n", sol.residual);
    }
    return kExitOk;
}

int run_simulate(const ScenarioFlags& sc, const McFlags& mcf,
                 const std::string& what, const std::string& scheme,
                 std::optional<double> mu_opt, bool as_json) {
    const aea::SystemConfig c = sc.config();
    const aea::McConfig mc = mcf.config();
    const aea::Scheme s =
        scheme == "ast" ? aea::Scheme::Ast : aea::Scheme::Nast;
    if (scheme != "ast" && scheme != "nast")
        throw aea::ConfigError("scheme must be nast or ast");

    aea::McReport r;
    if (what == "sop") {
        r = aea::simulate_sop(c, s, mc);
    } else if (what == "pt") {
        const double mu =
            mu_opt ? *mu_opt : aea::solve_threshold(c.n_antennas, c.delta).mu;
        r = aea::simulate_pt(c, mu, mc);
    } else if (what == "aea") {
        r = aea::simulate_overall_aea(c, s, mc);
    } else {
        throw aea::ConfigError("--what must be one of sop, pt, aea");
    }

    if (as_json) {
        const json j{{"what", what},
                     {"scheme", scheme_name(s)},
                     {"estimate", r.estimate},
                     {"std_error", r.std_error},
                     {"samples_used", r.samples_used},
                     {"seed", r.seed},
                     {"elapsed_seconds", r.elapsed_seconds}};
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("estimate      %.10g\n", r.estimate);
        std::printf("std_error     %.4g\n", r.std_error);
        std::printf("samples_used  %llu\n",
                    static_cast<unsigned long long>(r.samples_used));
        std::printf("seed          %llu\n",
                    static_cast<unsigned long long>(r.seed));
        std::printf("elapsed       %.3f s\n", r.elapsed_seconds);
    }
    return kExitOk;
}

int run_baseline(const ScenarioFlags& sc, const std::string& scheme,
                 bool as_json) {
    const aea::SystemConfig c = sc.config();
    const aea::Scheme s =
        scheme == "ast" ? aea::Scheme::Ast : aea::Scheme::Nast;
    if (scheme != "ast" && scheme != "nast")
        throw aea::ConfigError("scheme must be nast or ast");
    const aea::NastDesign d = aea::nast_design(c);
    if (!d.feasible) {
        std::fprintf(stderr,
                     "infeasible: P_max * mu = %.6g does not exceed beta_m = "
                     "%.6g\n",
                     c.p_max * d.params.mu, c.beta_m);
        return kExitInfeasible;
    }
    const aea::BaselineDesign b = aea::ecsi_baseline(c, s);
    const double aea_sop = aea::overall_sop(c, s);
    const double gap = b.p_so > 0.0 ? (aea_sop - b.p_so) / b.p_so : 0.0;
    if (as_json) {
        const json j{{"scheme", scheme_name(s)},
                     {"baseline_phi", b.params.phi},
                     {"baseline_sop", b.p_so},
                     {"aea_design_sop", aea_sop},
                     {"relative_gap", gap},
                     {"search_resolution", b.search_resolution}};
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("baseline_phi     %.10g\n", b.params.phi);
        std::printf("baseline_sop     %.10g\n", b.p_so);
        std::printf("aea_design_sop   %.10g\n", aea_sop);
        std::printf("relative_gap     %.4g\n", gap);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Secure-transmission designer: anti-eavesdropping-ability "
        "maximization, outage analysis and Monte Carlo validation"};
    app.require_subcommand(1);

    // design
    auto* design = app.add_subcommand(
        "design", "closed-form transmit design and its analytic outage");
    ScenarioFlags design_sc;
    design_sc.add_to(*design);
    std::string design_scheme = "nast";
    std::optional<double> design_gain;
    bool design_json = false;
    design->add_option("--scheme", design_scheme, "nast or ast");
    design->add_option("--gain", design_gain,
                       "realized channel gain (ast only)");
    design->add_flag("--json", design_json, "machine-readable output");

    // threshold
    auto* threshold = app.add_subcommand(
        "threshold", "solve the on-off gain threshold for a target p_t");
    int th_n = 2;
    double th_delta = 0.9;
    double th_tol = 1e-11;
    bool th_json = false;
    threshold->add_option("-N,--antennas", th_n, "transmit antennas");
    threshold->add_option("--delta", th_delta, "target probability");
    threshold->add_option("--tol", th_tol, "residual tolerance");
    threshold->add_flag("--json", th_json, "machine-readable output");

    // simulate
    auto* simulate =
        app.add_subcommand("simulate", "Monte Carlo estimate of sop/pt/aea");
    ScenarioFlags sim_sc;
    sim_sc.add_to(*simulate);
    McFlags sim_mc;
    sim_mc.add_to(*simulate);
    std::string sim_what = "sop";
    std::string sim_scheme = "nast";
    std::optional<double> sim_mu;
    bool sim_json = false;
    simulate->add_option("--what", sim_what, "sop, pt or aea");
    simulate->add_option("--scheme", sim_scheme, "nast or ast");
    simulate->add_option("--mu", sim_mu,
                         "gain threshold for pt (default: solved from delta)");
    simulate->add_flag("--json", sim_json, "machine-readable output");

    // baseline
    auto* baseline = app.add_subcommand(
        "baseline",
        "statistics-aware exhaustive SOP minimization for comparison");
    ScenarioFlags base_sc;
    base_sc.add_to(*baseline);
    std::string base_scheme = "nast";
    bool base_json = false;
    baseline->add_option("--scheme", base_scheme, "nast or ast");
    baseline->add_flag("--json", base_json, "machine-readable output");

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "tabulate quantities along one scenario axis into CSV");
    ScenarioFlags sweep_sc;
    sweep_sc.add_to(*sweep);
    McFlags sweep_mc;
    sweep_mc.add_to(*sweep);
    std::string sweep_axis, sweep_values, sweep_outputs,
        sweep_scheme = "both";
    std::string sweep_out, sweep_config, sweep_from_json;
    sweep->add_option("--config", sweep_config,
                      "key=value config file (flags override)");
    sweep->add_option("--from-json", sweep_from_json,
                      "reload a sweep from its JSON sidecar");
    sweep->add_option("--axis", sweep_axis,
                      "n_antennas, delta, pmax_db or beta_m");
    sweep->add_option("--values", sweep_values, "comma-separated axis values");
    sweep->add_option("--outputs", sweep_outputs,
                      "subset of aea,sop_analytic,sop_empirical,pt,baseline_sop");
    sweep->add_option("--scheme", sweep_scheme, "nast, ast or both");
    sweep->add_option("--out", sweep_out, "CSV output path");

    try {
        app.parse(argc, argv);

        if (design->parsed())
            return run_design(design_sc, design_scheme, design_gain,
                              design_json);
        if (threshold->parsed())
            return run_threshold(th_n, th_delta, th_tol, th_json);
        if (simulate->parsed())
            return run_simulate(sim_sc, sim_mc, sim_what, sim_scheme, sim_mu,
                                sim_json);
        if (baseline->parsed())
            return run_baseline(base_sc, base_scheme, base_json);

        // sweep: defaults <- sidecar <- config file <- explicit flags
        aea::ExperimentSpec spec;
        if (!sweep_from_json.empty())
            spec = aea::spec_from_json_file(sweep_from_json);
        else
            spec.base = sweep_sc.config();
        if (!sweep_config.empty())
            aea::apply_key_values(spec, aea::parse_key_value_file(sweep_config));

        if (sweep->count("--antennas")) spec.base.n_antennas = sweep_sc.n_antennas;
        if (sweep->count("--delta")) spec.base.delta = sweep_sc.delta;
        if (sweep->count("--pmax-db"))
            spec.base.p_max = db_to_linear(sweep_sc.pmax_db);
        if (sweep->count("--pmax")) spec.base.p_max = *sweep_sc.pmax_linear;
        if (sweep->count("--beta-m")) spec.base.beta_m = *sweep_sc.beta_m;
        if (sweep->count("--rate-m"))
            spec.base.beta_m = aea::rate_to_threshold(*sweep_sc.rate_m);
        if (sweep->count("--sigma-e-sq"))
            spec.base.sigma_e_sq = sweep_sc.sigma_e_sq;
        if (sweep->count("--samples")) spec.mc.samples = sweep_mc.samples;
        if (sweep->count("--seed")) spec.mc.seed = sweep_mc.seed;
        if (sweep->count("--workers")) spec.mc.workers = sweep_mc.workers;
        if (sweep->count("--antithetic")) spec.mc.antithetic = true;
        if (!sweep_axis.empty()) spec.axis = aea::axis_from_string(sweep_axis);
        if (!sweep_values.empty()) {
            std::map<std::string, std::string> kv{{"values", sweep_values}};
            aea::apply_key_values(spec, kv);
        }
        if (!sweep_outputs.empty()) {
            std::map<std::string, std::string> kv{{"outputs", sweep_outputs}};
            aea::apply_key_values(spec, kv);
        }
        if (sweep->count("--scheme"))
            spec.scheme = aea::scheme_from_string(sweep_scheme);
        if (!sweep_out.empty()) spec.out_path = sweep_out;

        aea::run_sweep(spec);
        std::printf("wrote %s and %s.json (%zu rows)\n", spec.out_path.c_str(),
                    spec.out_path.c_str(), spec.values.size());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    } catch (const aea::InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const aea::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}
