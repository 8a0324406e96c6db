#include "aea/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aea/sop.hpp"

namespace aea {

namespace {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

constexpr std::uint64_t kQuantitySalts[] = {
    1,  // sop_empirical nast
    2,  // sop_empirical ast
};

struct RowValues {
    double axis_value = 0.0;
    bool feasible = false;
    std::map<std::string, double> columns;
};

SystemConfig config_for(const ExperimentSpec& spec, double value) {
    SystemConfig c = spec.base;
    switch (spec.axis) {
        case Axis::NAntennas: c.n_antennas = static_cast<int>(value); break;
        case Axis::Delta: c.delta = value; break;
        case Axis::PMaxDb: c.p_max = db_to_linear(value); break;
        case Axis::BetaM: c.beta_m = value; break;
    }
    return c;
}

}  // namespace

std::string to_string(Axis a) {
    switch (a) {
        case Axis::NAntennas: return "n_antennas";
        case Axis::Delta: return "delta";
        case Axis::PMaxDb: return "pmax_db";
        case Axis::BetaM: return "beta_m";
    }
    return "?";
}

std::string to_string(SchemeSel s) {
    switch (s) {
        case SchemeSel::Nast: return "nast";
        case SchemeSel::Ast: return "ast";
        case SchemeSel::Both: return "both";
    }
    return "?";
}

Axis axis_from_string(const std::string& s) {
    if (s == "n_antennas" || s == "n-antennas") return Axis::NAntennas;
    if (s == "delta") return Axis::Delta;
    if (s == "pmax_db" || s == "pmax-db") return Axis::PMaxDb;
    if (s == "beta_m" || s == "beta-m") return Axis::BetaM;
    throw ConfigError("unknown sweep axis: " + s);
}

SchemeSel scheme_from_string(const std::string& s) {
    if (s == "nast") return SchemeSel::Nast;
    if (s == "ast") return SchemeSel::Ast;
    if (s == "both") return SchemeSel::Both;
    throw ConfigError("unknown scheme: " + s);
}

Outputs outputs_from_strings(const std::vector<std::string>& names) {
    Outputs o;
    for (const std::string& n : names) {
        if (n == "aea") o.aea = true;
        else if (n == "sop_analytic" || n == "sop-analytic") o.sop_analytic = true;
        else if (n == "sop_empirical" || n == "sop-empirical") o.sop_empirical = true;
        else if (n == "pt") o.pt = true;
        else if (n == "baseline_sop" || n == "baseline-sop") o.baseline_sop = true;
        else throw ConfigError("unknown output quantity: " + n);
    }
    return o;
}

std::vector<std::string> outputs_to_strings(const Outputs& o) {
    std::vector<std::string> v;
    if (o.aea) v.push_back("aea");
    if (o.sop_analytic) v.push_back("sop_analytic");
    if (o.sop_empirical) v.push_back("sop_empirical");
    if (o.pt) v.push_back("pt");
    if (o.baseline_sop) v.push_back("baseline_sop");
    return v;
}

void validate(const ExperimentSpec& spec) {
    spec.base.validate();
    if (spec.values.empty()) throw ConfigError("sweep values must be nonempty");
    for (double v : spec.values) {
        switch (spec.axis) {
            case Axis::NAntennas:
                if (v < 1.0 || v != std::floor(v))
                    throw ConfigError("n_antennas values must be integers >= 1");
                break;
            case Axis::Delta:
                if (!(v > 0.0 && v <= 1.0))
                    throw ConfigError("delta values must be in (0, 1]");
                break;
            case Axis::PMaxDb:
                if (!std::isfinite(v))
                    throw ConfigError("pmax_db values must be finite");
                break;
            case Axis::BetaM:
                if (!(v > 0.0))
                    throw ConfigError("beta_m values must be positive");
                break;
        }
    }
    const Outputs& o = spec.outputs;
    if (!(o.aea || o.sop_analytic || o.sop_empirical || o.pt || o.baseline_sop))
        throw ConfigError("at least one output quantity is required");
    if (spec.mc.samples == 0) throw ConfigError("samples must be >= 1");
    if (spec.out_path.empty()) throw ConfigError("output path is required");
}

std::vector<std::string> csv_columns(const ExperimentSpec& spec) {
    const bool nast = spec.scheme != SchemeSel::Ast;
    const bool ast = spec.scheme != SchemeSel::Nast;
    std::vector<std::string> cols{to_string(spec.axis), "feasible"};
    if (spec.outputs.pt) cols.push_back("pt");
    const auto per_scheme = [&](const std::string& stem, bool with_se) {
        if (nast) {
            cols.push_back(stem + "_nast");
            if (with_se) cols.push_back(stem + "_nast_se");
        }
        if (ast) {
            cols.push_back(stem + "_ast");
            if (with_se) cols.push_back(stem + "_ast_se");
        }
    };
    if (spec.outputs.aea) per_scheme("aea", false);
    if (spec.outputs.sop_analytic) per_scheme("sop_analytic", false);
    if (spec.outputs.sop_empirical) per_scheme("sop_empirical", true);
    if (spec.outputs.baseline_sop) per_scheme("baseline_sop", false);
    return cols;
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

RowValues compute_row(const ExperimentSpec& spec, std::size_t row_index) {
    const double value = spec.values[row_index];
    const SystemConfig c = config_for(spec, value);
    c.validate();
    if (!(c.beta_m > 0.0))
        throw ConfigError("beta_m must be positive for design sweeps");

    const double mu = c.n_antennas == 1
                          ? std::log(1.0 / c.delta)
                          : solve_threshold(c.n_antennas, c.delta).mu;
    const bool feasible = c.p_max * mu > c.beta_m;

    RowValues row;
    row.axis_value = value;
    row.feasible = feasible;
    auto& cols = row.columns;
    if (spec.outputs.pt)
        cols["pt"] = transmission_probability(c.n_antennas, mu);

    const bool want_nast = spec.scheme != SchemeSel::Ast;
    const bool want_ast = spec.scheme != SchemeSel::Nast;
    const auto schemes = [&](auto&& fn) {
        if (want_nast) fn(Scheme::Nast, "_nast", 0);
        if (want_ast) fn(Scheme::Ast, "_ast", 1);
    };

    if (spec.outputs.aea)
        schemes([&](Scheme s, const std::string& sfx, int) {
            cols["aea" + sfx] = feasible ? overall_aea(c, s).value : 0.0;
        });
    if (spec.outputs.sop_analytic)
        schemes([&](Scheme s, const std::string& sfx, int) {
            cols["sop_analytic" + sfx] = feasible ? overall_sop(c, s) : 1.0;
        });
    if (spec.outputs.sop_empirical)
        schemes([&](Scheme s, const std::string& sfx, int qid) {
            if (!feasible) {
                cols["sop_empirical" + sfx] = 1.0;
                cols["sop_empirical" + sfx + "_se"] = 0.0;
                return;
            }
            McConfig mc = spec.mc;
            mc.seed = derive_seed(spec.mc.seed,
                                  row_index * 8 + kQuantitySalts[qid]);
            const McReport r = simulate_sop(c, s, mc);
            cols["sop_empirical" + sfx] = r.estimate;
            cols["sop_empirical" + sfx + "_se"] = r.std_error;
        });
    if (spec.outputs.baseline_sop)
        schemes([&](Scheme s, const std::string& sfx, int) {
            cols["baseline_sop" + sfx] =
                feasible ? ecsi_baseline(c, s).p_so : 1.0;
        });
    return row;
}

}  // namespace

void run_sweep(const ExperimentSpec& spec) {
    validate(spec);
    const std::string sidecar_path = spec.out_path + ".json";
    try {
        std::ofstream csv(spec.out_path, std::ios::trunc);
        if (!csv) throw IoError("cannot open output file: " + spec.out_path);

        const std::vector<std::string> cols = csv_columns(spec);
        for (std::size_t i = 0; i < cols.size(); ++i)
            csv << (i ? "," : "") << cols[i];
        csv << "\n";

        for (std::size_t r = 0; r < spec.values.size(); ++r) {
            const RowValues row = compute_row(spec, r);
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (i) csv << ",";
                if (i == 0)
                    csv << format_full(row.axis_value);
                else if (cols[i] == "feasible")
                    csv << (row.feasible ? 1 : 0);
                else
                    csv << format_full(row.columns.at(cols[i]));
            }
            csv << "\n";
            if (!csv) throw IoError("write failed: " + spec.out_path);
        }
        csv.close();

        std::ofstream sidecar(sidecar_path, std::ios::trunc);
        if (!sidecar) throw IoError("cannot open sidecar: " + sidecar_path);
        sidecar << spec_to_json(spec) << "\n";
        if (!sidecar) throw IoError("write failed: " + sidecar_path);
    } catch (...) {
        std::remove(spec.out_path.c_str());
        std::remove(sidecar_path.c_str());
        throw;
    }
}

std::string spec_to_json(const ExperimentSpec& spec) {
    json j;
    j["base"] = {{"n_antennas", spec.base.n_antennas},
                 {"p_max", spec.base.p_max},
                 {"sigma_e_sq", spec.base.sigma_e_sq},
                 {"delta", spec.base.delta},
                 {"beta_m", spec.base.beta_m}};
    j["scheme"] = to_string(spec.scheme);
    j["axis"] = to_string(spec.axis);
    j["values"] = spec.values;
    j["outputs"] = outputs_to_strings(spec.outputs);
    j["mc"] = {{"samples", spec.mc.samples},
               {"seed", spec.mc.seed},
               {"workers", spec.mc.workers},
               {"antithetic", spec.mc.antithetic}};
    j["out_path"] = spec.out_path;
    return j.dump(2);
}

ExperimentSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad experiment JSON: ") + e.what());
    }
    try {
        ExperimentSpec spec;
        const json& b = j.at("base");
        spec.base.n_antennas = b.at("n_antennas").get<int>();
        spec.base.p_max = b.at("p_max").get<double>();
        spec.base.sigma_e_sq = b.at("sigma_e_sq").get<double>();
        spec.base.delta = b.at("delta").get<double>();
        spec.base.beta_m = b.at("beta_m").get<double>();
        spec.scheme = scheme_from_string(j.at("scheme").get<std::string>());
        spec.axis = axis_from_string(j.at("axis").get<std::string>());
        spec.values = j.at("values").get<std::vector<double>>();
        spec.outputs = outputs_from_strings(
            j.at("outputs").get<std::vector<std::string>>());
        const json& m = j.at("mc");
        spec.mc.samples = m.at("samples").get<std::uint64_t>();
        spec.mc.seed = m.at("seed").get<std::uint64_t>();
        spec.mc.workers = m.at("workers").get<int>();
        spec.mc.antithetic = m.at("antithetic").get<bool>();
        spec.out_path = j.at("out_path").get<std::string>();
        return spec;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad experiment JSON: ") + e.what());
    }
}

ExperimentSpec spec_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return spec_from_json(ss.str());
}

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        };
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not key=value");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": " + s);
    }
}

}  // namespace

void apply_key_values(ExperimentSpec& spec,
                      const std::map<std::string, std::string>& kv) {
    for (const auto& [key, val] : kv) {
        if (key == "n_antennas")
            spec.base.n_antennas = static_cast<int>(parse_double(key, val));
        else if (key == "p_max" || key == "pmax")
            spec.base.p_max = parse_double(key, val);
        else if (key == "pmax_db")
            spec.base.p_max = db_to_linear(parse_double(key, val));
        else if (key == "sigma_e_sq")
            spec.base.sigma_e_sq = parse_double(key, val);
        else if (key == "delta")
            spec.base.delta = parse_double(key, val);
        else if (key == "beta_m")
            spec.base.beta_m = parse_double(key, val);
        else if (key == "rate_m")
            spec.base.beta_m = rate_to_threshold(parse_double(key, val));
        else if (key == "scheme")
            spec.scheme = scheme_from_string(val);
        else if (key == "axis")
            spec.axis = axis_from_string(val);
        else if (key == "values") {
            spec.values.clear();
            for (const std::string& v : split_list(val))
                spec.values.push_back(parse_double(key, v));
        } else if (key == "outputs")
            spec.outputs = outputs_from_strings(split_list(val));
        else if (key == "samples")
            spec.mc.samples =
                static_cast<std::uint64_t>(parse_double(key, val));
        else if (key == "seed")
            spec.mc.seed = static_cast<std::uint64_t>(parse_double(key, val));
        else if (key == "workers")
            spec.mc.workers = static_cast<int>(parse_double(key, val));
        else if (key == "antithetic")
            spec.mc.antithetic = val == "1" || val == "true" || val == "on";
        else if (key == "out")
            spec.out_path = val;
        else
            throw ConfigError("unknown config key: " + key);
    }
}

}  // namespace aea
