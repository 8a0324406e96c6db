#pragma once

#include <map>
#include <string>
#include <vector>

#include "aea/montecarlo.hpp"

namespace aea {

enum class Axis { NAntennas, Delta, PMaxDb, BetaM };
enum class SchemeSel { Nast, Ast, Both };

/// Requested output columns. Empirical quantities carry a std-error column.
struct Outputs {
    bool aea = false;
    bool sop_analytic = false;
    bool sop_empirical = false;
    bool pt = false;
    bool baseline_sop = false;
};

/// A figure-style experiment: sweep one scenario parameter and tabulate the
/// requested quantities per scheme. Values for the PMaxDb axis are in dB and
/// converted per point; everything else is linear.
struct ExperimentSpec {
    SystemConfig base;
    SchemeSel scheme = SchemeSel::Both;
    Axis axis = Axis::NAntennas;
    std::vector<double> values;
    Outputs outputs;
    McConfig mc;
    std::string out_path;
};

std::string to_string(Axis a);
std::string to_string(SchemeSel s);
Axis axis_from_string(const std::string& s);
SchemeSel scheme_from_string(const std::string& s);
Outputs outputs_from_strings(const std::vector<std::string>& names);
std::vector<std::string> outputs_to_strings(const Outputs& o);

/// Throws ConfigError for empty sweeps or values outside the axis domain.
void validate(const ExperimentSpec& spec);

/// Column names, a pure function of the requested outputs and schemes.
std::vector<std::string> csv_columns(const ExperimentSpec& spec);

/// Runs the sweep and writes the CSV plus a JSON sidecar (out_path + ".json")
/// holding the full spec for reproduction. Rows appear in the order of
/// `values`; per-row Monte Carlo seeds derive from (mc.seed, row, quantity),
/// so output bytes are independent of the worker count. Infeasible points
/// report zero ability and unit outage probability without simulating.
/// Partial files are removed on failure.
void run_sweep(const ExperimentSpec& spec);

/// Sidecar (de)serialization.
std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);
ExperimentSpec spec_from_json_file(const std::string& path);

/// Plain-text key=value config files ('#' comments). Returns the parsed map;
/// apply_key_values folds recognized keys into the spec and throws
/// ConfigError for unknown keys.
std::map<std::string, std::string> parse_key_value_file(const std::string& path);
void apply_key_values(ExperimentSpec& spec,
                      const std::map<std::string, std::string>& kv);

/// 17-significant-digit, locale-independent float formatting used for all
/// CSV payloads.
std::string format_full(double v);

}  // namespace aea
