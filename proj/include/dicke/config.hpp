// config.hpp: Run configuration: a key = value text file plus overrides.
//
// Precedence: command-line overrides win over file values, which win over
// defaults. An override with an empty value removes the key, so a file that
// sets g can be switched to lambda with `--set g= --set lambda=0.7`.
//
// Recognized keys (see README for the full table):
//   n_atoms delta omega g lambda n_max c_cutoff hamiltonian levels
//   initial t_start t_end steps experiment n_list g_list lambda_grid
//   audit_target out format deterministic

#pragma once

#include "dicke/hilbert.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dicke {

using ConfigMap = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment. Throws ValidationError on
/// malformed lines, unknown keys or duplicates.
ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

/// Applies "key=value" overrides in order.
void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides);

struct InitialState {
    enum class Kind { vacuum, coherent, cat };
    Kind kind{Kind::vacuum};
    cplx beta{0.0};  // coherent
    CatParams cat;   // cat

    /// "vacuum" | "coherent:re[,im]" | "cat:gamma,phi"
    static InitialState parse(const std::string& text);
    std::string to_string() const;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    ModelParams params;
    bool lambda_given{false};  // which of g / lambda the user supplied
    std::optional<int> n_max;  // nullopt = auto
    std::optional<int> c_cutoff;
    std::string hamiltonian{"dicke"};  // spectrum: dicke | hp_sx
    std::optional<int> levels;
    InitialState initial;
    double t_start{0.0};
    std::optional<double> t_end;  // default one field period
    int steps{64};
    std::string experiment;
    std::vector<int> n_list;
    std::vector<double> g_list;
    std::vector<double> lambda_grid;
    std::string audit_target{"qamp"};
    std::string out;
    std::optional<OutputFormat> format;  // default: json for spectrum, csv otherwise
    bool deterministic{false};

    /// Resolved key/value pairs for provenance, in a fixed order.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Throws ValidationError unless exactly one of g / lambda is present and all
/// values parse and validate.
RunConfig resolve_config(const ConfigMap& map);

/// "a,b,c" or "start:stop:step" (inclusive of stop within step/1e6).
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace dicke
