// config.cpp: Run configuration parsing and resolution.

#include "dicke/config.hpp"

#include "dicke/errors.hpp"
#include "dicke/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace dicke {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "n_atoms",    "delta",     "omega",     "g",          "lambda", "n_max",        "c_cutoff",
        "hamiltonian", "levels",   "initial",   "t_start",    "t_end",  "steps",        "experiment",
        "n_list",     "g_list",    "lambda_grid", "audit_target", "out", "format",      "deterministic"};
    return keys;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

void check_key(const std::string& key) {
    if (!known_keys().count(key)) throw ValidationError("config: unknown key '" + key + "'");
}

double to_real(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ValidationError("config: " + what + " expects a number, got '" + text + "'");
    }
    return v;
}

int to_int(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || v < -1'000'000'000 || v > 1'000'000'000) {
        throw ValidationError("config: " + what + " expects an integer, got '" + text + "'");
    }
    return static_cast<int>(v);
}

bool to_bool(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ValidationError("config: " + what + " expects true/false, got '" + text + "'");
}

std::optional<int> to_auto_int(const std::string& text, const std::string& what) {
    if (trim(text) == "auto") return std::nullopt;
    const int v = to_int(text, what);
    if (v < 0) throw ValidationError("config: " + what + " must be >= 0");
    return v;
}

template <class T>
std::string join(const std::vector<T>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        if constexpr (std::is_same_v<T, double>) {
            s += format_double(xs[i]);
        } else {
            s += std::to_string(xs[i]);
        }
    }
    return s;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap map;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        check_key(key);
        if (map.count(key)) throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        map[key] = trim(line.substr(eq + 1));
    }
    return map;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw ValidationError("override '" + o + "' is not key=value");
        const std::string key = trim(o.substr(0, eq));
        const std::string value = trim(o.substr(eq + 1));
        check_key(key);
        if (value.empty()) {
            map.erase(key);
        } else {
            map[key] = value;
        }
    }
}

InitialState InitialState::parse(const std::string& text) {
    const std::string t = trim(text);
    InitialState s;
    if (t == "vacuum") return s;
    const auto colon = t.find(':');
    const std::string kind = t.substr(0, colon);
    const auto args = colon == std::string::npos ? std::vector<std::string>{} : split(t.substr(colon + 1), ',');
    if (kind == "coherent" && (args.size() == 1 || args.size() == 2)) {
        s.kind = Kind::coherent;
        s.beta = {to_real(args[0], "coherent beta"), args.size() == 2 ? to_real(args[1], "coherent beta") : 0.0};
        return s;
    }
    if (kind == "cat" && args.size() == 2) {
        s.kind = Kind::cat;
        s.cat = {to_real(args[0], "cat gamma"), to_real(args[1], "cat phi")};
        s.cat.validate();
        return s;
    }
    throw ValidationError("config: initial must be vacuum | coherent:re[,im] | cat:gamma,phi, got '" + text + "'");
}

std::string InitialState::to_string() const {
    switch (kind) {
        case Kind::coherent: return "coherent:" + format_double(beta.real()) + "," + format_double(beta.imag());
        case Kind::cat: return "cat:" + format_double(cat.gamma) + "," + format_double(cat.phi);
        case Kind::vacuum: break;
    }
    return "vacuum";
}

std::vector<double> parse_real_list(const std::string& text) {
    const std::string t = trim(text);
    std::vector<double> out;
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() != 3) throw ValidationError("config: range must be start:stop:step");
        const double a = to_real(parts[0], "range start");
        const double b = to_real(parts[1], "range stop");
        const double h = to_real(parts[2], "range step");
        if (!(h > 0.0) || b < a) throw ValidationError("config: range needs step > 0 and stop >= start");
        const auto count = static_cast<long>(std::floor((b - a) / h + 1e-6));
        if (count > 100000) throw ValidationError("config: range has too many points");
        // a + k h rather than accumulation keeps the grid reproducible
        for (long k = 0; k <= count; ++k) out.push_back(a + static_cast<double>(k) * h);
        return out;
    }
    for (const auto& item : split(t, ',')) out.push_back(to_real(item, "list entry"));
    if (out.empty()) throw ValidationError("config: empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split(trim(text), ',')) out.push_back(to_int(item, "list entry"));
    if (out.empty()) throw ValidationError("config: empty list");
    return out;
}

RunConfig resolve_config(const ConfigMap& map) {
    auto get = [&](const std::string& k) -> std::optional<std::string> {
        const auto it = map.find(k);
        if (it == map.end()) return std::nullopt;
        return it->second;
    };
    RunConfig c;
    const int n_atoms = get("n_atoms") ? to_int(*get("n_atoms"), "n_atoms") : 1;
    const double delta = get("delta") ? to_real(*get("delta"), "delta") : 1.0;
    const double omega = get("omega") ? to_real(*get("omega"), "omega") : 1.0;
    const auto g = get("g");
    const auto lam = get("lambda");
    if (g.has_value() == lam.has_value()) throw ValidationError("config: give exactly one of g and lambda");
    c.lambda_given = lam.has_value();
    c.params = lam ? ModelParams::from_lambda(n_atoms, delta, omega, to_real(*lam, "lambda"))
                   : ModelParams::from_g(n_atoms, delta, omega, to_real(*g, "g"));

    if (auto v = get("n_max")) {
        c.n_max = to_auto_int(*v, "n_max");
        if (c.n_max && *c.n_max < 1) throw ValidationError("config: n_max must be >= 1");
    }
    if (auto v = get("c_cutoff")) {
        c.c_cutoff = to_auto_int(*v, "c_cutoff");
        if (c.c_cutoff && *c.c_cutoff > n_atoms) throw ValidationError("config: c_cutoff exceeds n_atoms");
    }
    if (auto v = get("hamiltonian")) {
        c.hamiltonian = *v;
        if (c.hamiltonian != "dicke" && c.hamiltonian != "hp_sx") {
            throw ValidationError("config: hamiltonian must be dicke or hp_sx");
        }
    }
    if (auto v = get("levels")) {
        c.levels = to_auto_int(*v, "levels");
        if (c.levels && *c.levels < 1) throw ValidationError("config: levels must be >= 1");
    }
    if (auto v = get("initial")) c.initial = InitialState::parse(*v);
    if (auto v = get("t_start")) c.t_start = to_real(*v, "t_start");
    if (auto v = get("t_end")) c.t_end = to_real(*v, "t_end");
    if (auto v = get("steps")) c.steps = to_int(*v, "steps");
    if (auto v = get("experiment")) c.experiment = *v;
    if (auto v = get("n_list")) c.n_list = parse_int_list(*v);
    if (auto v = get("g_list")) c.g_list = parse_real_list(*v);
    if (auto v = get("lambda_grid")) c.lambda_grid = parse_real_list(*v);
    if (auto v = get("audit_target")) c.audit_target = *v;
    if (auto v = get("out")) c.out = *v;
    if (auto v = get("format")) {
        if (*v == "csv") {
            c.format = OutputFormat::csv;
        } else if (*v == "json") {
            c.format = OutputFormat::json;
        } else {
            throw ValidationError("config: format must be csv or json");
        }
    }
    if (auto v = get("deterministic")) c.deterministic = to_bool(*v, "deterministic");
    return c;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    std::vector<std::pair<std::string, std::string>> e{
        {"n_atoms", std::to_string(params.n_atoms)},
        {"delta", format_double(params.delta)},
        {"omega", format_double(params.omega)},
        {"g", format_double(params.g)},
        {"lambda", format_double(params.lambda())},
        {"coupling_given", lambda_given ? "lambda" : "g"},
        {"n_max", n_max ? std::to_string(*n_max) : "auto"},
        {"c_cutoff", c_cutoff ? std::to_string(*c_cutoff) : "auto"},
        {"hamiltonian", hamiltonian},
        {"levels", levels ? std::to_string(*levels) : "all"},
        {"initial", initial.to_string()},
        {"t_start", format_double(t_start)},
        {"t_end", t_end ? format_double(*t_end) : "period"},
        {"steps", std::to_string(steps)},
        {"experiment", experiment},
        {"n_list", join(n_list)},
        {"g_list", join(g_list)},
        {"lambda_grid", join(lambda_grid)},
        {"audit_target", audit_target},
        {"format", !format ? "default" : *format == OutputFormat::csv ? "csv" : "json"},
        {"deterministic", deterministic ? "true" : "false"}};
    return e;
}

}  // namespace dicke
