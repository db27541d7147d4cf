// cli.cpp: Subcommands, output assembly and exit-code mapping.

#include "dicke/cli.hpp"

#include "dicke/dynamics.hpp"
#include "dicke/errors.hpp"
#include "dicke/experiments.hpp"
#include "dicke/hpx.hpp"
#include "dicke/io.hpp"
#include "dicke/operators.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

namespace dicke {

namespace fs = std::filesystem;

namespace {

std::string utc_timestamp(bool compact) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, compact ? "%Y%m%dT%H%M%SZ" : "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

OutputFormat format_or(const RunConfig& c, OutputFormat fallback) { return c.format.value_or(fallback); }

// Provenance for CSV: optional timestamp, then the resolved config.
std::vector<std::string> csv_header(const RunConfig& c) {
    std::vector<std::string> lines;
    if (!c.deterministic) lines.push_back("generated: " + utc_timestamp(false));
    for (const auto& [k, v] : c.entries()) lines.push_back("config " + k + "=" + v);
    return lines;
}

json with_provenance(const RunConfig& c, json body) {
    json doc;
    json cfg = json::object();
    for (const auto& [k, v] : c.entries()) cfg[k] = v;
    doc["config"] = std::move(cfg);
    if (!c.deterministic) doc["generated"] = utc_timestamp(false);
    for (auto& [k, v] : body.items()) doc[k] = v;
    return doc;
}

CommandOutput emit(const RunConfig& c, OutputFormat fallback, std::string experiment, std::string axis,
                   const json& body, const std::string& csv_body) {
    CommandOutput o{std::move(experiment), std::move(axis), {}, {}};
    if (format_or(c, fallback) == OutputFormat::json) {
        o.body = with_provenance(c, body).dump(2) + "\n";
        o.extension = "json";
    } else {
        o.body = csv_body;
        o.extension = "csv";
    }
    return o;
}

double period(const ModelParams& p) { return 2.0 * std::numbers::pi / p.omega; }

TimeGrid time_grid(const RunConfig& c) {
    return TimeGrid{c.t_start, c.t_end.value_or(c.t_start + period(c.params)), c.steps};
}

int evolve_c_cutoff(const RunConfig& c) {
    if (c.c_cutoff) return *c.c_cutoff;
    return c.params.delta == 0.0 ? 0 : well_cutoff(c.params.n_atoms);
}

// Largest field amplitude the exact evolution can reach.
double evolve_reach(const RunConfig& c, int c_cutoff) {
    double start = 0.0;
    if (c.initial.kind == InitialState::Kind::coherent) start = std::abs(c.initial.beta);
    if (c.initial.kind == InitialState::Kind::cat) start = c.initial.cat.gamma;
    const auto& p = c.params;
    return start + 2.0 * p.drive_amplitude() + 2.0 * p.g / p.omega * c_cutoff;
}

StateVector initial_state(const RunConfig& c, const HilbertSpec& spec) {
    switch (c.initial.kind) {
        case InitialState::Kind::coherent: return coherent_state(spec, c.initial.beta, 0);
        case InitialState::Kind::cat: return cat_state(spec, c.initial.cat, 0);
        case InitialState::Kind::vacuum: break;
    }
    return fock_state(spec, 0, 0);
}

}  // namespace

// -------------------------------------------------------------- spectrum

CommandResult cmd_spectrum(const RunConfig& c) {
    const ModelParams& p = c.params;
    const int n_max = c.n_max.value_or(std::max(10, required_cutoff(p.drive_amplitude())));
    const int spin = c.c_cutoff.value_or(p.n_atoms);
    auto build = [&](int nm) {
        const HilbertSpec spec = with_spin_cutoff(build_spec(p.n_atoms, nm), spin);
        if (c.hamiltonian == "hp_sx") return std::make_pair(spec, hp_sx_hamiltonian(p, spec));
        if (spin != p.n_atoms) throw ValidationError("spectrum: the dicke Hamiltonian needs the full spin sector");
        return std::make_pair(spec, dicke_hamiltonian(p, spec));
    };
    auto solve = [](const OperatorMatrix& h, std::optional<int> k) {
        if (k && *k <= 8 && h.dim() > 1500) return lowest_eigenpairs(h, *k);
        return diagonalize(h, k);
    };
    const auto [spec, h] = build(n_max);
    std::optional<int> k = c.levels;
    if (k && *k > h.dim()) throw ValidationError("spectrum: levels exceeds the space dimension");
    const SpectrumResult spectrum = solve(h, k);

    const int audited = static_cast<int>(std::min<Eigen::Index>(4, spectrum.size()));
    auto compute = [&](int nm) -> AuditSample {
        if (nm == n_max) return {spectrum.eigenvalues[0], 0.0};
        const SpectrumResult s = solve(build(nm).second, audited);
        return {s.eigenvalues[0], 0.0};
    };
    // the audit compares the lowest `audited` levels; the headline value is E0
    CutoffAudit audit = cutoff_audit(compute, n_max, AuditKind::spectrum);
    if (audited > 1) {
        const SpectrumResult doubled = solve(build(2 * n_max).second, audited);
        for (int i = 0; i < audited; ++i) {
            audit.delta = std::max(audit.delta, std::abs(doubled.eigenvalues[i] - spectrum.eigenvalues[i]));
        }
        audit.pass = audit.delta < audit.tolerance;
    }

    json body = to_json(spectrum, p, spec);
    body["hamiltonian"] = c.hamiltonian;
    body["audit"] = to_json(audit);

    TimeSeries table;
    table.columns = {"k", "energy"};
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) table.rows.push_back({double(i), spectrum.eigenvalues[i]});
    auto header = csv_header(c);
    header.push_back("residual: " + format_double(spectrum.residual));
    header.push_back("audit_pass: " + std::string(audit.pass ? "1" : "0") + " audit_delta: " + format_double(audit.delta));

    CommandResult r;
    r.outputs.push_back(emit(c, OutputFormat::json, "spectrum", "levels", body, to_csv(table, header)));
    r.exit_code = audit.pass ? exit_ok : exit_audit;
    return r;
}

// ---------------------------------------------------------------- evolve

CommandResult cmd_evolve(const RunConfig& c) {
    const ModelParams& p = c.params;
    const int cc = evolve_c_cutoff(c);
    const int n_max = c.n_max.value_or(required_cutoff(evolve_reach(c, cc)));
    const TimeGrid grid = time_grid(c);

    auto run = [&](int nm) {
        const HilbertSpec spec = with_spin_cutoff(build_spec(p.n_atoms, nm), cc);
        return evolve_exact(hp_sx_hamiltonian(p, spec), initial_state(c, spec), grid);
    };
    const StateTrajectory traj = run(n_max);

    TimeSeries ts;
    ts.columns = {"t", "photon_number", "field_re", "field_im", "norm"};
    using Kind = InitialState::Kind;
    switch (c.initial.kind) {
        case Kind::vacuum:
            ts.columns.insert(ts.columns.end(), {"photon_number_analytic", "beta_re", "beta_im", "xi", "fidelity_analytic"});
            break;
        case Kind::coherent:
            ts.columns.insert(ts.columns.end(), {"photon_number_analytic", "center_re", "center_im", "phase", "fidelity_analytic"});
            break;
        case Kind::cat:
            ts.columns.insert(ts.columns.end(), {"xi", "phi1", "phi2", "branch_distance", "visibility", "macro_ratio",
                                                 "fidelity_analytic"});
            break;
    }
    double ratio = 0.0;
    if (c.initial.kind == Kind::cat) {
        ratio = macro_ratio(cat_evolution(p, c.initial.cat, TimeGrid{0.0, period(p), 256}));
    }
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        const StateVector& psi = traj.states[k];
        const cplx a = field_expectation(psi);
        std::vector<double> row{t, photon_number(psi), a.real(), a.imag(), psi.norm()};
        switch (c.initial.kind) {
            case Kind::vacuum: {
                const QampRecord q = qamp_record(p, t);
                const double f = fidelity(qamp_state(p, psi.spec, t, CutoffPolicy::warn), psi);
                row.insert(row.end(), {q.photon_number, q.beta.real(), q.beta.imag(), q.xi, f});
                break;
            }
            case Kind::coherent: {
                const CoherentEvolution e = evolve_coherent(p, c.initial.beta, t);
                const double f = fidelity(coherent_state(psi.spec, e.center, 0, CutoffPolicy::warn), psi);
                row.insert(row.end(), {std::norm(e.center), e.center.real(), e.center.imag(), e.phase, f});
                break;
            }
            case Kind::cat: {
                const CatEvolutionRecord r = cat_record(p, c.initial.cat, t);
                const double f = fidelity(cat_state_at(p, psi.spec, c.initial.cat, t, CutoffPolicy::warn), psi);
                row.insert(row.end(), {r.xi, r.phi1, r.phi2, r.branch_distance, branch_visibility(r), ratio, f});
                break;
            }
        }
        ts.rows.push_back(std::move(row));
    }

    auto compute = [&](int nm) {
        AuditSample s;
        const StateTrajectory tr = nm == n_max ? traj : run(nm);
        for (const auto& psi : tr.states) {
            s.value = std::max(s.value, photon_number(psi));
            s.tail_weight = std::max(s.tail_weight, psi.tail_weight(2));
        }
        return s;
    };
    CutoffAudit audit = cutoff_audit(compute, n_max, AuditKind::spectrum);

    json body{{"params", to_json(p)},
              {"spec", to_json(traj.states.front().spec)},
              {"initial", c.initial.to_string()},
              {"series", to_json(ts)},
              {"audit", to_json(audit)}};
    auto header = csv_header(c);
    header.push_back("n_max: " + std::to_string(n_max) + " c_cutoff: " + std::to_string(cc));
    header.push_back("audit_pass: " + std::string(audit.pass ? "1" : "0") + " audit_delta: " + format_double(audit.delta));

    CommandResult r;
    r.outputs.push_back(emit(c, OutputFormat::csv, "evolve", "t", body, to_csv(ts, header)));
    r.exit_code = audit.pass ? exit_ok : exit_audit;
    return r;
}

// ----------------------------------------------------------------- sweep

CommandResult cmd_sweep(const RunConfig& c) {
    CommandResult r;
    const ModelParams& p = c.params;
    const auto header = csv_header(c);
    auto add = [&](const SweepResult& s, const json& extra = nullptr) {
        json body = to_json(s);
        if (!extra.is_null()) body["curves"] = extra;
        r.outputs.push_back(emit(c, OutputFormat::csv, s.experiment, s.axis, body, to_csv(s, header)));
        r.warnings += s.failed_audits();
    };

    if (c.experiment == "convergence_N" || c.experiment == "convergence_g") {
        ConvergenceOptions opt{c.c_cutoff, c.n_max};
        if (c.experiment == "convergence_N") {
            if (c.n_list.empty()) throw ValidationError("sweep: convergence_N needs n_list");
            add(convergence_in_N(p, c.n_list, opt));
        } else {
            if (c.g_list.empty()) throw ValidationError("sweep: convergence_g needs g_list");
            add(convergence_in_g(p, c.g_list, opt));
        }
    } else if (c.experiment == "phase_transition") {
        if (c.n_list.empty() || c.lambda_grid.empty()) {
            throw ValidationError("sweep: phase_transition needs n_list and lambda_grid");
        }
        const PhaseScanResult scan = phase_transition_scan(p, c.lambda_grid, c.n_list, PhaseScanOptions{c.n_max});
        json curves = json::array();
        SweepResult flat;
        flat.experiment = "phase_transition";
        flat.axis = "lambda";
        for (const auto& curve : scan.curves) {
            curves.push_back(to_json(curve));
            flat.points.insert(flat.points.end(), curve.points.begin(), curve.points.end());
        }
        if (format_or(c, OutputFormat::csv) == OutputFormat::json) {
            add(scan.summary, curves);
        } else {
            add(scan.summary);
            add(flat);
        }
    } else {
        throw ValidationError("sweep: experiment must be convergence_N, convergence_g or phase_transition");
    }
    return r;
}

// ----------------------------------------------------------------- audit

CommandResult cmd_audit(const RunConfig& c) {
    CutoffAudit audit;
    std::string target = c.audit_target;
    if (target == "qamp") {
        const int n_max = c.n_max.value_or(required_cutoff(2.0 * c.params.drive_amplitude()));
        audit = audit_qamp(c.params, n_max);
    } else if (target.rfind("coherent:", 0) == 0) {
        const cplx beta = InitialState::parse(target).beta;
        audit = audit_coherent_state(beta, c.n_max.value_or(required_cutoff(std::abs(beta))));
    } else {
        throw ValidationError("audit: audit_target must be qamp or coherent:re[,im]");
    }
    TimeSeries row;
    row.columns = {"n_max", "doubled_n_max", "base_value", "doubled_value", "delta", "tolerance", "tail_weight", "pass"};
    row.rows.push_back({double(audit.n_max), double(audit.doubled_n_max), audit.base_value, audit.doubled_value,
                        audit.delta, audit.tolerance, audit.tail_weight, audit.pass ? 1.0 : 0.0});
    json body{{"target", target}, {"audit", to_json(audit)}};
    CommandResult r;
    r.outputs.push_back(emit(c, OutputFormat::csv, "audit", "n_max", body, to_csv(row, csv_header(c))));
    r.exit_code = audit.pass ? exit_ok : exit_audit;
    return r;
}

// ------------------------------------------------------------------ main

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dicke model / Holstein-Primakoff 1/N expansion lab", "dicke"};
    app.require_subcommand(1);
    std::string config_path, out_path, format;
    std::vector<std::string> overrides;
    bool deterministic = false;
    const char* names[] = {"spectrum", "evolve", "sweep", "audit"};
    const char* blurbs[] = {"eigenvalues of the Dicke or S_x-frame Hamiltonian",
                            "exact evolution against the closed-form trajectories",
                            "convergence sweeps and the transition scan", "n_max doubling audit"};
    for (int i = 0; i < 4; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--set", overrides, "override a config key (key=value; empty value clears)");
        sub->add_option("--out", out_path, "output file, or directory for {experiment}-{axis}-{timestamp} names");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--deterministic", deterministic, "omit timestamps so identical configs give identical bytes");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_validation;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        ConfigMap map = config_path.empty() ? ConfigMap{} : load_config_file(config_path);
        apply_overrides(map, overrides);
        if (!out_path.empty()) map["out"] = out_path;
        if (!format.empty()) map["format"] = format;
        if (deterministic) map["deterministic"] = "true";
        const RunConfig config = resolve_config(map);

        CommandResult result;
        if (command == "spectrum") {
            result = cmd_spectrum(config);
        } else if (command == "evolve") {
            result = cmd_evolve(config);
        } else if (command == "sweep") {
            result = cmd_sweep(config);
        } else {
            result = cmd_audit(config);
        }

        const bool to_dir = !config.out.empty() && (fs::is_directory(config.out) || config.out.back() == '/');
        const std::string stamp = config.deterministic ? "" : "-" + utc_timestamp(true);
        for (std::size_t i = 0; i < result.outputs.size(); ++i) {
            const auto& o = result.outputs[i];
            if (config.out.empty()) {
                out << o.body;
                continue;
            }
            fs::path path;
            if (to_dir) {
                fs::create_directories(config.out);
                path = fs::path(config.out) / (o.experiment + "-" + o.axis + stamp + "." + o.extension);
            } else {
                path = config.out;
                // extra documents of one command sit next to the first
                if (i > 0) path.replace_filename(path.stem().string() + "-" + o.axis + path.extension().string());
            }
            std::ofstream f(path, std::ios::binary);
            if (!f) throw ValidationError("cannot write '" + path.string() + "'");
            f << o.body;
            err << "wrote " << path.string() << '\n';
        }
        if (result.warnings > 0) {
            err << "warning: " << result.warnings << " point(s) failed the cutoff audit and were excluded from fits\n";
        }
        if (result.exit_code == exit_audit) err << "error: cutoff audit failed\n";
        return result.exit_code;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const CutoffError& e) {
        err << "cutoff error: " << e.what() << '\n';
        return exit_audit;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

}  // namespace dicke
