// experiments.cpp: Convergence sweeps, transition scan and cutoff audits.

#include "dicke/experiments.hpp"

#include "dicke/dynamics.hpp"
#include "dicke/eigensolver.hpp"
#include "dicke/errors.hpp"
#include "dicke/hpx.hpp"
#include "dicke/operators.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dicke {

namespace {

SpectrumResult ground_state(const OperatorMatrix& h) {
    return h.dim() <= 1500 ? diagonalize(h, 1) : lowest_eigenpairs(h, 1);
}

void attach_fits(SweepResult& out, const std::string& metric) {
    std::vector<double> xs, ys;
    for (const auto& p : out.points) {
        const double y = p.metric(metric);
        if (p.audit.pass && y > 0.0 && p.value > 0.0) {
            xs.push_back(p.value);
            ys.push_back(y);
        }
    }
    if (xs.size() >= 2) out.fit = fit_power_law(xs, ys);
    if (xs.size() >= 3) {
        auto trimmed = fit_power_law({xs.begin() + 1, xs.end()}, {ys.begin() + 1, ys.end()});
        trimmed.dropped_first = true;
        out.fit_trimmed = trimmed;
    }
}

SweepPoint convergence_point(const ModelParams& params, double axis_value, const ConvergenceOptions& opt) {
    const int c = opt.c_cutoff ? std::min(*opt.c_cutoff, params.n_atoms) : well_cutoff(params.n_atoms);
    const int n_max = opt.n_max ? *opt.n_max : default_convergence_n_max(params, c);
    GroundStateReport base;
    auto compute = [&](int nm) {
        GroundStateReport r = ground_state_vs_leading(params, c, nm);
        if (nm == n_max) base = r;
        return AuditSample{r.infidelity, r.tail_weight};
    };
    SweepPoint p;
    p.value = axis_value;
    p.audit = cutoff_audit(compute, n_max, AuditKind::fidelity);
    p.metrics = {{"n_atoms", static_cast<double>(params.n_atoms)},
                 {"g", params.g},
                 {"delta", params.delta},
                 {"omega", params.omega},
                 {"c_cutoff", static_cast<double>(c)},
                 {"n_max", static_cast<double>(n_max)},
                 {"infidelity", base.infidelity},
                 {"ground_energy", base.ground_energy},
                 {"leading_energy", base.leading_energy},
                 {"tail_weight", base.tail_weight}};
    return p;
}

}  // namespace

// ----------------------------------------------------------------- audit

double audit_tolerance(AuditKind kind) { return kind == AuditKind::spectrum ? 1e-8 : 1e-6; }

CutoffAudit cutoff_audit(const std::function<AuditSample(int)>& compute, int n_max, AuditKind kind) {
    if (n_max < 1) throw ValidationError("cutoff_audit: n_max must be >= 1");
    CutoffAudit a;
    a.n_max = n_max;
    a.doubled_n_max = 2 * n_max;
    a.tolerance = audit_tolerance(kind);
    const AuditSample base = compute(n_max);
    const AuditSample doubled = compute(2 * n_max);
    a.base_value = base.value;
    a.doubled_value = doubled.value;
    a.tail_weight = base.tail_weight;
    a.delta = std::abs(doubled.value - base.value);
    a.pass = std::isfinite(a.delta) && a.delta < a.tolerance;
    return a;
}

CutoffAudit audit_coherent_state(cplx beta, int n_max) {
    auto compute = [beta](int nm) {
        const HilbertSpec spec = with_spin_cutoff(build_spec(1, nm), 0);
        const StateVector psi = coherent_state(spec, beta, 0, CutoffPolicy::warn);
        return AuditSample{photon_number(psi), psi.tail_weight(2)};
    };
    return cutoff_audit(compute, n_max, AuditKind::spectrum);
}

CutoffAudit audit_qamp(const ModelParams& params, int n_max, int samples) {
    const int c = params.delta == 0.0 ? 0 : well_cutoff(params.n_atoms);
    const double period = 2.0 * std::numbers::pi / params.omega;
    auto compute = [&](int nm) {
        const HilbertSpec spec = with_spin_cutoff(build_spec(params.n_atoms, nm), c);
        const auto traj = evolve_exact(hp_sx_hamiltonian(params, spec), fock_state(spec, 0, 0),
                                       TimeGrid{0.0, period, samples});
        AuditSample s;
        for (const auto& psi : traj.states) {
            s.value = std::max(s.value, photon_number(psi));
            s.tail_weight = std::max(s.tail_weight, psi.tail_weight(2));
        }
        return s;
    };
    return cutoff_audit(compute, n_max, AuditKind::spectrum);
}

// ----------------------------------------------------------------- sweeps

double SweepPoint::metric(const std::string& name) const {
    for (const auto& m : metrics) {
        if (m.name == name) return m.value;
    }
    throw ValidationError("sweep point has no metric '" + name + "'");
}

int SweepResult::failed_audits() const {
    return static_cast<int>(std::count_if(points.begin(), points.end(),
                                          [](const SweepPoint& p) { return !p.audit.pass; }));
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_power_law: need >= 2 paired points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("fit_power_law: values must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw ValidationError("fit_power_law: axis values are all equal");
    PowerLawFit f;
    f.points = static_cast<int>(n);
    f.exponent = sxy / sxx;
    f.prefactor = std::exp(my - f.exponent * mx);
    if (n > 2) {
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ly[i] - (my + f.exponent * (lx[i] - mx));
            sse += r * r;
        }
        f.std_error = std::sqrt(sse / (n - 2) / sxx);
        const boost::math::students_t dist(static_cast<double>(n - 2));
        const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
        f.ci_low = f.exponent - t * f.std_error;
        f.ci_high = f.exponent + t * f.std_error;
    } else {
        f.ci_low = f.ci_high = f.exponent;
    }
    return f;
}

int default_convergence_n_max(const ModelParams& params, int c_cutoff) {
    // Sector m sits at displacement -2gm/ω relative to the D(Ng/ω) basis;
    // sectors beyond m = 2 carry negligible weight.
    const double reach = 2.0 * params.g / params.omega * std::min(c_cutoff, 2);
    return std::max(24, required_cutoff(reach));
}

GroundStateReport ground_state_vs_leading(const ModelParams& params, int c_cutoff, int n_max) {
    params.validate();
    GroundStateReport r;
    r.spec = with_field_shift(with_spin_cutoff(build_spec(params.n_atoms, n_max), c_cutoff),
                              params.drive_amplitude());
    const OperatorMatrix h = hp_sx_hamiltonian(params, r.spec);
    const SpectrumResult gs = ground_state(h);
    const StateVector psi{r.spec, gs.eigenvectors.col(0)};
    // |0;0> = |0>_- D(Ng/ω)|0>, the vacuum of the shifted basis
    const StateVector lead = fock_state(r.spec, 0, 0);
    r.infidelity = std::max(0.0, 1.0 - fidelity(lead, psi));
    r.ground_energy = gs.eigenvalues[0];
    r.leading_energy = leading_energy(params, 0, 0);
    r.tail_weight = psi.tail_weight(2);
    return r;
}

SweepResult convergence_in_N(const ModelParams& base, const std::vector<int>& n_list,
                             const ConvergenceOptions& options) {
    if (n_list.empty()) throw ValidationError("convergence_in_N: empty N list");
    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());
    SweepResult out;
    out.experiment = "convergence_N";
    out.axis = "N";
    for (int N : ns) {
        const ModelParams p = ModelParams::from_g(N, base.delta, base.omega, base.g);
        out.points.push_back(convergence_point(p, N, options));
    }
    attach_fits(out, "infidelity");
    return out;
}

SweepResult convergence_in_g(const ModelParams& base, const std::vector<double>& g_list,
                             const ConvergenceOptions& options) {
    if (g_list.empty()) throw ValidationError("convergence_in_g: empty g list");
    std::vector<double> gs = g_list;
    std::sort(gs.begin(), gs.end());
    SweepResult out;
    out.experiment = "convergence_g";
    out.axis = "g";
    for (double g : gs) {
        const ModelParams p = ModelParams::from_g(base.n_atoms, base.delta, base.omega, g);
        out.points.push_back(convergence_point(p, g, options));
    }
    attach_fits(out, "infidelity");
    return out;
}

// ------------------------------------------------------ phase transition

int default_scan_n_max(const ModelParams& params) {
    const double lam = params.lambda();
    const double lc = params.critical_lambda();
    double alpha = 0.0;
    if (lam > lc && lam > 0.0) {
        const double mu = lc * lc / (lam * lam);
        alpha = std::sqrt(static_cast<double>(params.n_atoms)) * lam / params.omega *
                std::sqrt(std::max(0.0, 1.0 - mu * mu));
    }
    return std::max(24, required_cutoff(alpha + 2.0));
}

PhaseScanResult phase_transition_scan(const ModelParams& tmpl, const std::vector<double>& lambda_grid,
                                      const std::vector<int>& n_list, const PhaseScanOptions& options) {
    tmpl.validate();
    if (lambda_grid.size() < 5) throw ValidationError("phase_transition_scan: need at least 5 λ values");
    if (n_list.empty()) throw ValidationError("phase_transition_scan: empty N list");
    std::vector<double> lams = lambda_grid;
    std::sort(lams.begin(), lams.end());
    if (std::adjacent_find(lams.begin(), lams.end()) != lams.end()) {
        throw ValidationError("phase_transition_scan: repeated λ values");
    }
    const double lc = tmpl.critical_lambda();
    if (!(lams.front() < lc && lams.back() > lc)) {
        throw ValidationError("phase_transition_scan: λ grid does not span λ_c");
    }
    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());

    PhaseScanResult out;
    out.summary.experiment = "phase_transition";
    out.summary.axis = "N";
    for (int N : ns) {
        const int n_max = options.n_max ? *options.n_max
                                        : default_scan_n_max(ModelParams::from_lambda(N, tmpl.delta, tmpl.omega, lams.back()));
        SweepResult curve;
        curve.experiment = "phase_transition";
        curve.axis = "lambda";
        std::vector<double> energy;
        for (double lam : lams) {
            const ModelParams p = ModelParams::from_lambda(N, tmpl.delta, tmpl.omega, lam);
            double e0 = 0.0, photons = 0.0, sz = 0.0, tail = 0.0;
            auto compute = [&](int nm) {
                const HilbertSpec spec = build_spec(N, nm);
                const SpectrumResult gs = lowest_eigenpairs(dicke_hamiltonian(p, spec), 1);
                if (nm == n_max) {
                    const StateVector psi{spec, gs.eigenvectors.col(0)};
                    e0 = gs.eigenvalues[0];
                    photons = photon_number(psi);
                    for (int ms = 0; ms <= N; ++ms) {
                        sz += (ms - 0.5 * N) * psi.amplitudes.segment(spec.index(ms, 0), spec.field_dim()).squaredNorm();
                    }
                    tail = psi.tail_weight(2);
                }
                return AuditSample{gs.eigenvalues[0], 0.0};
            };
            SweepPoint pt;
            pt.value = lam;
            pt.audit = cutoff_audit(compute, n_max, AuditKind::spectrum);
            pt.audit.tail_weight = tail;
            pt.metrics = {{"n_atoms", static_cast<double>(N)},
                          {"n_max", static_cast<double>(n_max)},
                          {"energy_per_atom", e0 / N},
                          {"photons_per_atom", photons / N},
                          {"sz_per_atom", sz / N}};
            energy.push_back(e0 / N);
            curve.points.push_back(std::move(pt));
        }
        // three-point second derivative on a possibly non-uniform grid
        std::size_t best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lams.size(); ++i) {
            double d2 = std::numeric_limits<double>::quiet_NaN();
            if (i > 0 && i + 1 < lams.size()) {
                const double h1 = lams[i] - lams[i - 1];
                const double h2 = lams[i + 1] - lams[i];
                d2 = 2.0 * (h1 * energy[i + 1] - (h1 + h2) * energy[i] + h2 * energy[i - 1]) /
                     (h1 * h2 * (h1 + h2));
                if (-d2 > best_val) {
                    best_val = -d2;
                    best = i;
                }
            }
            curve.points[i].metrics.push_back({"curvature", d2});
        }
        if (best <= 1 || best + 2 >= lams.size()) {
            throw ValidationError("phase_transition_scan: curvature peak for N = " + std::to_string(N) +
                                  " sits at the grid edge; widen or refine the λ grid");
        }
        SweepPoint s;
        s.value = N;
        s.audit.pass = std::all_of(curve.points.begin(), curve.points.end(),
                                   [](const SweepPoint& p) { return p.audit.pass; });
        s.audit.n_max = n_max;
        s.audit.doubled_n_max = 2 * n_max;
        s.audit.tolerance = audit_tolerance(AuditKind::spectrum);
        for (const auto& p : curve.points) s.audit.delta = std::max(s.audit.delta, p.audit.delta);
        s.metrics = {{"lambda_star", lams[best]},
                     {"lambda_c", lc},
                     {"distance_to_critical", std::abs(lams[best] - lc)},
                     {"peak_curvature", -best_val},
                     {"n_max", static_cast<double>(n_max)}};
        out.summary.points.push_back(std::move(s));
        out.curves.push_back(std::move(curve));
    }
    return out;
}

// ------------------------------------------------- leading-order deficit

double leading_order_deficit(const ModelParams& params, const DeficitOptions& options) {
    params.validate();
    if (options.samples < 1) throw ValidationError("leading_order_deficit: samples must be >= 1");
    const int c = options.c_cutoff ? *options.c_cutoff : well_cutoff(params.n_atoms);
    const double shift = params.drive_amplitude();
    int n_max = 0;
    if (options.n_max) {
        n_max = *options.n_max;
    } else if (options.initial == DeficitInitial::vacuum) {
        // the lab vacuum circles the basis origin at radius Ng/ω
        n_max = std::max(required_cutoff(shift + 2.0 * params.g / params.omega),
                         default_convergence_n_max(params, c));
    } else {
        n_max = default_convergence_n_max(params, c);
    }
    const HilbertSpec spec = with_field_shift(with_spin_cutoff(build_spec(params.n_atoms, n_max), c), shift);
    const StateVector psi0 = options.initial == DeficitInitial::vacuum
                                 ? coherent_state(spec, 0.0, 0)
                                 : fock_state(spec, 0, 0);
    const double period = 2.0 * std::numbers::pi / params.omega;
    const TimeGrid grid{0.0, period * (options.samples - 1) / options.samples,
                        std::max(1, options.samples - 1)};
    const auto traj = evolve_exact(hp_sx_hamiltonian(params, spec), psi0, grid);
    double total = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const StateVector lead = options.initial == DeficitInitial::vacuum
                                     ? qamp_state(params, spec, traj.times[k])
                                     : psi0;  // |0;0> only acquires a phase
        total += 1.0 - fidelity(lead, traj.states[k]);
    }
    return total / static_cast<double>(traj.times.size());
}

}  // namespace dicke
