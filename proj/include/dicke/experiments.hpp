// experiments.hpp: Sweeps that measure the large-N and strong-coupling
// limits, the superradiant transition scan, and cutoff audits.

#pragma once

#include "dicke/hilbert.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dicke {

// ----------------------------------------------------------------- audit

enum class AuditKind { spectrum, fidelity };

/// 1e-8 for spectra, 1e-6 for fidelities.
double audit_tolerance(AuditKind kind);

struct AuditSample {
    double value{0.0};
    double tail_weight{0.0};
};

struct CutoffAudit {
    bool pass{false};
    int n_max{0};
    int doubled_n_max{0};
    double base_value{0.0};
    double doubled_value{0.0};
    double delta{0.0};
    double tolerance{0.0};
    double tail_weight{0.0};  // of the base computation
};

/// Recomputes `compute` at 2 n_max; passes iff |change| < audit_tolerance(kind).
CutoffAudit cutoff_audit(const std::function<AuditSample(int n_max)>& compute, int n_max, AuditKind kind);

/// Audit of <a†a> for a coherent state.
CutoffAudit audit_coherent_state(cplx beta, int n_max);

/// Audit of the exact vacuum -> amplifier trajectory (Δ as given, S_x frame
/// with c-cutoff 0): headline metric is the largest photon number over one
/// field period.
CutoffAudit audit_qamp(const ModelParams& params, int n_max, int samples = 16);

// ----------------------------------------------------------------- sweeps

struct Metric {
    std::string name;
    double value{0.0};
};

struct SweepPoint {
    double value{0.0};
    std::vector<Metric> metrics;
    CutoffAudit audit;

    double metric(const std::string& name) const;
};

struct PowerLawFit {
    double exponent{0.0};
    double prefactor{0.0};
    double std_error{0.0};
    double ci_low{0.0};   // 95 % interval on the exponent
    double ci_high{0.0};
    int points{0};
    bool dropped_first{false};
};

struct SweepResult {
    std::string experiment;
    std::string axis;  // "N", "g", "lambda" or "n_max"
    std::vector<SweepPoint> points;
    std::optional<PowerLawFit> fit;          // all passing points
    std::optional<PowerLawFit> fit_trimmed;  // smallest axis value dropped

    int failed_audits() const;
};

/// Least squares on (log x, log y); needs >= 2 points with positive values.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceOptions {
    std::optional<int> c_cutoff;  // default: well_cutoff(N)
    std::optional<int> n_max;     // default: adequacy rule for the 2g/ω sector spacing
};

struct GroundStateReport {
    HilbertSpec spec;
    double infidelity{0.0};       // 1 - |<0;0|ψ_gs>|²
    double ground_energy{0.0};
    double leading_energy{0.0};   // E_00 = -N²g²/ω
    double tail_weight{0.0};
};

/// Exact ground state of hp_sx_hamiltonian (in the basis D(Ng/ω)|n>) against |0;0>.
GroundStateReport ground_state_vs_leading(const ModelParams& params, int c_cutoff, int n_max);

int default_convergence_n_max(const ModelParams& params, int c_cutoff);

SweepResult convergence_in_N(const ModelParams& base, const std::vector<int>& n_list,
                             const ConvergenceOptions& options = {});
SweepResult convergence_in_g(const ModelParams& base, const std::vector<double>& g_list,
                             const ConvergenceOptions& options = {});

// ------------------------------------------------------ phase transition

struct PhaseScanOptions {
    std::optional<int> n_max;  // default from the mean-field amplitude at the largest λ
};

struct PhaseScanResult {
    std::vector<SweepResult> curves;  // one per N, axis "lambda"
    SweepResult summary;              // axis "N": lambda_star, distance_to_critical
};

int default_scan_n_max(const ModelParams& params_at_max_lambda);

/// Pseudo-critical λ*(N): argmax over interior grid points of -d²(E0/N)/dλ².
PhaseScanResult phase_transition_scan(const ModelParams& tmpl, const std::vector<double>& lambda_grid,
                                      const std::vector<int>& n_list, const PhaseScanOptions& options = {});

// ------------------------------------------------- leading-order deficit

enum class DeficitInitial { leading_ground, vacuum };

struct DeficitOptions {
    DeficitInitial initial{DeficitInitial::leading_ground};
    std::optional<int> c_cutoff;
    std::optional<int> n_max;
    int samples{32};
};

/// Mean over one field period of 1 - |<ψ_leading(t)|ψ_exact(t)>|².
double leading_order_deficit(const ModelParams& params, const DeficitOptions& options = {});

}  // namespace dicke
