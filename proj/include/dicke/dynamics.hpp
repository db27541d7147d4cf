// dynamics.hpp: Spectral time evolution, the leading-order propagator and
// the closed-form amplifier / cat-state trajectories.
//
// Sign convention: states evolve as exp(-iHt). For the atoms in |0>_- the
// field Hamiltonian is ω a†a - N g (a + a†), whose exact solution (checked
// against spectral evolution) is
//
//   e^{-iHt} |γ'> = e^{i[ξ(t) + α(Im γ' - Im(γ' e^{-iωt}))]} |α(1 - e^{-iωt}) + γ' e^{-iωt}>
//
// with α = Ng/ω and ξ(t) = α²(ωt - sin ωt).

#pragma once

#include "dicke/eigensolver.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/hpx.hpp"
#include "dicke/operators.hpp"

#include <string>
#include <vector>

namespace dicke {

/// steps + 1 equally spaced samples from t_start to t_end. A single-sample
/// grid is written {t, t, 0}.
struct TimeGrid {
    double t_start{0.0};
    double t_end{0.0};
    int steps{1};

    void validate() const;
    std::vector<double> samples() const;
};

struct StateTrajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
};

/// Column-oriented numeric table; serialized to CSV / JSON by io.hpp.
struct TimeSeries {
    std::vector<std::string> columns;  // first column is "t"
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
};

/// Spectral propagator ψ(t) = Σ_k e^{-iE_k t} <v_k|ψ0> v_k.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const OperatorMatrix& h);

    const SpectrumResult& spectrum() const noexcept { return spectrum_; }
    Eigen::Index dim() const noexcept { return spectrum_.eigenvectors.rows(); }
    StateVector evolve(const StateVector& psi0, double t) const;

private:
    SpectrumResult spectrum_;
};

/// Exact evolution over the grid. psi0 must carry < 1e-10 weight in the top
/// two Fock levels.
StateTrajectory evolve_exact(const OperatorMatrix& h, const StateVector& psi0, const TimeGrid& grid);

struct LeadingComponent {
    int m{0};
    int n{0};
    cplx amplitude{0.0};
};

/// Projections <m;n|ψ> for m <= m_max, n <= n_limit in the given frame.
std::vector<LeadingComponent> decompose_leading(const ModelParams& params, const StateVector& psi,
                                                int m_max, int n_limit, Frame frame);

/// U(t) = e^{iN²g²t/ω} Σ e^{-i(mΩ + nω)t} |m;n><m;n| applied to the supplied
/// components; states reconstructed on `spec` in the given frame.
/// Throws ValidationError unless Σ|c|² = 1 within 1e-8.
StateTrajectory evolve_leading(const ModelParams& params, const HilbertSpec& spec,
                               const std::vector<LeadingComponent>& components, const TimeGrid& grid,
                               Frame frame = Frame::polaron);

struct QampRecord {
    double t{0.0};
    cplx beta;                 // (Ng/ω)(1 - e^{-iωt})
    double xi{0.0};            // (N²g²/ω²)(ωt - sin ωt)
    double photon_number{0.0}; // |beta|²
};

std::vector<QampRecord> qamp_trajectory(const ModelParams& params, const TimeGrid& grid);
QampRecord qamp_record(const ModelParams& params, double t);

/// |0>_- ⊗ e^{iξ(t)} |β(t)> on an S_x-frame spec (spin level 0).
StateVector qamp_state(const ModelParams& params, const HilbertSpec& spec, double t,
                       CutoffPolicy policy = CutoffPolicy::enforce);

/// Closed-form leading-order evolution of a coherent field |γ'> with the atoms in |0>_-.
struct CoherentEvolution {
    cplx center;
    double phase{0.0};  // total phase, including ξ(t)
};

CoherentEvolution evolve_coherent(const ModelParams& params, cplx initial, double t);

struct CatEvolutionRecord {
    double t{0.0};
    cplx branch1_center;  // α(1 - e^{-iωt}) + γ e^{iφ - iωt}
    cplx branch2_center;  // α(1 - e^{-iωt}) + γ e^{-iφ - iωt}
    double xi{0.0};
    double phi1{0.0};     //  γα [sin φ + sin(ωt - φ)]
    double phi2{0.0};     // -γα [sin φ - sin(ωt + φ)]
    double branch_distance{0.0};
    double macro_amplitude{0.0};  // |α(1 - e^{-iωt})|
};

std::vector<CatEvolutionRecord> cat_evolution(const ModelParams& params, const CatParams& cat,
                                              const TimeGrid& grid);
CatEvolutionRecord cat_record(const ModelParams& params, const CatParams& cat, double t);

/// e^{iξ} N (e^{iφ1}|b1> + e^{iφ2}|b2>) ⊗ |0>_- on an S_x-frame spec.
StateVector cat_state_at(const ModelParams& params, const HilbertSpec& spec, const CatParams& cat,
                         double t, CutoffPolicy policy = CutoffPolicy::enforce);

// ----------------------------------------------------------- observables

/// |<a|b>|², symmetric and in [0, 1].
double fidelity(const StateVector& a, const StateVector& b);

/// <(a + s)†(a + s)> including the basis shift s.
double photon_number(const StateVector& psi);

/// <a + s>; the quadratures are its real and imaginary parts.
cplx field_expectation(const StateVector& psi);

double expectation(const OperatorMatrix& op, const StateVector& psi);

/// |<b1|b2>| = exp(-|b1 - b2|²/2) for a record's two coherent branches.
double branch_visibility(const CatEvolutionRecord& record);

/// branch_distance / max_t macro_amplitude over the records.
double macro_ratio(const std::vector<CatEvolutionRecord>& records);

}  // namespace dicke
