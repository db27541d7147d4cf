// dynamics.cpp: Exact and leading-order time evolution.

#include "dicke/dynamics.hpp"

#include "dicke/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

namespace {

CVector phases(const Eigen::VectorXd& energies, double t) {
    CVector out(energies.size());
    for (Eigen::Index k = 0; k < energies.size(); ++k) out[k] = std::polar(1.0, -energies[k] * t);
    return out;
}

}  // namespace

// ------------------------------------------------------------------ grid

void TimeGrid::validate() const {
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) throw ValidationError("time grid: non-finite bounds");
    if (steps == 0) {
        if (t_end != t_start) throw ValidationError("time grid: a single-sample grid needs t_end == t_start");
        return;
    }
    if (steps < 0) throw ValidationError("time grid: steps must be >= 1");
    if (!(t_end > t_start)) throw ValidationError("time grid: t_end must exceed t_start");
}

std::vector<double> TimeGrid::samples() const {
    validate();
    std::vector<double> out;
    out.reserve(steps + 1);
    if (steps == 0) {
        out.push_back(t_start);
        return out;
    }
    const double dt = (t_end - t_start) / steps;
    for (int k = 0; k < steps; ++k) out.push_back(t_start + k * dt);
    out.push_back(t_end);
    return out;
}

std::size_t TimeSeries::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ValidationError("time series has no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

// ----------------------------------------------------------------- exact

SpectralPropagator::SpectralPropagator(const OperatorMatrix& h) {
    if (!h.hermitian()) throw ValidationError("SpectralPropagator: Hamiltonian must be Hermitian");
    spectrum_ = diagonalize(h);
}

StateVector SpectralPropagator::evolve(const StateVector& psi0, double t) const {
    if (psi0.amplitudes.size() != dim()) throw ValidationError("evolve: state and Hamiltonian sizes differ");
    const CMatrix& v = spectrum_.eigenvectors;
    const CVector coeffs = v.adjoint() * psi0.amplitudes;
    return {psi0.spec, v * phases(spectrum_.eigenvalues, t).cwiseProduct(coeffs)};
}

StateTrajectory evolve_exact(const OperatorMatrix& h, const StateVector& psi0, const TimeGrid& grid) {
    if (psi0.amplitudes.size() != h.dim()) throw ValidationError("evolve_exact: dimension mismatch");
    if (!h.hermitian()) throw ValidationError("evolve_exact: Hamiltonian must be Hermitian");
    const double tail = psi0.tail_weight(2);
    if (tail >= 1e-10) {
        throw CutoffError("evolve_exact: initial state has weight " + std::to_string(tail) +
                          " in the top two Fock levels");
    }
    const auto times = grid.samples();
    const SpectralPropagator prop(h);
    const CMatrix& v = prop.spectrum().eigenvectors;
    const CVector coeffs = v.adjoint() * psi0.amplitudes;

    StateTrajectory out;
    out.times = times;
    out.states.reserve(times.size());
    for (double t : times) {
        if (t == 0.0) {
            out.states.push_back(psi0);
            continue;
        }
        out.states.push_back({psi0.spec, v * phases(prop.spectrum().eigenvalues, t).cwiseProduct(coeffs)});
    }
    return out;
}

// --------------------------------------------------------------- leading

std::vector<LeadingComponent> decompose_leading(const ModelParams& params, const StateVector& psi,
                                                int m_max, int n_limit, Frame frame) {
    const HilbertSpec& spec = psi.spec;
    if (m_max > spec.spin_cutoff || m_max < 0) throw ValidationError("decompose_leading: m_max outside spec");
    if (n_limit < 0 || n_limit > spec.n_max) throw ValidationError("decompose_leading: n_limit outside spec");
    std::vector<LeadingComponent> out;
    const int fd = spec.field_dim();
    for (int m = 0; m <= m_max; ++m) {
        const CVector block = psi.amplitudes.segment(spec.index(m, 0), fd);
        const double alpha = leading_displacement(params, m, frame);
        for (int n = 0; n <= n_limit; ++n) {
            const CVector basis = displaced_fock_amplitudes(spec.n_max, alpha, n, spec.field_shift);
            out.push_back({m, n, basis.dot(block)});
        }
    }
    return out;
}

StateTrajectory evolve_leading(const ModelParams& params, const HilbertSpec& spec,
                               const std::vector<LeadingComponent>& components, const TimeGrid& grid,
                               Frame frame) {
    params.validate();
    double weight = 0.0;
    for (const auto& c : components) weight += std::norm(c.amplitude);
    if (std::abs(weight - 1.0) > 1e-8) {
        throw ValidationError("evolve_leading: coefficients carry total weight " + std::to_string(weight));
    }
    std::vector<CVector> basis;
    basis.reserve(components.size());
    for (const auto& c : components) {
        if (c.m < 0 || c.m > spec.spin_cutoff) throw ValidationError("evolve_leading: m outside spec");
        basis.push_back(
            displaced_number_state(spec, leading_displacement(params, c.m, frame), c.n, c.m).amplitudes);
    }
    StateTrajectory out;
    out.times = grid.samples();
    for (double t : out.times) {
        CVector psi = CVector::Zero(spec.total_dim());
        for (std::size_t k = 0; k < components.size(); ++k) {
            const auto& c = components[k];
            psi += c.amplitude * std::polar(1.0, -leading_energy(params, c.m, c.n) * t) * basis[k];
        }
        out.states.push_back({spec, std::move(psi)});
    }
    return out;
}

// ------------------------------------------------------- closed forms

QampRecord qamp_record(const ModelParams& params, double t) {
    params.validate();
    const double alpha = params.drive_amplitude();
    const double wt = params.omega * t;
    QampRecord r;
    r.t = t;
    r.beta = alpha * (1.0 - std::polar(1.0, -wt));
    r.xi = alpha * alpha * (wt - std::sin(wt));
    r.photon_number = std::norm(r.beta);
    return r;
}

std::vector<QampRecord> qamp_trajectory(const ModelParams& params, const TimeGrid& grid) {
    std::vector<QampRecord> out;
    for (double t : grid.samples()) out.push_back(qamp_record(params, t));
    return out;
}

CoherentEvolution evolve_coherent(const ModelParams& params, cplx initial, double t) {
    params.validate();
    const double alpha = params.drive_amplitude();
    const double wt = params.omega * t;
    const cplx rot = std::polar(1.0, -wt);
    CoherentEvolution out;
    out.center = alpha * (1.0 - rot) + initial * rot;
    out.phase = alpha * alpha * (wt - std::sin(wt)) + alpha * (initial.imag() - (initial * rot).imag());
    return out;
}

StateVector qamp_state(const ModelParams& params, const HilbertSpec& spec, double t, CutoffPolicy policy) {
    const QampRecord r = qamp_record(params, t);
    StateVector psi = coherent_state(spec, r.beta, 0, policy);
    psi.amplitudes *= std::polar(1.0, r.xi);
    return psi;
}

CatEvolutionRecord cat_record(const ModelParams& params, const CatParams& cat, double t) {
    cat.validate();
    const double alpha = params.drive_amplitude();
    const double wt = params.omega * t;
    const auto b1 = evolve_coherent(params, std::polar(cat.gamma, cat.phi), t);
    const auto b2 = evolve_coherent(params, std::polar(cat.gamma, -cat.phi), t);
    CatEvolutionRecord r;
    r.t = t;
    r.branch1_center = b1.center;
    r.branch2_center = b2.center;
    r.xi = alpha * alpha * (wt - std::sin(wt));
    r.phi1 = cat.gamma * alpha * (std::sin(cat.phi) + std::sin(wt - cat.phi));
    r.phi2 = -cat.gamma * alpha * (std::sin(cat.phi) - std::sin(wt + cat.phi));
    r.branch_distance = std::abs(b1.center - b2.center);
    r.macro_amplitude = std::abs(alpha * (1.0 - std::polar(1.0, -wt)));
    return r;
}

std::vector<CatEvolutionRecord> cat_evolution(const ModelParams& params, const CatParams& cat,
                                              const TimeGrid& grid) {
    std::vector<CatEvolutionRecord> out;
    for (double t : grid.samples()) out.push_back(cat_record(params, cat, t));
    return out;
}

StateVector cat_state_at(const ModelParams& params, const HilbertSpec& spec, const CatParams& cat,
                         double t, CutoffPolicy policy) {
    const CatEvolutionRecord r = cat_record(params, cat, t);
    const double reach = std::max(std::abs(r.branch1_center - spec.field_shift),
                                  std::abs(r.branch2_center - spec.field_shift));
    check_cutoff(spec.n_max, reach, policy, "cat_state_at");
    const CVector field = std::polar(1.0, r.phi1) * coherent_amplitudes(spec.n_max, r.branch1_center, spec.field_shift) +
                          std::polar(1.0, r.phi2) * coherent_amplitudes(spec.n_max, r.branch2_center, spec.field_shift);
    CVector spin = CVector::Zero(spec.spin_dim());
    spin[0] = std::polar(1.0, r.xi);
    return product_state(spec, spin, field);
}

// ----------------------------------------------------------- observables

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.amplitudes.size() != b.amplitudes.size()) throw ValidationError("fidelity: dimension mismatch");
    const double na = a.amplitudes.squaredNorm();
    const double nb = b.amplitudes.squaredNorm();
    const double f = std::norm(a.amplitudes.dot(b.amplitudes)) / (na * nb);
    return std::clamp(f, 0.0, 1.0);
}

double photon_number(const StateVector& psi) {
    const HilbertSpec& spec = psi.spec;
    const double s = spec.field_shift;
    double total = 0.0;
    for (int m = 0; m < spec.spin_dim(); ++m) {
        for (int n = 0; n < spec.field_dim(); ++n) {
            const cplx c = psi.amplitudes[spec.index(m, n)];
            total += (n + s * s) * std::norm(c);
            if (n + 1 < spec.field_dim()) {
                // s <ψ|(a + a†)|ψ> contributions between n and n + 1
                total += 2.0 * s * std::sqrt(n + 1.0) *
                         (std::conj(c) * psi.amplitudes[spec.index(m, n + 1)]).real();
            }
        }
    }
    return total / psi.amplitudes.squaredNorm();
}

cplx field_expectation(const StateVector& psi) {
    const HilbertSpec& spec = psi.spec;
    cplx total = 0.0;
    for (int m = 0; m < spec.spin_dim(); ++m) {
        for (int n = 0; n + 1 < spec.field_dim(); ++n) {
            total += std::sqrt(n + 1.0) * std::conj(psi.amplitudes[spec.index(m, n)]) *
                     psi.amplitudes[spec.index(m, n + 1)];
        }
    }
    return total / psi.amplitudes.squaredNorm() + spec.field_shift;
}

double expectation(const OperatorMatrix& op, const StateVector& psi) {
    if (op.dim() != psi.amplitudes.size()) throw ValidationError("expectation: dimension mismatch");
    return psi.amplitudes.dot(op.entries() * psi.amplitudes).real() / psi.amplitudes.squaredNorm();
}

double branch_visibility(const CatEvolutionRecord& record) {
    return std::exp(-0.5 * std::norm(record.branch1_center - record.branch2_center));
}

double macro_ratio(const std::vector<CatEvolutionRecord>& records) {
    if (records.empty()) throw ValidationError("macro_ratio: no records");
    double peak = 0.0;
    for (const auto& r : records) peak = std::max(peak, r.macro_amplitude);
    if (peak == 0.0) throw ValidationError("macro_ratio: the macroscopic amplitude vanishes on the grid");
    return records.front().branch_distance / peak;
}

}  // namespace dicke
