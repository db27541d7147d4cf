// hilbert.cpp: Truncated spaces, parameters and state constructors.

#include "dicke/hilbert.hpp"

#include "dicke/errors.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace dicke {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void check_spin_level(const HilbertSpec& spec, int spin_level) {
    if (spin_level < 0 || spin_level > spec.spin_cutoff) {
        throw ValidationError("spin level " + std::to_string(spin_level) +
                              " outside 0.." + std::to_string(spec.spin_cutoff));
    }
}

const FieldDisplacement& cached_displacement(int n_max) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<FieldDisplacement>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n_max];
    if (!slot) slot = std::make_unique<FieldDisplacement>(n_max);
    return *slot;
}

}  // namespace

// ------------------------------------------------------------------ spec

HilbertSpec build_spec(int n_atoms, int n_max) {
    if (n_atoms < 1) throw ValidationError("n_atoms must be >= 1");
    if (n_max < 0) throw ValidationError("n_max must be >= 0");
    HilbertSpec spec;
    spec.n_atoms = n_atoms;
    spec.n_max = n_max;
    spec.spin_cutoff = n_atoms;
    return spec;
}

HilbertSpec with_spin_cutoff(HilbertSpec spec, int spin_cutoff) {
    if (spin_cutoff < 0 || spin_cutoff > spec.n_atoms) {
        throw ValidationError("spin cutoff must lie in 0..N (got " + std::to_string(spin_cutoff) +
                              ", N = " + std::to_string(spec.n_atoms) + ")");
    }
    spec.spin_cutoff = spin_cutoff;
    return spec;
}

HilbertSpec with_field_shift(HilbertSpec spec, double shift) {
    if (!std::isfinite(shift)) throw ValidationError("field shift must be finite");
    spec.field_shift = shift;
    return spec;
}

HilbertSpec with_n_max(HilbertSpec spec, int n_max) {
    if (n_max < 0) throw ValidationError("n_max must be >= 0");
    spec.n_max = n_max;
    return spec;
}

// ---------------------------------------------------------------- params

ModelParams ModelParams::from_g(int n_atoms, double delta, double omega, double g) {
    ModelParams p{n_atoms, delta, omega, g};
    p.validate();
    return p;
}

ModelParams ModelParams::from_lambda(int n_atoms, double delta, double omega, double lambda) {
    if (n_atoms < 1) throw ValidationError("n_atoms must be >= 1");
    return from_g(n_atoms, delta, omega, lambda / std::sqrt(static_cast<double>(n_atoms)));
}

double ModelParams::lambda() const noexcept { return std::sqrt(static_cast<double>(n_atoms)) * g; }

double ModelParams::big_omega() const noexcept { return 4.0 * n_atoms * g * g / omega; }

double ModelParams::critical_lambda() const noexcept { return 0.5 * std::sqrt(delta * omega); }

double ModelParams::drive_amplitude() const noexcept { return n_atoms * g / omega; }

void ModelParams::validate() const {
    if (n_atoms < 1) throw ValidationError("n_atoms must be >= 1");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ValidationError("omega must be > 0");
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw ValidationError("delta must be >= 0");
    if (!(g >= 0.0) || !std::isfinite(g)) throw ValidationError("g must be >= 0");
}

void CatParams::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("cat gamma must be >= 0");
    if (!std::isfinite(phi)) throw ValidationError("cat phi must be finite");
}

// ---------------------------------------------------------------- cutoff

int required_cutoff(double amplitude) {
    const double x = std::abs(amplitude);
    return static_cast<int>(std::ceil(x * x + 6.0 * x + 10.0 - 1e-12));
}

void check_cutoff(int n_max, double amplitude, CutoffPolicy policy, std::string_view what) {
    const int need = required_cutoff(amplitude);
    if (n_max >= need) return;
    std::string msg = std::string(what) + ": n_max = " + std::to_string(n_max) +
                      " below the adequacy cutoff " + std::to_string(need) + " for amplitude " +
                      fmt_double(amplitude);
    if (policy == CutoffPolicy::enforce) throw CutoffError(msg);
    std::clog << "warning: " << msg << '\n';
}

// ----------------------------------------------------------------- state

cplx StateVector::overlap(const StateVector& other) const {
    if (!(spec == other.spec)) throw ValidationError("overlap: states live on different spaces");
    return amplitudes.dot(other.amplitudes);
}

double StateVector::tail_weight(int levels) const {
    const int fd = spec.field_dim();
    const int first = std::max(0, fd - levels);
    double w = 0.0;
    for (int s = 0; s < spec.spin_dim(); ++s) {
        for (int n = first; n < fd; ++n) w += std::norm(amplitudes[spec.index(s, n)]);
    }
    return w;
}

// ---------------------------------------------------------- displacement

FieldDisplacement::FieldDisplacement(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw ValidationError("n_max must be >= 0");
    const int dim = n_max + 1;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd sub(std::max(dim - 1, 0));
    for (int k = 0; k + 1 < dim; ++k) sub[k] = std::sqrt(static_cast<double>(k + 1));

    Eigen::MatrixXd vectors;
    if (dim == 1) {
        quad_eigenvalues_ = Eigen::VectorXd::Zero(1);
        vectors = Eigen::MatrixXd::Identity(1, 1);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (es.info() != Eigen::Success) {
            throw NumericalError("FieldDisplacement: tridiagonal eigensolver failed");
        }
        quad_eigenvalues_ = es.eigenvalues();
        vectors = es.eigenvectors();
    }

    static constexpr cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    modes_.resize(dim, dim);
    for (int n = 0; n < dim; ++n) modes_.row(n) = kPhase[n % 4] * vectors.row(n).cast<cplx>();
}

CMatrix FieldDisplacement::matrix(double x) const {
    const Eigen::VectorXcd phases =
        (quad_eigenvalues_.cast<cplx>() * cplx(0.0, -x)).array().exp().matrix();
    return modes_ * phases.asDiagonal() * modes_.adjoint();
}

CVector FieldDisplacement::apply(double x, const CVector& v) const {
    if (v.size() != n_max_ + 1) throw ValidationError("FieldDisplacement::apply: size mismatch");
    const Eigen::VectorXcd phases =
        (quad_eigenvalues_.cast<cplx>() * cplx(0.0, -x)).array().exp().matrix();
    CVector coeffs = modes_.adjoint() * v;
    return modes_ * phases.cwiseProduct(coeffs);
}

// ---------------------------------------------------------- constructors

StateVector fock_state(const HilbertSpec& spec, int spin_level, int n) {
    check_spin_level(spec, spin_level);
    if (n < 0 || n > spec.n_max) {
        throw ValidationError("Fock index " + std::to_string(n) + " outside 0.." +
                              std::to_string(spec.n_max));
    }
    StateVector psi{spec, CVector::Zero(spec.total_dim())};
    psi.amplitudes[spec.index(spin_level, n)] = 1.0;
    return psi;
}

StateVector product_state(const HilbertSpec& spec, const CVector& spin, const CVector& field) {
    if (spin.size() != spec.spin_dim() || field.size() != spec.field_dim()) {
        throw ValidationError("product_state: factor sizes do not match the spec");
    }
    StateVector psi{spec, CVector(spec.total_dim())};
    for (int s = 0; s < spec.spin_dim(); ++s) {
        psi.amplitudes.segment(spec.index(s, 0), spec.field_dim()) = spin[s] * field;
    }
    const double nrm = psi.amplitudes.norm();
    if (nrm == 0.0) throw ValidationError("product_state: zero vector");
    psi.amplitudes /= nrm;
    return psi;
}

CVector coherent_amplitudes(int n_max, cplx beta, double shift) {
    if (n_max < 0) throw ValidationError("n_max must be >= 0");
    // D(-shift)|beta> = exp(i shift Im beta) |beta - shift>
    const cplx b = beta - shift;
    const cplx global = std::exp(cplx(0.0, shift * beta.imag()));
    CVector out = CVector::Zero(n_max + 1);
    const double r = std::abs(b);
    if (r == 0.0) {
        out[0] = global;
        return out;
    }
    const double theta = std::arg(b);
    const double log_r = std::log(r);
    for (int n = 0; n <= n_max; ++n) {
        const double log_mag = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
        out[n] = global * std::polar(std::exp(log_mag), n * theta);
    }
    const double nrm = out.norm();
    if (nrm == 0.0) throw CutoffError("coherent_amplitudes: no weight inside the truncation");
    return out / nrm;
}

CVector displaced_fock_amplitudes(int n_max, double alpha, int n, double shift) {
    if (n < 0 || n > n_max) throw ValidationError("displaced_fock_amplitudes: n outside 0..n_max");
    CVector e = CVector::Zero(n_max + 1);
    e[n] = 1.0;
    const double x = alpha - shift;
    if (x == 0.0) return e;
    CVector out = cached_displacement(n_max).apply(x, e);
    return out / out.norm();
}

StateVector coherent_state(const HilbertSpec& spec, cplx beta, int spin_level, CutoffPolicy policy) {
    check_spin_level(spec, spin_level);
    check_cutoff(spec.n_max, std::abs(beta - spec.field_shift), policy, "coherent_state");
    CVector spin = CVector::Zero(spec.spin_dim());
    spin[spin_level] = 1.0;
    return product_state(spec, spin, coherent_amplitudes(spec.n_max, beta, spec.field_shift));
}

StateVector displaced_number_state(const HilbertSpec& spec, double alpha, int n, int spin_level,
                                   CutoffPolicy policy) {
    check_spin_level(spec, spin_level);
    if (n < 0 || n > spec.n_max) throw ValidationError("displaced_number_state: n outside 0..n_max");
    check_cutoff(spec.n_max, std::abs(alpha - spec.field_shift) + std::sqrt(static_cast<double>(n)),
                 policy, "displaced_number_state");
    CVector spin = CVector::Zero(spec.spin_dim());
    spin[spin_level] = 1.0;
    return product_state(spec, spin,
                         displaced_fock_amplitudes(spec.n_max, alpha, n, spec.field_shift));
}

StateVector cat_state(const HilbertSpec& spec, const CatParams& cat, int spin_level,
                      CutoffPolicy policy) {
    cat.validate();
    check_spin_level(spec, spin_level);
    const cplx b1 = std::polar(cat.gamma, cat.phi);
    const cplx b2 = std::polar(cat.gamma, -cat.phi);
    check_cutoff(spec.n_max, std::max(std::abs(b1 - spec.field_shift), std::abs(b2 - spec.field_shift)),
                 policy, "cat_state");
    const CVector field = coherent_amplitudes(spec.n_max, b1, spec.field_shift) +
                          coherent_amplitudes(spec.n_max, b2, spec.field_shift);
    if (field.norm() < 1e-300) throw ValidationError("cat_state: branches cancel");
    CVector spin = CVector::Zero(spec.spin_dim());
    spin[spin_level] = 1.0;
    return product_state(spec, spin, field);
}

}  // namespace dicke
