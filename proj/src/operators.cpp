// operators.cpp: Matrix assembly for spin, field and Dicke operators.

#include "dicke/operators.hpp"

#include "dicke/errors.hpp"

#include <cmath>
#include <string>

namespace dicke {

// ------------------------------------------------------- OperatorMatrix

OperatorMatrix::OperatorMatrix(CMatrix entries, bool hermitian)
    : entries_(std::move(entries)), hermitian_(hermitian) {
    if (entries_.rows() != entries_.cols()) throw ValidationError("OperatorMatrix must be square");
    if (hermitian_ && hermiticity_defect() >= 1e-12) {
        throw ValidationError("OperatorMatrix flagged Hermitian but |A - A†| = " +
                              std::to_string(hermiticity_defect()));
    }
}

OperatorMatrix OperatorMatrix::hermitize(const CMatrix& entries, double tolerance) {
    if (entries.rows() != entries.cols()) throw ValidationError("OperatorMatrix must be square");
    const double defect = max_abs(entries - entries.adjoint());
    if (defect > tolerance) {
        throw NumericalError("hermitize: anti-Hermitian part " + std::to_string(defect) +
                             " exceeds tolerance");
    }
    CMatrix sym = 0.5 * (entries + entries.adjoint());
    return OperatorMatrix(std::move(sym), true);
}

double OperatorMatrix::hermiticity_defect() const { return max_abs(entries_ - entries_.adjoint()); }

bool OperatorMatrix::is_real() const { return (entries_.imag().array() == 0.0).all(); }

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& rhs) const {
    if (dim() != rhs.dim()) throw ValidationError("OperatorMatrix +: dimension mismatch");
    return OperatorMatrix(entries_ + rhs.entries_, hermitian_ && rhs.hermitian_);
}

OperatorMatrix OperatorMatrix::operator*(double s) const {
    return OperatorMatrix(entries_ * s, hermitian_);
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix kron(const CMatrix& outer, const CMatrix& inner) {
    const Eigen::Index ro = outer.rows(), co = outer.cols();
    const Eigen::Index ri = inner.rows(), ci = inner.cols();
    CMatrix out(ro * ri, co * ci);
    for (Eigen::Index i = 0; i < ro; ++i) {
        for (Eigen::Index j = 0; j < co; ++j) out.block(i * ri, j * ci, ri, ci) = outer(i, j) * inner;
    }
    return out;
}

// ----------------------------------------------------------------- spin

SpinOperators spin_operators(int n_atoms) {
    if (n_atoms < 1) throw ValidationError("spin_operators: N must be >= 1");
    const int dim = n_atoms + 1;
    CMatrix sz = CMatrix::Zero(dim, dim);
    CMatrix sp = CMatrix::Zero(dim, dim);
    for (int ms = 0; ms < dim; ++ms) {
        sz(ms, ms) = ms - 0.5 * n_atoms;
        // <m_s + 1| S_+ |m_s> = sqrt((N - m_s)(m_s + 1))
        if (ms + 1 < dim) sp(ms + 1, ms) = std::sqrt(static_cast<double>(n_atoms - ms) * (ms + 1));
    }
    CMatrix sm = sp.adjoint();
    CMatrix sx = 0.5 * (sp + sm);
    return {OperatorMatrix(sx, true), OperatorMatrix(sz, true), OperatorMatrix(sp, false),
            OperatorMatrix(sm, false)};
}

CVector sx_ground_spin_state(int n_atoms) {
    const auto ops = spin_operators(n_atoms);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.sx.entries().real());
    if (es.info() != Eigen::Success) throw NumericalError("sx_ground_spin_state: eigensolver failed");
    Eigen::VectorXd v = es.eigenvectors().col(0);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0) v = -v;
    return v.cast<cplx>();
}

// ---------------------------------------------------------------- field

FieldOperators field_operators(int n_max) {
    if (n_max < 1) throw ValidationError("field_operators: n_max must be >= 1");
    const int dim = n_max + 1;
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    CMatrix ad = a.adjoint();
    CMatrix num = CMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) num(n, n) = n;
    return {OperatorMatrix(a, false), OperatorMatrix(ad, false), OperatorMatrix(num, true)};
}

// ---------------------------------------------------------------- Dicke

OperatorMatrix dicke_hamiltonian(const ModelParams& params, const HilbertSpec& spec) {
    params.validate();
    if (params.n_atoms != spec.n_atoms) {
        throw ValidationError("dicke_hamiltonian: params and spec disagree on N");
    }
    if (!spec.full_spin_sector()) {
        throw ValidationError("dicke_hamiltonian: the S_z frame needs the full spin sector");
    }
    const int N = spec.n_atoms;
    const int fd = spec.field_dim();
    const double s = spec.field_shift;
    const double coupling = 2.0 * params.g;  // 2λ/√N
    CMatrix h = CMatrix::Zero(spec.total_dim(), spec.total_dim());

    for (int ms = 0; ms <= N; ++ms) {
        const double sz = ms - 0.5 * N;
        for (int n = 0; n < fd; ++n) {
            // ω (a + s)†(a + s) = ω (n + s^2) on the diagonal, ω s (a + a†) off it
            h(spec.index(ms, n), spec.index(ms, n)) = params.delta * sz + params.omega * (n + s * s);
            if (n + 1 < fd) {
                const double x = params.omega * s * std::sqrt(n + 1.0);
                h(spec.index(ms, n + 1), spec.index(ms, n)) += x;
                h(spec.index(ms, n), spec.index(ms, n + 1)) += x;
            }
        }
        if (ms + 1 <= N) {
            // S_x (a + a† + 2s) between m_s and m_s + 1
            const double sx = 0.5 * std::sqrt(static_cast<double>(N - ms) * (ms + 1));
            for (int n = 0; n < fd; ++n) {
                const Eigen::Index lo = spec.index(ms, n);
                const Eigen::Index hi = spec.index(ms + 1, n);
                h(hi, lo) += coupling * sx * 2.0 * s;
                h(lo, hi) += coupling * sx * 2.0 * s;
                if (n + 1 < fd) {
                    const double x = coupling * sx * std::sqrt(n + 1.0);
                    h(spec.index(ms + 1, n + 1), lo) += x;
                    h(lo, spec.index(ms + 1, n + 1)) += x;
                    h(spec.index(ms + 1, n), spec.index(ms, n + 1)) += x;
                    h(spec.index(ms, n + 1), spec.index(ms + 1, n)) += x;
                }
            }
        }
    }
    return OperatorMatrix(std::move(h), true);
}

OperatorMatrix parity_operator(const HilbertSpec& spec) {
    if (spec.field_shift != 0.0) throw ValidationError("parity_operator: needs an unshifted field basis");
    if (!spec.full_spin_sector()) throw ValidationError("parity_operator: needs the full spin sector");
    CMatrix p = CMatrix::Zero(spec.total_dim(), spec.total_dim());
    for (int ms = 0; ms < spec.spin_dim(); ++ms) {
        for (int n = 0; n < spec.field_dim(); ++n) {
            p(spec.index(ms, n), spec.index(ms, n)) = ((ms + n) % 2 == 0) ? 1.0 : -1.0;
        }
    }
    return OperatorMatrix(std::move(p), true);
}

// ---------------------------------------------------- S_z-axis HP series

SzSeries hp_sz_hamiltonians(const ModelParams& params, int a_cutoff, int b_cutoff) {
    params.validate();
    if (a_cutoff < 1 || b_cutoff < 1) throw ValidationError("hp_sz_hamiltonians: cutoffs must be >= 1");
    if (b_cutoff > params.n_atoms) {
        throw ValidationError("hp_sz_hamiltonians: b cutoff exceeds N (outside the HP physical sector)");
    }
    const TwoBosonSpec spec{a_cutoff, b_cutoff};
    const double lam = params.lambda();
    const double c1 = -lam / (2.0 * params.n_atoms);
    CMatrix h0 = CMatrix::Zero(spec.dim(), spec.dim());
    CMatrix h1 = CMatrix::Zero(spec.dim(), spec.dim());

    for (int b = 0; b <= b_cutoff; ++b) {
        for (int a = 0; a <= a_cutoff; ++a) {
            h0(spec.index(b, a), spec.index(b, a)) = params.delta * b + params.omega * a;
        }
    }
    for (int b = 0; b < b_cutoff; ++b) {
        const double up = std::sqrt(b + 1.0);  // <b+1|b†|b>
        // <b+1| b†b†b |b> = b sqrt(b+1); b†bb is its adjoint
        const double cubic = b * up;
        for (int a = 0; a <= a_cutoff; ++a) {
            for (int da : {-1, 1}) {
                const int a2 = a + da;
                if (a2 < 0 || a2 > a_cutoff) continue;
                const double field = std::sqrt(static_cast<double>(std::max(a, a2)));
                const Eigen::Index from = spec.index(b, a);
                const Eigen::Index to = spec.index(b + 1, a2);
                h0(to, from) += lam * up * field;
                h0(from, to) += lam * up * field;
                h1(to, from) += c1 * cubic * field;
                h1(from, to) += c1 * cubic * field;
            }
        }
    }
    return {spec, OperatorMatrix(std::move(h0), true), OperatorMatrix(std::move(h1), true)};
}

}  // namespace dicke
