// operators.hpp: Collective spin, field mode, Dicke Hamiltonian and the
// S_z-axis Holstein-Primakoff series.

#pragma once

#include "dicke/hilbert.hpp"

namespace dicke {

/// Dense complex square matrix. When `hermitian` is set the constructor
/// guarantees max |A - A†| < 1e-12.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    OperatorMatrix(CMatrix entries, bool hermitian);

    /// Hermitian part (A + A†)/2 of an almost-Hermitian product; throws if
    /// the anti-Hermitian part exceeds `tolerance`.
    static OperatorMatrix hermitize(const CMatrix& entries, double tolerance);

    const CMatrix& entries() const noexcept { return entries_; }
    bool hermitian() const noexcept { return hermitian_; }
    Eigen::Index dim() const noexcept { return entries_.rows(); }

    double hermiticity_defect() const;
    /// True when every imaginary part is exactly zero.
    bool is_real() const;

    OperatorMatrix operator+(const OperatorMatrix& rhs) const;
    OperatorMatrix operator*(double s) const;

private:
    CMatrix entries_;
    bool hermitian_{false};
};

double max_abs(const CMatrix& m);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& outer, const CMatrix& inner);

struct SpinOperators {
    OperatorMatrix sx, sz, splus, sminus;
};

/// j = N/2 ladder on levels m_s = 0..N (S_z = m_s - N/2).
SpinOperators spin_operators(int n_atoms);

/// Lowest eigenvector of S_x in the S_z basis (all atoms along -x), with the
/// largest component real and positive.
CVector sx_ground_spin_state(int n_atoms);

struct FieldOperators {
    OperatorMatrix a, a_dagger, number;
};

/// Truncated ladder matrices on 0..n_max. [a, a†] = 1 except the
/// (n_max, n_max) entry, which is -n_max.
FieldOperators field_operators(int n_max);

/// H = Δ S_z + ω a†a + (2λ/√N) S_x (a + a†) on the S_z-frame space.
/// Honours spec.field_shift (a -> a + shift).
OperatorMatrix dicke_hamiltonian(const ModelParams& params, const HilbertSpec& spec);

/// exp(iπ(a†a + S_z + N/2)) = diag((-1)^{n + m_s}); requires an unshifted
/// field basis and the full spin sector.
OperatorMatrix parity_operator(const HilbertSpec& spec);

/// Two-boson space for the S_z-axis series: b (atomic) outer, a (field) inner.
struct TwoBosonSpec {
    int a_cutoff{0};
    int b_cutoff{0};

    Eigen::Index dim() const noexcept {
        return static_cast<Eigen::Index>(a_cutoff + 1) * (b_cutoff + 1);
    }
    Eigen::Index index(int b, int a) const noexcept {
        return static_cast<Eigen::Index>(b) * (a_cutoff + 1) + a;
    }
};

struct SzSeries {
    TwoBosonSpec spec;
    OperatorMatrix h0;  // Δ b†b + ω a†a + λ (a† + a)(b† + b)
    OperatorMatrix h1;  // -(λ / 2N)(b†b†b + b†bb)(a† + a)
};

/// Leading and first 1/N terms of the S_z-axis expansion (constant -NΔ/2
/// omitted). b_cutoff must not exceed N.
SzSeries hp_sz_hamiltonians(const ModelParams& params, int a_cutoff, int b_cutoff);

}  // namespace dicke
