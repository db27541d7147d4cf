// hilbert.hpp: Truncated spin ⊗ Fock spaces, model parameters and canonical states.
//
// Basis layout (fixed; serialized states depend on it):
//   index(s, n) = s * (n_max + 1) + n
// with the spin level s outer and the photon number n inner. In the S_z
// frame s = m_s = S_z + N/2 runs over 0..N. In the S_x frame s is the
// Holstein-Primakoff c-boson number (S_x = -N/2 + s) and may be truncated
// below N via spin_cutoff.
//
// The field basis may be centred on a real displacement: with
// field_shift = s0 the basis vectors are D(s0)|n>, and the annihilation
// operator acts as a + s0. The default s0 = 0 is the plain Fock basis.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string_view>

namespace dicke {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct HilbertSpec {
    int n_atoms{1};
    int n_max{0};
    int spin_cutoff{1};       // highest retained spin level
    double field_shift{0.0};  // basis vectors are D(field_shift)|n>

    int spin_dim() const noexcept { return spin_cutoff + 1; }
    int field_dim() const noexcept { return n_max + 1; }
    Eigen::Index total_dim() const noexcept {
        return static_cast<Eigen::Index>(spin_dim()) * field_dim();
    }
    Eigen::Index index(int spin_level, int n) const noexcept {
        return static_cast<Eigen::Index>(spin_level) * field_dim() + n;
    }
    /// True when every collective level 0..N is retained.
    bool full_spin_sector() const noexcept { return spin_cutoff == n_atoms; }

    bool operator==(const HilbertSpec&) const = default;
};

/// Full j = N/2 sector with a plain Fock basis of n_max + 1 levels.
HilbertSpec build_spec(int n_atoms, int n_max);
HilbertSpec with_spin_cutoff(HilbertSpec spec, int spin_cutoff);
HilbertSpec with_field_shift(HilbertSpec spec, double shift);
HilbertSpec with_n_max(HilbertSpec spec, int n_max);

struct ModelParams {
    int n_atoms{1};
    double delta{1.0};  // level splitting
    double omega{1.0};  // mode frequency
    double g{0.0};      // bare coupling

    static ModelParams from_g(int n_atoms, double delta, double omega, double g);
    static ModelParams from_lambda(int n_atoms, double delta, double omega, double lambda);

    double lambda() const noexcept;           // sqrt(N) g
    double big_omega() const noexcept;        // 4 N g^2 / omega
    double critical_lambda() const noexcept;  // sqrt(delta omega) / 2
    double drive_amplitude() const noexcept;  // N g / omega

    /// Throws ValidationError unless N >= 1, omega > 0, delta >= 0, g >= 0.
    void validate() const;
};

// ----------------------------------------------------------- cutoff rule

enum class CutoffPolicy { enforce, warn };

/// Smallest n_max admitted for a field amplitude |x|: ceil(x^2 + 6|x| + 10).
int required_cutoff(double amplitude);

/// Throws CutoffError (enforce) or writes a warning to std::clog (warn) when
/// n_max < required_cutoff(amplitude).
void check_cutoff(int n_max, double amplitude, CutoffPolicy policy, std::string_view what);

// ----------------------------------------------------------------- states

struct StateVector {
    HilbertSpec spec;
    CVector amplitudes;

    double norm() const { return amplitudes.norm(); }
    /// <this|other>
    cplx overlap(const StateVector& other) const;
    /// Probability carried by the top `levels` Fock levels of every spin block.
    double tail_weight(int levels = 2) const;
};

struct CatParams {
    double gamma{0.0};
    double phi{0.0};

    void validate() const;
};

/// Exponentials of x (a† - a) on the truncated field space.
///
/// i(a† - a) = P (a + a†) P† with P = diag(i^n), so one real tridiagonal
/// eigendecomposition of a + a† yields D(x) for every x. The result is the
/// exact exponential of the truncated generator.
class FieldDisplacement {
public:
    explicit FieldDisplacement(int n_max);

    int n_max() const noexcept { return n_max_; }
    CMatrix matrix(double x) const;
    CVector apply(double x, const CVector& v) const;

private:
    int n_max_;
    Eigen::VectorXd quad_eigenvalues_;
    CMatrix modes_;  // P V: columns are eigenvectors of i(a† - a)
};

StateVector fock_state(const HilbertSpec& spec, int spin_level, int n);

/// spin ⊗ field, renormalized. Sizes must match spec.spin_dim(), spec.field_dim().
StateVector product_state(const HilbertSpec& spec, const CVector& spin, const CVector& field);

/// Field amplitudes of |beta> in the basis D(shift)|n>, renormalized on the
/// truncated space. No adequacy check.
CVector coherent_amplitudes(int n_max, cplx beta, double shift = 0.0);

/// Field amplitudes of D(alpha)|n> via the truncated displacement operator,
/// renormalized. The basis shift enters as D(alpha - shift).
CVector displaced_fock_amplitudes(int n_max, double alpha, int n, double shift = 0.0);

StateVector coherent_state(const HilbertSpec& spec, cplx beta, int spin_level = 0,
                           CutoffPolicy policy = CutoffPolicy::enforce);

StateVector displaced_number_state(const HilbertSpec& spec, double alpha, int n,
                                   int spin_level = 0,
                                   CutoffPolicy policy = CutoffPolicy::enforce);

/// N(|gamma e^{i phi}> + |gamma e^{-i phi}>), normalization computed from the
/// constructed vector.
StateVector cat_state(const HilbertSpec& spec, const CatParams& cat, int spin_level = 0,
                      CutoffPolicy policy = CutoffPolicy::enforce);

}  // namespace dicke
