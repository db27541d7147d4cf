// hpx.hpp: Strong-coupling machinery in the S_x frame.
//
// Spin levels of the HilbertSpec are c-boson numbers m (S_x = -N/2 + m),
// truncated at spec.spin_cutoff <= N. The lab-frame Hamiltonian is
//
//   H = ω a†a - N g (a + a†) + 2 g c†c (a + a†)
//       + (Δ/2) √N [c† √(1 - c†c/N) + √(1 - c†c/N) c]
//
// and the polaron transform U0 = exp((2g/ω) c†c (a - a†)) gives the
// transformed frame H' = U0† H U0 = H'0 + H'1 + H'2 + H'3 + ...
//
// Leading eigenstates: |m>_- D(Ng/ω)|n> in the transformed frame and
// |m>_- D((g/ω)(N - 2m))|n> = U0 (transformed state) in the lab frame, both
// with energy m Ω + n ω - N²g²/ω, Ω = 4Ng²/ω.

#pragma once

#include "dicke/hilbert.hpp"
#include "dicke/operators.hpp"

namespace dicke {

/// Lab-frame H with the square root realized exactly on the diagonal of the
/// c-number basis. Requires spec.spin_cutoff <= N.
OperatorMatrix hp_sx_hamiltonian(const ModelParams& params, const HilbertSpec& spec);

/// Lab-frame H with √(1 - c†c/N) expanded to first order, i.e. the terms
/// that the transformed series H'0..H'3 reproduces.
OperatorMatrix hp_sx_series_hamiltonian(const ModelParams& params, const HilbertSpec& spec);

/// U0 = exp((2g/ω) c†c (a - a†)): block diagonal, sector m gets D(-2gm/ω).
OperatorMatrix polaron_transform(const ModelParams& params, const HilbertSpec& spec,
                                 CutoffPolicy policy = CutoffPolicy::enforce);

struct TransformedSeries {
    OperatorMatrix h0p;  // ω a†a - N g (a + a†) + 4N(g²/ω) c†c
    OperatorMatrix h1p;  // (Δ/2)√N [c† D(2g/ω) + c D(-2g/ω)]
    OperatorMatrix h2p;  // -4 (g²/ω) (c†c)²
    OperatorMatrix h3p;  // -(Δ/(4√N)) [c†c†c D(2g/ω) + c†cc D(-2g/ω)]

    OperatorMatrix sum() const { return h0p + h1p + h2p + h3p; }
};

TransformedSeries hprime_terms(const ModelParams& params, const HilbertSpec& spec,
                               CutoffPolicy policy = CutoffPolicy::enforce);

/// C_{n,n1}(x) = <n1| exp(x (a† - a)) |n> in associated-Laguerre form.
double displacement_element(int n, int n1, double x);

enum class Frame { lab, polaron };

struct LeadingEigenpair {
    int m{0};
    int n{0};
    double energy{0.0};
    StateVector state;          // lab frame: |m> D((g/ω)(N - 2m)) |n>
    StateVector polaron_state;  // transformed frame: |m> D(Ng/ω) |n>

    const StateVector& in(Frame f) const { return f == Frame::lab ? state : polaron_state; }
};

double leading_energy(const ModelParams& params, int m, int n);

/// Field displacement of the leading state |m;n> in the given frame.
double leading_displacement(const ModelParams& params, int m, Frame frame);

LeadingEigenpair leading_eigensystem(const ModelParams& params, const HilbertSpec& spec, int m,
                                     int n, CutoffPolicy policy = CutoffPolicy::enforce);

struct CorrectionLedger {
    ModelParams params;
    int m{0};
    int n{0};
    int order{1};
    double energy_shift{0.0};
    CVector state_delta;  // transformed frame, not normalized
    int truncation_n1{0};
    double max_amplitude{0.0};
};

struct CorrectionOptions {
    double resonance_tol_factor{1e-6};  // resonance_tol = factor * ω
    double term_cutoff{1e-12};          // stop once terms fall below this
    int max_n1{4000};
};

/// First-order Rayleigh-Schrödinger contribution of H'_order (order 1..3)
/// around |m;n> in the transformed frame. The state delta is expanded on the
/// spec; it must hold every |m±1; n1> with n1 <= truncation_n1.
CorrectionLedger rs_corrections(const ModelParams& params, const HilbertSpec& spec, int m, int n,
                                int order, CorrectionOptions options = {});

/// Default c-boson cutoff for one S_x well: clamp(ceil(N/2) - 1, 1, 6), never above N.
int well_cutoff(int n_atoms);

}  // namespace dicke
