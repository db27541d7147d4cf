// hpx.cpp: S_x-frame Hamiltonians, polaron transform, leading eigensystem
// and Rayleigh-Schrödinger corrections.

#include "dicke/hpx.hpp"

#include "dicke/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dicke {

namespace {

void check_sx_spec(const ModelParams& params, const HilbertSpec& spec, const char* who) {
    params.validate();
    if (params.n_atoms != spec.n_atoms) {
        throw ValidationError(std::string(who) + ": params and spec disagree on N");
    }
    if (spec.spin_cutoff > spec.n_atoms) {
        throw ValidationError(std::string(who) + ": c-boson cutoff exceeds N");
    }
    if (spec.n_max < 1) throw ValidationError(std::string(who) + ": n_max must be >= 1");
}

// ω (a+s)†(a+s) + k (a + a† + 2s) on one field block, written at (row0, row0).
void add_field_block(CMatrix& h, Eigen::Index row0, int field_dim, double omega, double shift,
                     double linear) {
    for (int n = 0; n < field_dim; ++n) {
        h(row0 + n, row0 + n) += omega * (n + shift * shift) + 2.0 * linear * shift;
        if (n + 1 < field_dim) {
            const double x = (omega * shift + linear) * std::sqrt(n + 1.0);
            h(row0 + n + 1, row0 + n) += x;
            h(row0 + n, row0 + n + 1) += x;
        }
    }
}

// Adds coef * |m+1><m| ⊗ block + h.c.
void add_ladder_block(CMatrix& h, const HilbertSpec& spec, int m, double coef, const CMatrix& block) {
    const int fd = spec.field_dim();
    const Eigen::Index up = spec.index(m + 1, 0);
    const Eigen::Index lo = spec.index(m, 0);
    h.block(up, lo, fd, fd) += coef * block;
    h.block(lo, up, fd, fd) += coef * block.adjoint();
}

// H with √(1 - c†c/N) replaced by `root(m)`.
template <typename Root>
OperatorMatrix assemble_sx(const ModelParams& params, const HilbertSpec& spec, Root root) {
    const int N = spec.n_atoms;
    const int fd = spec.field_dim();
    CMatrix h = CMatrix::Zero(spec.total_dim(), spec.total_dim());
    for (int m = 0; m <= spec.spin_cutoff; ++m) {
        // 2g (m - N/2)(a + a†) = -N g (a + a†) + 2 g m (a + a†)
        add_field_block(h, spec.index(m, 0), fd, params.omega, spec.field_shift,
                        2.0 * params.g * (m - 0.5 * N));
    }
    const double sqrt_n = std::sqrt(static_cast<double>(N));
    for (int m = 0; m < spec.spin_cutoff; ++m) {
        const double coef = 0.5 * params.delta * sqrt_n * std::sqrt(m + 1.0) * root(m);
        if (coef == 0.0) continue;
        for (int n = 0; n < fd; ++n) {
            h(spec.index(m + 1, n), spec.index(m, n)) += coef;
            h(spec.index(m, n), spec.index(m + 1, n)) += coef;
        }
    }
    return OperatorMatrix(std::move(h), true);
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// Generalized Laguerre L_k^{(a)}(y) by the three-term recurrence.
double laguerre(int k, int a, double y) {
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 1.0 + a - y;
    for (int j = 1; j < k; ++j) {
        const double next = ((2.0 * j + 1.0 + a - y) * cur - (j + a) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

int well_cutoff(int n_atoms) {
    if (n_atoms < 1) throw ValidationError("well_cutoff: N must be >= 1");
    const int half = (n_atoms + 1) / 2 - 1;
    return std::min(n_atoms, std::clamp(half, 1, 6));
}

OperatorMatrix hp_sx_hamiltonian(const ModelParams& params, const HilbertSpec& spec) {
    check_sx_spec(params, spec, "hp_sx_hamiltonian");
    const double N = spec.n_atoms;
    return assemble_sx(params, spec, [N](int m) { return std::sqrt(1.0 - m / N); });
}

OperatorMatrix hp_sx_series_hamiltonian(const ModelParams& params, const HilbertSpec& spec) {
    check_sx_spec(params, spec, "hp_sx_series_hamiltonian");
    const double N = spec.n_atoms;
    return assemble_sx(params, spec, [N](int m) { return 1.0 - m / (2.0 * N); });
}

OperatorMatrix polaron_transform(const ModelParams& params, const HilbertSpec& spec,
                                 CutoffPolicy policy) {
    check_sx_spec(params, spec, "polaron_transform");
    const double theta = 2.0 * params.g / params.omega;
    check_cutoff(spec.n_max, theta * spec.spin_cutoff, policy, "polaron_transform");
    const FieldDisplacement disp(spec.n_max);
    const int fd = spec.field_dim();
    CMatrix u = CMatrix::Zero(spec.total_dim(), spec.total_dim());
    for (int m = 0; m <= spec.spin_cutoff; ++m) {
        // exp(θ m (a - a†)) = D(-θ m); a real shift of the basis commutes with it
        u.block(spec.index(m, 0), spec.index(m, 0), fd, fd) = disp.matrix(-theta * m);
    }
    return OperatorMatrix(std::move(u), false);
}

TransformedSeries hprime_terms(const ModelParams& params, const HilbertSpec& spec,
                               CutoffPolicy policy) {
    check_sx_spec(params, spec, "hprime_terms");
    const int N = spec.n_atoms;
    const int fd = spec.field_dim();
    const double theta = 2.0 * params.g / params.omega;
    check_cutoff(spec.n_max, theta * spec.spin_cutoff, policy, "hprime_terms");
    const Eigen::Index dim = spec.total_dim();
    const double g2w = params.g * params.g / params.omega;

    CMatrix h0 = CMatrix::Zero(dim, dim);
    CMatrix h2 = CMatrix::Zero(dim, dim);
    for (int m = 0; m <= spec.spin_cutoff; ++m) {
        add_field_block(h0, spec.index(m, 0), fd, params.omega, spec.field_shift, -N * params.g);
        for (int n = 0; n < fd; ++n) {
            h0(spec.index(m, n), spec.index(m, n)) += 4.0 * N * g2w * m;
            h2(spec.index(m, n), spec.index(m, n)) = -4.0 * g2w * static_cast<double>(m) * m;
        }
    }

    CMatrix h1 = CMatrix::Zero(dim, dim);
    CMatrix h3 = CMatrix::Zero(dim, dim);
    if (params.delta != 0.0 && spec.spin_cutoff > 0) {
        const CMatrix d_plus = FieldDisplacement(spec.n_max).matrix(theta);  // exp(-θ(a - a†))
        const double sqrt_n = std::sqrt(static_cast<double>(N));
        for (int m = 0; m < spec.spin_cutoff; ++m) {
            const double up = std::sqrt(m + 1.0);
            add_ladder_block(h1, spec, m, 0.5 * params.delta * sqrt_n * up, d_plus);
            // <m+1| c†c†c |m> = m √(m+1)
            add_ladder_block(h3, spec, m, -params.delta / (4.0 * sqrt_n) * m * up, d_plus);
        }
    }
    return {OperatorMatrix(std::move(h0), true), OperatorMatrix::hermitize(h1, 1e-12),
            OperatorMatrix(std::move(h2), true), OperatorMatrix::hermitize(h3, 1e-12)};
}

double displacement_element(int n, int n1, double x) {
    if (n < 0 || n1 < 0) throw ValidationError("displacement_element: indices must be >= 0");
    if (x == 0.0) return n == n1 ? 1.0 : 0.0;
    const double y = x * x;
    // <n1|D(x)|n> = sqrt(lo!/hi!) s^{hi-lo} e^{-y/2} L_lo^{(hi-lo)}(y),
    // s = x for n1 >= n and -x otherwise.
    const int lo = std::min(n, n1);
    const int hi = std::max(n, n1);
    const int k = hi - lo;
    const double s = (n1 >= n) ? x : -x;
    const double log_pref =
        0.5 * (log_factorial(lo) - log_factorial(hi)) + k * std::log(std::abs(s)) - 0.5 * y;
    const double sign = (s < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
    return sign * std::exp(log_pref) * laguerre(lo, k, y);
}

double leading_energy(const ModelParams& params, int m, int n) {
    params.validate();
    return m * params.big_omega() + n * params.omega -
           static_cast<double>(params.n_atoms) * params.n_atoms * params.g * params.g / params.omega;
}

double leading_displacement(const ModelParams& params, int m, Frame frame) {
    const double gw = params.g / params.omega;
    return frame == Frame::lab ? gw * (params.n_atoms - 2.0 * m) : gw * params.n_atoms;
}

LeadingEigenpair leading_eigensystem(const ModelParams& params, const HilbertSpec& spec, int m,
                                     int n, CutoffPolicy policy) {
    check_sx_spec(params, spec, "leading_eigensystem");
    if (m < 0 || m > spec.spin_cutoff) {
        throw ValidationError("leading_eigensystem: m outside 0..c-cutoff");
    }
    if (n < 0 || n > spec.n_max) throw ValidationError("leading_eigensystem: n outside 0..n_max");
    LeadingEigenpair out;
    out.m = m;
    out.n = n;
    out.energy = leading_energy(params, m, n);
    out.state = displaced_number_state(spec, leading_displacement(params, m, Frame::lab), n, m, policy);
    out.polaron_state =
        displaced_number_state(spec, leading_displacement(params, m, Frame::polaron), n, m, policy);
    return out;
}

CorrectionLedger rs_corrections(const ModelParams& params, const HilbertSpec& spec, int m, int n,
                                int order, CorrectionOptions options) {
    check_sx_spec(params, spec, "rs_corrections");
    if (order < 1 || order > 3) throw ValidationError("rs_corrections: order must be 1, 2 or 3");
    if (m < 0 || m > spec.spin_cutoff) throw ValidationError("rs_corrections: m outside 0..c-cutoff");
    if (n < 0) throw ValidationError("rs_corrections: n must be >= 0");

    CorrectionLedger out;
    out.params = params;
    out.m = m;
    out.n = n;
    out.order = order;
    out.state_delta = CVector::Zero(spec.total_dim());

    const double g2w = params.g * params.g / params.omega;
    if (order == 2) {
        out.energy_shift = -4.0 * g2w * static_cast<double>(m) * m;
        return out;
    }
    out.energy_shift = 0.0;
    if (params.delta == 0.0) return out;

    const int N = params.n_atoms;
    const double sqrt_n = std::sqrt(static_cast<double>(N));
    const double pref = order == 1 ? 0.5 * params.delta * sqrt_n : -params.delta / (4.0 * sqrt_n);
    const double up_coef = order == 1 ? std::sqrt(m + 1.0) : m * std::sqrt(m + 1.0);
    const double down_coef = order == 1 ? std::sqrt(static_cast<double>(m))
                                        : (m - 1.0) * std::sqrt(static_cast<double>(m));
    const bool has_up = up_coef != 0.0 && m + 1 <= N;
    const bool has_down = down_coef != 0.0 && m >= 1;
    if (!has_up && !has_down) return out;
    if (has_up && m + 1 > spec.spin_cutoff) {
        throw ValidationError("rs_corrections: c-cutoff too small for the |m+1> branch");
    }

    const double x = 2.0 * params.g / params.omega;
    const double big_omega = params.big_omega();
    const double tol = options.resonance_tol_factor * params.omega;
    auto check_resonance = [&](double den, int n1, const char* branch) {
        if (std::abs(den) <= tol) {
            throw ResonanceError("rs_corrections: resonant denominator " + std::to_string(den) +
                                 " on the " + branch + " branch at n1 = " + std::to_string(n1));
        }
    };

    struct Term {
        int n1;
        double up, down;
    };
    std::vector<Term> terms;
    const double peak = n + x * x + 2.0;
    int quiet = 0;
    int n1 = 0;
    for (; n1 <= options.max_n1; ++n1) {
        Term t{n1, 0.0, 0.0};
        if (has_up) {
            const double den = (n - n1) * params.omega - big_omega;
            check_resonance(den, n1, "m+1");
            t.up = pref * up_coef * displacement_element(n, n1, x) / den;
        }
        if (has_down) {
            const double den = (n - n1) * params.omega + big_omega;
            check_resonance(den, n1, "m-1");
            t.down = pref * down_coef * displacement_element(n, n1, -x) / den;
        }
        terms.push_back(t);
        const bool small = std::abs(t.up) < options.term_cutoff && std::abs(t.down) < options.term_cutoff;
        quiet = small ? quiet + 1 : 0;
        if (n1 > peak && quiet >= 5) break;
    }
    if (n1 > options.max_n1) throw NumericalError("rs_corrections: n1 sum did not converge");
    out.truncation_n1 = n1;

    double tail = 0.0;
    for (int k = n1 + 1; k <= n1 + 50; ++k) {
        if (has_up) tail += std::abs(pref * up_coef * displacement_element(n, k, x) /
                                     ((n - k) * params.omega - big_omega));
        if (has_down) tail += std::abs(pref * down_coef * displacement_element(n, k, -x) /
                                       ((n - k) * params.omega + big_omega));
    }
    if (tail >= 1e-10) throw NumericalError("rs_corrections: tail estimate above 1e-10");

    // Expand on |m±1> D(Ng/ω) |n1> in the spec's field basis.
    const double alpha = leading_displacement(params, m, Frame::polaron);
    if (alpha == spec.field_shift) {
        // fields are plain Fock states here, no displacement tail to truncate
        if (spec.n_max < n1)
            throw CutoffError("rs_corrections: n_max = " + std::to_string(spec.n_max) + " below the sum cutoff " +
                              std::to_string(n1));
    } else {
        check_cutoff(spec.n_max, std::abs(alpha - spec.field_shift) + std::sqrt(static_cast<double>(n1)),
                     CutoffPolicy::enforce, "rs_corrections");
    }
    const int fd = spec.field_dim();
    for (const Term& t : terms) {
        out.max_amplitude = std::max({out.max_amplitude, std::abs(t.up), std::abs(t.down)});
        if (t.up == 0.0 && t.down == 0.0) continue;
        const CVector field = displaced_fock_amplitudes(spec.n_max, alpha, t.n1, spec.field_shift);
        if (t.up != 0.0) out.state_delta.segment(spec.index(m + 1, 0), fd) += t.up * field;
        if (t.down != 0.0) out.state_delta.segment(spec.index(m - 1, 0), fd) += t.down * field;
    }
    return out;
}

}  // namespace dicke
