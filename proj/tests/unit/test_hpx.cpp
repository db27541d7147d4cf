#include "dicke/dynamics.hpp"
#include "dicke/eigensolver.hpp"
#include "dicke/errors.hpp"
#include "dicke/hpx.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace dicke;

namespace {

CMatrix number_of_c(const HilbertSpec& s) {
    CMatrix c = CMatrix::Zero(s.total_dim(), s.total_dim());
    for (int m = 0; m < s.spin_dim(); ++m) {
        for (int n = 0; n < s.field_dim(); ++n) c(s.index(m, n), s.index(m, n)) = double(m);
    }
    return c;
}

// max |A_ij| over rows/cols whose Fock index is <= limit
double interior_max(const CMatrix& a, const HilbertSpec& s, int limit) {
    double out = 0.0;
    for (int m = 0; m < s.spin_dim(); ++m) {
        for (int n = 0; n <= limit; ++n) {
            for (int m1 = 0; m1 < s.spin_dim(); ++m1) {
                for (int n1 = 0; n1 <= limit; ++n1) {
                    out = std::max(out, std::abs(a(s.index(m, n), s.index(m1, n1))));
                }
            }
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("hpx") {

TEST_CASE("S_x frame Hamiltonian structure") {
    const HilbertSpec s = with_spin_cutoff(build_spec(5, 20), 5);
    const auto h0 = hp_sx_hamiltonian(ModelParams::from_g(5, 0.0, 1.0, 0.4), s);
    CHECK(max_abs(commutator(h0.entries(), number_of_c(s))) < 1e-12);
    const auto h1 = hp_sx_hamiltonian(ModelParams::from_g(5, 0.3, 1.0, 0.4), s);
    CHECK(max_abs(commutator(h1.entries(), number_of_c(s))) > 0.1);
    CHECK(h1.hermiticity_defect() < 1e-12);

    const auto free = hp_sx_hamiltonian(ModelParams::from_g(5, 0.0, 1.0, 0.0), s);
    for (int m = 0; m <= 5; ++m) CHECK(free.entries()(s.index(m, 0), s.index(m, 0)) == cplx(0.0));
    CHECK_THROWS_AS(hp_sx_hamiltonian(ModelParams::from_g(4, 0.0, 1.0, 0.4), s), ValidationError);
}

TEST_CASE("S_x frame spectrum equals the Dicke spectrum") {
    const ModelParams p = ModelParams::from_g(6, 0.2, 1.0, 1.0);
    const int n_max = required_cutoff(6.0);
    const auto lab = diagonalize(dicke_hamiltonian(p, build_spec(6, n_max)), 8);
    const auto hp = diagonalize(hp_sx_hamiltonian(p, with_spin_cutoff(build_spec(6, n_max), 6)), 8);
    CHECK((lab.eigenvalues - hp.eigenvalues).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("polaron transform") {
    const HilbertSpec s = with_spin_cutoff(build_spec(6, 80), 3);
    const auto id = polaron_transform(ModelParams::from_g(6, 0.4, 1.0, 0.0), s);
    CHECK(max_abs(id.entries() - CMatrix::Identity(s.total_dim(), s.total_dim())) < 1e-14);

    const ModelParams p = ModelParams::from_g(6, 0.4, 1.0, 0.5);
    const CMatrix u = polaron_transform(p, s).entries();
    CHECK(interior_max(u * u.adjoint() - CMatrix::Identity(s.total_dim(), s.total_dim()), s, 40) < 1e-10);
    CHECK(max_abs(commutator(u, number_of_c(s))) < 1e-14);
    // sector m carries D(-2gm/ω)
    const Eigen::MatrixXd d = oracle::displacement(80, -2.0 * 0.5 * 2 / 1.0);
    CHECK((u.block(s.index(2, 0), s.index(2, 0), 81, 81) - d.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("transformed series") {
    const ModelParams p = ModelParams::from_g(6, 0.4, 1.0, 0.8);
    const HilbertSpec s = with_spin_cutoff(build_spec(6, 150), 3);
    const TransformedSeries t = hprime_terms(p, s);
    for (int m = 0; m <= 3; ++m) {
        for (int n = 0; n <= 150; n += 30) {
            CHECK(t.h2p.entries()(s.index(m, n), s.index(m, n)).real() == doctest::Approx(-4.0 * 0.64 * m * m));
        }
    }
    CHECK(max_abs(t.h2p.entries() - CMatrix(t.h2p.entries().diagonal().asDiagonal())) == 0.0);

    const CMatrix u = polaron_transform(p, s).entries();
    const CMatrix rotated = u.adjoint() * hp_sx_series_hamiltonian(p, s).entries() * u;
    CHECK(interior_max(t.sum().entries() - rotated, s, 20) < 1e-8);

    const TransformedSeries t0 = hprime_terms(ModelParams::from_g(6, 0.0, 1.0, 0.8), s);
    CHECK(max_abs(t0.h1p.entries()) == 0.0);
    CHECK(max_abs(t0.h3p.entries()) == 0.0);
}

TEST_CASE("displacement elements") {
    CHECK(displacement_element(0, 0, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(displacement_element(0, 0, 1.0) == doctest::Approx(0.60653066).epsilon(1e-8));
    for (int n = 0; n < 5; ++n) {
        for (int n1 = 0; n1 < 5; ++n1) CHECK(displacement_element(n, n1, 0.0) == (n == n1 ? 1.0 : 0.0));
    }
    double sum = 0.0;
    for (int n1 = 0; n1 <= 200; ++n1) sum += std::pow(displacement_element(3, n1, 2.0), 2);
    CHECK(std::abs(sum - 1.0) < 1e-10);

    const Eigen::MatrixXd ref = oracle::displacement(200, -1.7);
    for (int n = 0; n <= 12; ++n) {
        for (int n1 = 0; n1 <= 12; ++n1) CHECK(std::abs(displacement_element(n, n1, -1.7) - ref(n1, n)) < 1e-12);
    }
    CHECK_THROWS_AS(displacement_element(-1, 0, 1.0), ValidationError);
}

TEST_CASE("leading eigensystem") {
    const ModelParams p = ModelParams::from_g(2, 0.3, 1.0, 0.5);
    CHECK(p.big_omega() == doctest::Approx(2.0));
    CHECK(leading_energy(p, 0, 0) == doctest::Approx(-1.0));
    CHECK(leading_energy(p, 1, 2) == doctest::Approx(2.0 + 2.0 - 1.0));

    const ModelParams free = ModelParams::from_g(3, 0.3, 1.0, 0.0);
    const HilbertSpec s0 = with_spin_cutoff(build_spec(3, 26), 2);
    const LeadingEigenpair e = leading_eigensystem(free, s0, 1, 4);
    CHECK(e.energy == doctest::Approx(4.0));
    CHECK((e.state.amplitudes - fock_state(s0, 1, 4).amplitudes).norm() < 1e-14);

    const ModelParams q = ModelParams::from_g(8, 0.3, 1.0, 1.0);
    const HilbertSpec s = with_field_shift(with_spin_cutoff(build_spec(8, 80), 2), q.drive_amplitude());
    const LeadingEigenpair l = leading_eigensystem(q, s, 1, 2);
    CHECK(expectation(hprime_terms(q, s).h0p, l.polaron_state) == doctest::Approx(l.energy).epsilon(1e-10));
    CHECK(std::abs(leading_energy(q, 1, 2) - (32.0 + 2.0 - 64.0)) < 1e-12);

    // lab-frame state is U0 times the transformed one
    const CMatrix u = polaron_transform(q, s).entries();
    CHECK(std::abs(std::abs(l.state.amplitudes.dot(u * l.polaron_state.amplitudes)) - 1.0) < 1e-10);

    for (Frame f : {Frame::lab, Frame::polaron}) {
        const LeadingEigenpair a = leading_eigensystem(q, s, 0, 1);
        const LeadingEigenpair b = leading_eigensystem(q, s, 2, 1);
        const LeadingEigenpair c = leading_eigensystem(q, s, 0, 3);
        CHECK(std::abs(a.in(f).overlap(b.in(f))) < 1e-8);
        CHECK(std::abs(a.in(f).overlap(c.in(f))) < 1e-8);
        CHECK(std::abs(a.in(f).norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("correction ledger") {
    const ModelParams p = ModelParams::from_g(8, 0.3, 1.0, 1.0);
    const HilbertSpec s = with_field_shift(with_spin_cutoff(build_spec(8, 60), 3), p.drive_amplitude());
    const CorrectionLedger first = rs_corrections(p, s, 0, 0, 1);
    CHECK(first.energy_shift == 0.0);
    CHECK(first.truncation_n1 > 0);
    CHECK(first.max_amplitude > 0.0);
    // m = 0: only the |m+1> branch
    CHECK(first.state_delta.segment(s.index(0, 0), s.field_dim()).norm() == 0.0);
    CHECK(first.state_delta.segment(s.index(1, 0), s.field_dim()).norm() > 0.0);
    CHECK(first.state_delta.segment(s.index(2, 0), s.field_dim()).norm() == 0.0);

    CHECK(rs_corrections(p, s, 0, 0, 2).energy_shift == 0.0);
    CHECK(rs_corrections(p, s, 2, 0, 2).energy_shift == -16.0);
    CHECK(rs_corrections(p, s, 1, 1, 3).energy_shift == 0.0);

    const ModelParams res = ModelParams::from_g(2, 0.3, 1.0, 0.5);  // Ω = 2ω
    const HilbertSpec sr = with_field_shift(with_spin_cutoff(build_spec(2, 40), 2), res.drive_amplitude());
    CHECK_THROWS_AS(rs_corrections(res, sr, 1, 0, 1), ResonanceError);
    CHECK_THROWS_AS(rs_corrections(p, s, 3, 0, 1), ValidationError);  // |m+1> outside the cutoff
    CHECK_THROWS_AS(rs_corrections(p, s, 0, 0, 4), ValidationError);
}

TEST_CASE("first-order correction moves |0;0> toward the exact ground state") {
    const ModelParams p = ModelParams::from_g(8, 0.3, 1.0, 1.0);
    const HilbertSpec s = with_field_shift(with_spin_cutoff(build_spec(8, 90), 3), p.drive_amplitude());
    const auto gs = diagonalize(hp_sx_hamiltonian(p, s), 1);
    const CVector lab = gs.eigenvectors.col(0);
    const StateVector exact{s, polaron_transform(p, s).entries().adjoint() * lab};
    const StateVector lead = fock_state(s, 0, 0);
    const StateVector corrected{s, lead.amplitudes + rs_corrections(p, s, 0, 0, 1).state_delta};
    const double before = 1.0 - fidelity(lead, exact);
    const double after = 1.0 - fidelity(corrected, exact);
    CHECK(before > 1e-5);
    CHECK(after < 0.05 * before);
}

TEST_CASE("first-order amplitudes scale as 1/sqrt(N)") {
    double previous = 0.0;
    for (int n : {8, 16, 32}) {
        const ModelParams p = ModelParams::from_g(n, 0.2, 1.0, 1.0);
        const HilbertSpec s = with_field_shift(with_spin_cutoff(build_spec(n, 40), 1), p.drive_amplitude());
        const double amp = rs_corrections(p, s, 0, 0, 1).max_amplitude;
        if (previous > 0.0) CHECK(amp / previous == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
        previous = amp;
    }
}

TEST_CASE("well cutoff") {
    CHECK(well_cutoff(1) == 1);
    CHECK(well_cutoff(2) == 1);
    CHECK(well_cutoff(4) == 1);
    CHECK(well_cutoff(8) == 3);
    CHECK(well_cutoff(32) == 6);
}

}  // TEST_SUITE
