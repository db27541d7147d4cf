#include "dicke/dynamics.hpp"
#include "dicke/errors.hpp"
#include "dicke/operators.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace dicke;

TEST_SUITE("operators") {

TEST_CASE("hermitian flag is enforced") {
    CMatrix m(2, 2);
    m << 1.0, cplx(0, 1), cplx(0, 1), 2.0;
    CHECK_THROWS_AS(OperatorMatrix(m, true), ValidationError);
    CHECK_NOTHROW(OperatorMatrix(m, false));
    CMatrix h(2, 2);
    h << 1.0, cplx(0, 1), cplx(0, -1), 2.0;
    CHECK(OperatorMatrix(h, true).hermiticity_defect() == 0.0);
    CHECK_FALSE(OperatorMatrix(h, true).is_real());
}

TEST_CASE("spin algebra") {
    const SpinOperators s1 = spin_operators(1);
    CHECK(s1.sz.entries()(0, 0).real() == -0.5);
    CHECK(s1.sz.entries()(1, 1).real() == 0.5);
    const auto ev = Eigen::SelfAdjointEigenSolver<CMatrix>(spin_operators(2).sz.entries()).eigenvalues();
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(0.0));
    CHECK(ev[2] == doctest::Approx(1.0));
    for (int n = 1; n <= 9; ++n) {
        const SpinOperators s = spin_operators(n);
        const CMatrix& sz = s.sz.entries();
        const CMatrix& sp = s.splus.entries();
        const CMatrix& sm = s.sminus.entries();
        CHECK(max_abs(commutator(sp, sm) - 2.0 * sz) < 1e-12);
        CHECK(max_abs(commutator(sz, sp) - sp) < 1e-12);
        CHECK(max_abs(commutator(sz, sm) + sm) < 1e-12);
        // Casimir j(j+1)
        const CMatrix sx = s.sx.entries();
        const CMatrix sy = (sp - sm) / cplx(0, 2);
        const double j = 0.5 * n;
        CHECK(max_abs(sx * sx + sy * sy + sz * sz - j * (j + 1) * CMatrix::Identity(n + 1, n + 1)) < 1e-12);
    }
}

TEST_CASE("S_x ground spin state") {
    for (int n : {1, 4, 7}) {
        const CVector v = sx_ground_spin_state(n);
        const CVector sv = spin_operators(n).sx.entries() * v;
        CHECK((sv + 0.5 * n * v).norm() < 1e-12);
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("field ladder") {
    const FieldOperators f = field_operators(6);
    CHECK(f.a.entries()(0, 1) == cplx(1.0));
    CHECK(max_abs(f.number.entries() - f.a_dagger.entries() * f.a.entries()) < 1e-14);
    const CMatrix comm = commutator(f.a.entries(), f.a_dagger.entries());
    CHECK(comm(6, 6).real() == doctest::Approx(-6.0));
    CHECK(max_abs(comm.topLeftCorner(6, 6) - CMatrix::Identity(6, 6)) < 1e-14);
    CHECK_THROWS_AS(field_operators(0), ValidationError);

    const int n_max = required_cutoff(1.5);
    const HilbertSpec s = with_spin_cutoff(build_spec(1, n_max), 0);
    const StateVector beta = coherent_state(s, 1.5);
    const cplx ea = beta.amplitudes.dot(field_operators(n_max).a.entries() * beta.amplitudes);
    CHECK(std::abs(ea - 1.5) < 1e-8);
}

TEST_CASE("decoupled Dicke spectrum") {
    const ModelParams p = ModelParams::from_g(2, 1.0, 1.0, 0.0);
    const auto sp = diagonalize(dicke_hamiltonian(p, build_spec(2, 5)));
    CHECK(sp.eigenvalues[0] == doctest::Approx(-1.0));
    const ModelParams q = ModelParams::from_g(3, 0.7, 1.3, 0.0);
    std::vector<double> expected;
    for (int ms = 0; ms <= 3; ++ms) {
        for (int n = 0; n <= 4; ++n) expected.push_back(0.7 * (ms - 1.5) + 1.3 * n);
    }
    std::sort(expected.begin(), expected.end());
    const auto sq = diagonalize(dicke_hamiltonian(q, build_spec(3, 4)));
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(sq.eigenvalues[i] - expected[i]) < 1e-12);
}

TEST_CASE("Dicke Hamiltonian is Hermitian") {
    const auto h = dicke_hamiltonian(ModelParams::from_g(8, 0.9, 1.1, 0.4), build_spec(8, 32));
    CHECK(h.hermiticity_defect() < 1e-12);
}

TEST_CASE("N = 1 reduces to the quantum Rabi model") {
    const double delta = 0.8, omega = 1.2, g = 0.45;
    const int n_max = 40;
    const auto ours = diagonalize(dicke_hamiltonian(ModelParams::from_g(1, delta, omega, g), build_spec(1, n_max)));
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(oracle::rabi(n_max, delta, omega, g)).eigenvalues();
    CHECK((ours.eigenvalues - ref).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("parity") {
    const HilbertSpec s = build_spec(4, 20);
    const OperatorMatrix p = parity_operator(s);
    CHECK(max_abs(p.entries() * p.entries() - CMatrix::Identity(s.total_dim(), s.total_dim())) == 0.0);
    for (double g : {0.0, 0.3, 0.7, 1.5}) {
        const auto h = dicke_hamiltonian(ModelParams::from_g(4, 0.6, 1.0, g), s);
        CHECK(max_abs(commutator(h.entries(), p.entries())) < 1e-12);
    }
    const StateVector v = fock_state(s, 0, 0);
    CHECK(expectation(p, v) == doctest::Approx(1.0));
    CHECK_THROWS_AS(parity_operator(with_field_shift(s, 1.0)), ValidationError);
}

TEST_CASE("S_z series: decoupled spectrum") {
    const ModelParams p = ModelParams::from_g(8, 0.7, 1.0, 0.0);
    const SzSeries sz = hp_sz_hamiltonians(p, 6, 5);
    const auto ev = diagonalize(sz.h0).eigenvalues;
    std::vector<double> expected;
    for (int n = 0; n <= 6; ++n) {
        for (int m = 0; m <= 5; ++m) expected.push_back(n * 1.0 + m * 0.7);
    }
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(ev[i] - expected[i]) < 1e-12);
    CHECK(max_abs(sz.h1.entries()) == 0.0);
    CHECK_THROWS_AS(hp_sz_hamiltonians(p, 6, 9), ValidationError);
}

TEST_CASE("S_z series: gap matches the Bogoliubov oracle") {
    const ModelParams p = ModelParams::from_lambda(64, 1.0, 1.0, 0.25);
    const SzSeries sz = hp_sz_hamiltonians(p, 30, 30);
    const auto ev = lowest_eigenpairs(sz.h0, 2).eigenvalues;
    const auto modes = oracle::normal_modes(1.0, 1.0, 0.25);
    CHECK(std::abs((ev[1] - ev[0]) - modes.front()) < 1e-6);
    CHECK(modes.front() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("S_z series: soft mode closes at the critical coupling") {
    double previous = 1e9;
    for (double lam : {0.3, 0.4, 0.45, 0.49}) {
        const double eps = oracle::normal_modes(1.0, 1.0, lam).front();
        CHECK(eps < previous);
        previous = eps;
    }
    CHECK(previous < 0.2);
}

}  // TEST_SUITE
