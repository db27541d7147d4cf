#include "dicke/errors.hpp"
#include "dicke/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace dicke;

TEST_SUITE("experiments") {

TEST_CASE("coherent-state audits") {
    const CutoffAudit ok = audit_coherent_state(1.0, 64);
    CHECK(ok.pass);
    CHECK(ok.doubled_n_max == 128);
    CHECK(ok.tolerance == 1e-8);
    CHECK(ok.delta < 1e-12);
    CHECK_FALSE(audit_coherent_state(7.0, 16).pass);
}

TEST_CASE("QAMP audit agrees with the adequacy rule") {
    const ModelParams p = ModelParams::from_g(6, 0.0, 1.0, 0.5);  // Ng/ω = 3, |β|max = 6
    CHECK(required_cutoff(2.0 * p.drive_amplitude()) == 82);
    const CutoffAudit rule = audit_qamp(p, 82);
    CHECK(rule.pass);
    CHECK(rule.base_value == doctest::Approx(36.0).epsilon(1e-8));
    CHECK_FALSE(audit_qamp(p, 46).pass);
}

TEST_CASE("audit plumbing") {
    int calls = 0;
    auto compute = [&](int nm) {
        ++calls;
        return AuditSample{1.0 / nm, 0.0};
    };
    const CutoffAudit a = cutoff_audit(compute, 4, AuditKind::fidelity);
    CHECK(calls == 2);
    CHECK(a.delta == doctest::Approx(0.125));
    CHECK_FALSE(a.pass);
    CHECK(audit_tolerance(AuditKind::fidelity) == 1e-6);
    CHECK_THROWS_AS((cutoff_audit(compute, 0, AuditKind::spectrum)), ValidationError);
}

TEST_CASE("power-law fit") {
    const PowerLawFit exact = fit_power_law({1, 2, 4, 8}, {3.0, 1.5, 0.75, 0.375});
    CHECK(exact.exponent == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(exact.prefactor == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(exact.std_error < 1e-12);

    const PowerLawFit noisy = fit_power_law({1, 2, 4, 8, 16}, {1.0, 0.52, 0.24, 0.13, 0.061});
    CHECK(noisy.ci_low < noisy.exponent);
    CHECK(noisy.ci_high > noisy.exponent);
    CHECK(noisy.points == 5);
    CHECK_THROWS_AS((fit_power_law({1}, {1})), ValidationError);
    CHECK_THROWS_AS((fit_power_law({1, 2}, {1, -1})), ValidationError);
    CHECK_THROWS_AS((fit_power_law({2, 2}, {1, 3})), ValidationError);
}

TEST_CASE("zero splitting makes the leading state exact") {
    const SweepResult byN = convergence_in_N(ModelParams::from_g(1, 0.0, 1.0, 1.0), {2, 4, 8});
    for (const auto& pt : byN.points) CHECK(pt.metric("infidelity") < 1e-12);
    const SweepResult byG = convergence_in_g(ModelParams::from_g(4, 0.0, 1.0, 1.0), {0.5, 2.0});
    for (const auto& pt : byG.points) CHECK(pt.metric("infidelity") < 1e-12);
}

TEST_CASE("convergence sweeps") {
    const SweepResult r = convergence_in_g(ModelParams::from_g(4, 0.2, 1.0, 1.0), {2.0, 0.5, 1.0});
    REQUIRE(r.points.size() == 3);
    CHECK(r.axis == "g");
    CHECK(r.points[0].value == 0.5);  // sorted by axis value
    CHECK(r.points[0].metric("infidelity") > r.points[1].metric("infidelity"));
    CHECK(r.points[1].metric("infidelity") > r.points[2].metric("infidelity"));
    CHECK(r.failed_audits() == 0);
    REQUIRE(r.fit.has_value());
    REQUIRE(r.fit_trimmed.has_value());
    CHECK(r.fit_trimmed->dropped_first);
    CHECK(r.fit_trimmed->points == 2);

    // negative control: weak coupling with Δ > 0
    const SweepResult weak = convergence_in_g(ModelParams::from_g(4, 0.2, 1.0, 1.0), {0.05});
    CHECK(weak.points[0].metric("infidelity") > 0.1);
    CHECK_THROWS_AS((weak.points[0].metric("nope")), ValidationError);
}

TEST_CASE("failing audits are flagged and excluded from the fit") {
    ConvergenceOptions starved;
    starved.n_max = 3;
    const SweepResult r = convergence_in_g(ModelParams::from_g(4, 0.2, 1.0, 1.0), {0.1, 0.2, 0.3, 0.4}, starved);
    CHECK(r.failed_audits() > 0);
    int passing = 0;
    for (const auto& p : r.points) passing += p.audit.pass ? 1 : 0;
    if (passing >= 2) {
        REQUIRE(r.fit.has_value());
        CHECK(r.fit->points == passing);
    } else {
        CHECK_FALSE(r.fit.has_value());
    }
}

TEST_CASE("phase scan validation") {
    const ModelParams t = ModelParams::from_g(2, 1.0, 1.0, 0.1);
    CHECK_THROWS_AS((phase_transition_scan(t, {0.3, 0.4, 0.5, 0.6}, {2})), ValidationError);
    CHECK_THROWS_AS((phase_transition_scan(t, {0.6, 0.7, 0.8, 0.9, 1.0}, {2})), ValidationError);
    CHECK_THROWS_AS((phase_transition_scan(t, {0.3, 0.4, 0.5, 0.6, 0.7}, {})), ValidationError);
}

TEST_CASE("small phase scan") {
    std::vector<double> grid;
    for (int i = 0; i <= 24; ++i) grid.push_back(0.3 + 0.025 * i);
    const PhaseScanResult r = phase_transition_scan(ModelParams::from_g(4, 1.0, 1.0, 0.1), grid, {4, 8});
    REQUIRE(r.curves.size() == 2);
    CHECK(r.summary.axis == "N");
    CHECK(r.summary.points.size() == 2);
    for (const auto& pt : r.summary.points) {
        CHECK(pt.metric("lambda_c") == 0.5);
        CHECK(pt.audit.pass);
    }
    CHECK(std::isnan(r.curves[0].points.front().metric("curvature")));
    CHECK(r.curves[0].points[1].metric("photons_per_atom") >= 0.0);
    CHECK(r.curves[0].points[1].metric("sz_per_atom") < 0.0);
    CHECK(r.summary.points[1].metric("distance_to_critical") <= r.summary.points[0].metric("distance_to_critical"));
}

TEST_CASE("leading-order deficit shrinks with N") {
    const double d4 = leading_order_deficit(ModelParams::from_g(4, 0.2, 1.0, 1.0));
    const double d8 = leading_order_deficit(ModelParams::from_g(8, 0.2, 1.0, 1.0));
    CHECK(d4 > 0.0);
    CHECK(d8 < d4);
    DeficitOptions vac;
    vac.initial = DeficitInitial::vacuum;
    vac.samples = 8;
    CHECK(leading_order_deficit(ModelParams::from_g(2, 0.0, 1.0, 0.5), vac) < 1e-8);
}

}  // TEST_SUITE
