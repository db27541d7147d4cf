#include "dicke/config.hpp"
#include "dicke/errors.hpp"
#include "dicke/io.hpp"

#include <doctest.h>

#include <cmath>

using namespace dicke;

TEST_SUITE("io") {

TEST_CASE("number formatting keeps 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("state round trip") {
    const HilbertSpec s = with_field_shift(with_spin_cutoff(build_spec(3, 14), 2), 0.75);
    const StateVector v = coherent_state(s, cplx(0.4, -0.2), 1);
    const json j = to_json(v);
    CHECK(j["amplitudes"].size() == std::size_t(s.total_dim()));
    CHECK(j["spec"]["spin_cutoff"] == 2);
    const StateVector back = state_from_json(json::parse(j.dump()));
    CHECK(back.spec == s);
    CHECK(back.amplitudes == v.amplitudes);

    json bad = j;
    bad["amplitudes"].erase(0);
    CHECK_THROWS_AS((state_from_json(bad)), ValidationError);
    CHECK_THROWS_AS((state_from_json(json{{"spec", 1}})), ValidationError);
}

TEST_CASE("records carry the documented fields") {
    const ModelParams p = ModelParams::from_g(2, 0.5, 1.0, 0.3);
    const HilbertSpec s = build_spec(2, 4);
    const json sp = to_json(diagonalize(dicke_hamiltonian(p, s), 3), p, s);
    for (const char* k : {"params", "spec", "eigenvalues", "residual"}) CHECK(sp.contains(k));
    CHECK(sp["eigenvalues"].size() == 3);

    const HilbertSpec hs = with_field_shift(with_spin_cutoff(build_spec(2, 40), 2), p.drive_amplitude());
    const json led = to_json(rs_corrections(p, hs, 0, 0, 1));
    for (const char* k : {"params", "m", "n", "order", "energy_shift", "truncation_n1", "max_amplitude"}) {
        CHECK(led.contains(k));
    }
}

TEST_CASE("time series CSV") {
    TimeSeries ts{{"t", "x"}, {{0.0, 1.0}, {0.5, 0.1}}};
    const std::string csv = to_csv(ts, {"hello"});
    CHECK(csv == "# hello\nt,x\n0,1\n0.5,0.10000000000000001\n");
    CHECK(to_json(ts)["columns"][1] == "x");
    CHECK(ts.column("x") == 1);
    CHECK_THROWS_AS((ts.column("y")), ValidationError);
}

TEST_CASE("sweep CSV and JSON") {
    SweepResult r;
    r.experiment = "demo";
    r.axis = "N";
    for (int n : {4, 8}) {
        SweepPoint p;
        p.value = n;
        p.metrics = {{"infidelity", 1.0 / n}};
        p.audit.pass = n == 4;
        r.points.push_back(p);
    }
    r.fit = PowerLawFit{-1.0, 1.0, 0.0, -1.0, -1.0, 2, false};
    const std::string csv = to_csv(r);
    CHECK(csv.find("# failed_audits: 1") != std::string::npos);
    CHECK(csv.find("# fit: exponent=-1") != std::string::npos);
    CHECK(csv.find("N,infidelity,audit_pass,audit_delta,audit_n_max,audit_tail_weight\n4,0.25,1,") != std::string::npos);
    const json j = to_json(r);
    CHECK(j["failed_audits"] == 1);
    CHECK(j["fit"]["exponent"] == -1.0);
    CHECK(j["fit_trimmed"].is_null());
    CHECK(j["points"][1]["audit"]["pass"] == false);
}

}  // TEST_SUITE

TEST_SUITE("config") {

TEST_CASE("parsing") {
    const ConfigMap m = parse_config_text("# comment\nn_atoms = 4\n  g=0.5   # trailing\n\ndelta = 0.2\n");
    CHECK(m.size() == 3);
    CHECK(m.at("g") == "0.5");
    CHECK_THROWS_AS((parse_config_text("n_atoms 4\n")), ValidationError);
    CHECK_THROWS_AS((parse_config_text("bogus = 1\n")), ValidationError);
    CHECK_THROWS_AS((parse_config_text("g = 1\ng = 2\n")), ValidationError);
    CHECK_THROWS_AS((load_config_file("/nonexistent/cfg")), ValidationError);
}

TEST_CASE("exactly one coupling") {
    CHECK_THROWS_AS((resolve_config({{"g", "0.1"}, {"lambda", "0.2"}})), ValidationError);
    CHECK_THROWS_AS((resolve_config({{"n_atoms", "4"}})), ValidationError);
    const RunConfig c = resolve_config({{"n_atoms", "4"}, {"lambda", "0.6"}});
    CHECK(c.lambda_given);
    CHECK(c.params.g == doctest::Approx(0.3));
}

TEST_CASE("overrides win and empty values clear") {
    ConfigMap m = parse_config_text("n_atoms = 4\ng = 0.5\n");
    apply_overrides(m, {"g=", "lambda=1.0", "n_atoms=16"});
    const RunConfig c = resolve_config(m);
    CHECK(c.params.n_atoms == 16);
    CHECK(c.params.g == doctest::Approx(0.25));
    CHECK_THROWS_AS((apply_overrides(m, {"nokey"})), ValidationError);
    CHECK_THROWS_AS((apply_overrides(m, {"unknown=3"})), ValidationError);
}

TEST_CASE("values") {
    const RunConfig c = resolve_config({{"g", "0.5"},
                                        {"n_max", "auto"},
                                        {"initial", "cat:1,1.0471975511965976"},
                                        {"lambda_grid", "0.3:0.5:0.1"},
                                        {"n_list", "8,16"},
                                        {"format", "json"},
                                        {"deterministic", "yes"}});
    CHECK_FALSE(c.n_max.has_value());
    CHECK(c.initial.kind == InitialState::Kind::cat);
    CHECK(c.lambda_grid.size() == 3);
    CHECK(c.lambda_grid[2] == doctest::Approx(0.5));
    CHECK(c.n_list == std::vector<int>{8, 16});
    CHECK(c.format == OutputFormat::json);
    CHECK(c.deterministic);
    CHECK(InitialState::parse("coherent:1.5,-0.5").beta == cplx(1.5, -0.5));
    CHECK(InitialState::parse("vacuum").kind == InitialState::Kind::vacuum);
    CHECK_THROWS_AS((InitialState::parse("squeezed:1")), ValidationError);
    CHECK_THROWS_AS((resolve_config({{"g", "abc"}})), ValidationError);
    CHECK_THROWS_AS((resolve_config({{"g", "0.1"}, {"format", "xml"}})), ValidationError);
    CHECK_THROWS_AS((resolve_config({{"g", "0.1"}, {"n_max", "0"}})), ValidationError);
    CHECK_THROWS_AS((parse_real_list("1:0:0.1")), ValidationError);
}

TEST_CASE("provenance entries are stable") {
    const RunConfig a = resolve_config({{"g", "0.5"}, {"out", "/tmp/a"}});
    const RunConfig b = resolve_config({{"g", "0.5"}, {"out", "/tmp/b"}});
    CHECK(a.entries() == b.entries());
    CHECK(a.entries().front().first == "n_atoms");
}

}  // TEST_SUITE
