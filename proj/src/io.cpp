// io.cpp: JSON and CSV serialization.

#include "dicke/io.hpp"

#include "dicke/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace dicke {

namespace {

void write_header(std::ostringstream& os, const std::vector<std::string>& header) {
    for (const auto& line : header) os << "# " << line << '\n';
}

std::string fit_line(const char* label, const PowerLawFit& f) {
    return std::string(label) + ": exponent=" + format_double(f.exponent) +
           " prefactor=" + format_double(f.prefactor) + " std_error=" + format_double(f.std_error) +
           " ci95=[" + format_double(f.ci_low) + ", " + format_double(f.ci_high) + "]" +
           " points=" + std::to_string(f.points);
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(const HilbertSpec& spec) {
    return {{"n_atoms", spec.n_atoms},
            {"n_max", spec.n_max},
            {"spin_cutoff", spec.spin_cutoff},
            {"field_shift", spec.field_shift}};
}

json to_json(const ModelParams& p) {
    return {{"n_atoms", p.n_atoms}, {"delta", p.delta}, {"omega", p.omega}, {"g", p.g}, {"lambda", p.lambda()}};
}

json to_json(const StateVector& state) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
        amps.push_back({state.amplitudes[i].real(), state.amplitudes[i].imag()});
    }
    return {{"spec", to_json(state.spec)}, {"amplitudes", std::move(amps)}};
}

json to_json(const SpectrumResult& spectrum, const ModelParams& params, const HilbertSpec& spec) {
    std::vector<double> ev(spectrum.eigenvalues.data(), spectrum.eigenvalues.data() + spectrum.eigenvalues.size());
    return {{"params", to_json(params)}, {"spec", to_json(spec)}, {"eigenvalues", ev}, {"residual", spectrum.residual}};
}

json to_json(const CorrectionLedger& l) {
    return {{"params", to_json(l.params)},       {"m", l.m},
            {"n", l.n},                          {"order", l.order},
            {"energy_shift", l.energy_shift},    {"truncation_n1", l.truncation_n1},
            {"max_amplitude", l.max_amplitude}};
}

json to_json(const CutoffAudit& a) {
    return {{"pass", a.pass},
            {"n_max", a.n_max},
            {"doubled_n_max", a.doubled_n_max},
            {"base_value", a.base_value},
            {"doubled_value", a.doubled_value},
            {"delta", a.delta},
            {"tolerance", a.tolerance},
            {"tail_weight", a.tail_weight}};
}

json to_json(const PowerLawFit& f) {
    return {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"std_error", f.std_error},
            {"ci_low", f.ci_low},     {"ci_high", f.ci_high},     {"points", f.points},
            {"dropped_first", f.dropped_first}};
}

json to_json(const TimeSeries& series) {
    return {{"columns", series.columns}, {"rows", series.rows}};
}

json to_json(const SweepResult& sweep) {
    json points = json::array();
    for (const auto& p : sweep.points) {
        json metrics = json::object();
        for (const auto& m : p.metrics) metrics[m.name] = m.value;
        points.push_back({{"value", p.value}, {"metrics", std::move(metrics)}, {"audit", to_json(p.audit)}});
    }
    return {{"experiment", sweep.experiment},
            {"axis", sweep.axis},
            {"failed_audits", sweep.failed_audits()},
            {"points", std::move(points)},
            {"fit", sweep.fit ? to_json(*sweep.fit) : json(nullptr)},
            {"fit_trimmed", sweep.fit_trimmed ? to_json(*sweep.fit_trimmed) : json(nullptr)}};
}

HilbertSpec spec_from_json(const json& j) {
    try {
        HilbertSpec spec = build_spec(j.at("n_atoms").get<int>(), j.at("n_max").get<int>());
        spec = with_spin_cutoff(spec, j.at("spin_cutoff").get<int>());
        return with_field_shift(spec, j.value("field_shift", 0.0));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("spec record: ") + e.what());
    }
}

StateVector state_from_json(const json& j) {
    try {
        StateVector s;
        s.spec = spec_from_json(j.at("spec"));
        const auto& amps = j.at("amplitudes");
        if (static_cast<Eigen::Index>(amps.size()) != s.spec.total_dim()) {
            throw ValidationError("state record: " + std::to_string(amps.size()) + " amplitudes for dimension " +
                                  std::to_string(s.spec.total_dim()));
        }
        s.amplitudes.resize(s.spec.total_dim());
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (!amps[i].is_array() || amps[i].size() != 2) throw ValidationError("state record: amplitude is not [re, im]");
            s.amplitudes[static_cast<Eigen::Index>(i)] = {amps[i][0].get<double>(), amps[i][1].get<double>()};
        }
        return s;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("state record: ") + e.what());
    }
}

std::string to_csv(const TimeSeries& series, const std::vector<std::string>& header) {
    std::ostringstream os;
    write_header(os, header);
    for (std::size_t c = 0; c < series.columns.size(); ++c) os << (c ? "," : "") << series.columns[c];
    os << '\n';
    for (const auto& row : series.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
        os << '\n';
    }
    return os.str();
}

std::string to_csv(const SweepResult& sweep, const std::vector<std::string>& header) {
    std::ostringstream os;
    write_header(os, header);
    os << "# experiment: " << sweep.experiment << '\n';
    os << "# failed_audits: " << sweep.failed_audits() << '\n';
    if (sweep.fit) os << "# " << fit_line("fit", *sweep.fit) << '\n';
    if (sweep.fit_trimmed) os << "# " << fit_line("fit_trimmed", *sweep.fit_trimmed) << '\n';

    std::vector<std::string> names;
    if (!sweep.points.empty()) {
        for (const auto& m : sweep.points.front().metrics) {
            if (m.name != sweep.axis) names.push_back(m.name);  // the axis column already carries it
        }
    }
    os << sweep.axis;
    for (const auto& n : names) os << ',' << n;
    os << ",audit_pass,audit_delta,audit_n_max,audit_tail_weight\n";
    for (const auto& p : sweep.points) {
        os << format_double(p.value);
        for (const auto& n : names) os << ',' << format_double(p.metric(n));
        os << ',' << (p.audit.pass ? 1 : 0) << ',' << format_double(p.audit.delta) << ',' << p.audit.n_max << ','
           << format_double(p.audit.tail_weight) << '\n';
    }
    return os.str();
}

}  // namespace dicke
