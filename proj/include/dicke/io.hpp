// io.hpp: JSON and CSV serialization.
//
// JSON records (field names are stable):
//   spec      {n_atoms, n_max, spin_cutoff, field_shift}
//   params    {n_atoms, delta, omega, g, lambda}
//   state     {spec, amplitudes: [[re, im], ...]}           basis order of hilbert.hpp
//   spectrum  {params, spec, eigenvalues, residual}
//   ledger    {params, m, n, order, energy_shift, truncation_n1, max_amplitude}
//   audit     {pass, n_max, doubled_n_max, base_value, doubled_value, delta, tolerance, tail_weight}
//   series    {columns, rows}
//   sweep     {experiment, axis, failed_audits, points: [{value, metrics, audit}], fit, fit_trimmed}
//
// CSV files start with '#' provenance lines, then one header row, then data
// written with 17 significant digits.

#pragma once

#include "dicke/dynamics.hpp"
#include "dicke/eigensolver.hpp"
#include "dicke/experiments.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/hpx.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dicke {

using json = nlohmann::ordered_json;

/// "%.17g"; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double x);

json to_json(const HilbertSpec& spec);
json to_json(const ModelParams& params);
json to_json(const StateVector& state);
json to_json(const SpectrumResult& spectrum, const ModelParams& params, const HilbertSpec& spec);
json to_json(const CorrectionLedger& ledger);
json to_json(const CutoffAudit& audit);
json to_json(const PowerLawFit& fit);
json to_json(const TimeSeries& series);
json to_json(const SweepResult& sweep);

HilbertSpec spec_from_json(const json& j);
/// Throws ValidationError on a malformed record or a size mismatch.
StateVector state_from_json(const json& j);

/// Header lines are written as "# <line>" before the CSV header row.
std::string to_csv(const TimeSeries& series, const std::vector<std::string>& header = {});
/// Columns: axis value, metrics (in first-point order), audit_pass, audit_delta,
/// audit_n_max, audit_tail_weight. Fit metadata goes into the '#' lines.
std::string to_csv(const SweepResult& sweep, const std::vector<std::string>& header = {});

}  // namespace dicke
