#include "kpent/io.hpp"

#include <fstream>
#include <stdexcept>

namespace kpent::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("state file: \"" + field + "\" " + why);
}

cxd read_complex(const json& entry, const std::string& field) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
    fail(field, "must be a [re, im] pair");
  }
  return {entry[0].get<double>(), entry[1].get<double>()};
}

ordered_json complex_to_json(const cxd& v) { return ordered_json::array({v.real(), v.imag()}); }

}  // namespace

LoadedState parse_state(const json& j, const Tolerances& tol) {
  if (!j.is_object()) throw std::invalid_argument("state file: top level must be an object");
  if (!j.contains("dims")) fail("dims", "is missing");
  const json& jd = j["dims"];
  if (!jd.is_array() || jd.empty()) fail("dims", "must be a nonempty array");
  std::vector<int> dims;
  dims.reserve(jd.size());
  for (std::size_t t = 0; t < jd.size(); ++t) {
    if (!jd[t].is_number_integer() || jd[t].get<std::int64_t>() < 2) {
      fail("dims[" + std::to_string(t) + "]", "must be an integer >= 2");
    }
    dims.push_back(jd[t].get<int>());
  }
  RegisterLayout layout(dims);
  const std::int64_t d = layout.total_dim();

  const bool has_amp = j.contains("amplitudes");
  const bool has_mat = j.contains("matrix");
  if (has_amp && has_mat) fail("amplitudes", "and \"matrix\" are mutually exclusive");
  if (!has_amp && !has_mat) fail("amplitudes", "or \"matrix\" is required");

  if (has_amp) {
    const json& ja = j["amplitudes"];
    if (!ja.is_array()) fail("amplitudes", "must be an array");
    if (static_cast<std::int64_t>(ja.size()) != d) {
      fail("amplitudes", "has length " + std::to_string(ja.size()) +
                             ", total dimension requires " + std::to_string(d));
    }
    Vector amp(d);
    for (std::int64_t i = 0; i < d; ++i) {
      amp[i] = read_complex(ja[static_cast<std::size_t>(i)],
                            "amplitudes[" + std::to_string(i) + "]");
    }
    return PureState(std::move(layout), std::move(amp), tol);
  }

  const json& jm = j["matrix"];
  if (!jm.is_array()) fail("matrix", "must be an array");
  if (static_cast<std::int64_t>(jm.size()) != d * d) {
    fail("matrix", "has length " + std::to_string(jm.size()) + ", expected " +
                       std::to_string(d * d) + " row-major entries");
  }
  Matrix m(d, d);
  for (std::int64_t r = 0; r < d; ++r) {
    for (std::int64_t c = 0; c < d; ++c) {
      m(r, c) = read_complex(jm[static_cast<std::size_t>(r * d + c)],
                             "matrix[" + std::to_string(r * d + c) + "]");
    }
  }
  return DensityOperator(std::move(layout), std::move(m), tol);
}

LoadedState load_state_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("state file '" + path + "': " + e.what());
  }
  return parse_state(j, tol);
}

ordered_json state_to_json(const PureState& state) {
  ordered_json out;
  out["dims"] = state.layout().dims();
  ordered_json amps = ordered_json::array();
  for (std::int64_t i = 0; i < state.dim(); ++i) {
    amps.push_back(complex_to_json(state.amplitudes()[i]));
  }
  out["amplitudes"] = std::move(amps);
  return out;
}

ordered_json state_to_json(const DensityOperator& op) {
  ordered_json out;
  out["dims"] = op.layout().dims();
  ordered_json entries = ordered_json::array();
  for (std::int64_t r = 0; r < op.dim(); ++r) {
    for (std::int64_t c = 0; c < op.dim(); ++c) {
      entries.push_back(complex_to_json(op.matrix()(r, c)));
    }
  }
  out["matrix"] = std::move(entries);
  return out;
}

ordered_json report_to_json(const MeasureReport& report) {
  ordered_json out;
  out["value"] = report.value;
  out["branch"] = to_string(report.branch);
  ordered_json argmin = ordered_json::array();
  for (const auto& p : report.argmin) argmin.push_back(p.to_text());
  out["argmin"] = std::move(argmin);
  ordered_json per = ordered_json::array();
  for (const auto& [partition, deficit] : report.per_partition) {
    per.push_back(ordered_json::array({partition.to_text(), deficit}));
  }
  out["per_partition"] = std::move(per);
  return out;
}

ordered_json roof_to_json(const RoofEstimate& estimate, const DensityOperator& source) {
  ordered_json out;
  out["value"] = estimate.value;
  out["bound_kind"] = "upper";
  out["converged"] = estimate.converged;
  out["restarts"] = estimate.restarts;
  out["reconstruction_error"] = reconstruction_distance(estimate.ensemble, source);
  ordered_json members = ordered_json::array();
  for (const auto& member : estimate.ensemble.members) {
    ordered_json jm;
    jm["probability"] = member.probability;
    ordered_json amps = ordered_json::array();
    for (std::int64_t i = 0; i < member.state.dim(); ++i) {
      amps.push_back(complex_to_json(member.state.amplitudes()[i]));
    }
    jm["amplitudes"] = std::move(amps);
    members.push_back(std::move(jm));
  }
  out["ensemble"] = std::move(members);
  return out;
}

ordered_json pi_bound_to_json(const PiBoundReport& report) {
  ordered_json out;
  out["value"] = report.value;
  out["certified"] = report.certified;
  if (report.best_certified) out["best_certified"] = *report.best_certified;
  if (report.best_heuristic) out["best_heuristic"] = *report.best_heuristic;
  out["candidates"] = report.candidates;
  return out;
}

}  // namespace kpent::io
