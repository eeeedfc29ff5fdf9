#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kpent/builtin.hpp"
#include "kpent/io.hpp"
#include "kpent/rand.hpp"
#include "kpent/sweep.hpp"

using namespace kpent;
using kpent::testing::qubits;

TEST_CASE("state files round-trip bit for bit") {
  Rng rng(51);
  const PureState s = random_pure_state(qubits(3), rng);
  const auto j = io::state_to_json(s);
  const auto loaded = io::parse_state(j);
  REQUIRE(std::holds_alternative<PureState>(loaded));
  const PureState& back = std::get<PureState>(loaded);
  CHECK((back.amplitudes() - s.amplitudes()).norm() == 0.0);
  CHECK(io::state_to_json(back).dump() == j.dump());

  const DensityOperator op = partial_trace(s, {0, 1});
  const auto jm = io::state_to_json(op);
  const auto loaded_op = io::parse_state(jm);
  REQUIRE(std::holds_alternative<DensityOperator>(loaded_op));
  CHECK((std::get<DensityOperator>(loaded_op).matrix() - op.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("state files ignore trailing fields and name offending ones") {
  nlohmann::json ok = {{"dims", {2, 2}},
                       {"amplitudes", {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}},
                       {"comment", "ignored"}};
  CHECK_NOTHROW(io::parse_state(ok));

  auto expect_message = [](const nlohmann::json& j, const std::string& needle) {
    try {
      io::parse_state(j);
      FAIL_CHECK("expected parse failure");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_message({{"amplitudes", {{1.0, 0.0}}}}, "dims");
  expect_message({{"dims", {2, 1}}, {"amplitudes", nlohmann::json::array()}}, "dims[1]");
  expect_message({{"dims", {2}}, {"amplitudes", {{1.0, 0.0}}}}, "amplitudes");
  expect_message({{"dims", {2}}, {"amplitudes", {{1.0, 0.0}, {"x", 0.0}}}}, "amplitudes[1]");
  expect_message({{"dims", {2}}, {"matrix", {{1.0, 0.0}}}}, "matrix");
  expect_message({{"dims", {2}}}, "amplitudes");
}

TEST_CASE("builtin states parse") {
  CHECK(builtin_state("ghz4").size() == 4);
  CHECK(builtin_state("w5").size() == 5);
  CHECK(builtin_state("phi1").size() == 4);
  CHECK(builtin_state("phitheta", 45.0).size() == 3);
  CHECK_THROWS_AS(builtin_state("phitheta"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_state("ghzx"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_state("nope"), std::invalid_argument);
}

TEST_CASE("sweep endpoints, kinks, and csv shape") {
  SweepSpec spec;
  spec.steps = 31;
  spec.entries = {{MeasureKind::pe, 2.0, 2}, {MeasureKind::gpe, 2.0, 2}};
  const SweepResult result = run_sweep(spec);
  REQUIRE(result.rows.size() == 31);
  CHECK(result.rows.front().theta_deg == 0.0);
  CHECK(result.rows.back().theta_deg == 90.0);
  CHECK(result.rows.front().values[0] <= 1e-9);
  CHECK(result.rows.front().values[1] <= 1e-9);
  for (const auto& row : result.rows) {
    CHECK(row.values[1] >= row.values[0] - 1e-10);  // geometric mean dominates the min
  }
  CHECK(!result.kinks.empty());  // the argmin hands over inside the grid

  const std::string csv = sweep_to_csv(result);
  CHECK(csv.find("theta_deg,pe_p2_k2,pe_p2_k2_argmin,gpe_p2_k2") != std::string::npos);
  CHECK(csv.find("# kink pe_p2_k2") != std::string::npos);

  SweepSpec bad = spec;
  bad.steps = 1;
  CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
  bad = spec;
  bad.stop_deg = 120.0;
  CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
  bad = spec;
  bad.entries = {{MeasureKind::genuine_pe, 2.0, 2}};
  CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
}

TEST_CASE("measure ordering flips somewhere on the grid") {
  SweepSpec spec;
  spec.steps = 91;
  spec.entries = {{MeasureKind::pe, 2.0, 2}, {MeasureKind::gpe, 2.0, 2}};
  const SweepResult result = run_sweep(spec);
  bool found = false;
  for (std::size_t r = 1; r < result.rows.size() && !found; ++r) {
    const double dpe = result.rows[r].values[0] - result.rows[r - 1].values[0];
    const double dgpe = result.rows[r].values[1] - result.rows[r - 1].values[1];
    found = (dpe > 1e-12 && dgpe < -1e-12) || (dpe < -1e-12 && dgpe > 1e-12);
  }
  CHECK(found);
}

TEST_CASE("report serialization carries the reduced breakdown") {
  const MeasureReport report = pe_concurrence(w_state(4), {2.0, 3});
  const auto j = io::report_to_json(report);
  CHECK(j["value"].get<double>() == doctest::Approx(std::sqrt(3.0 / 8.0)));
  CHECK(j["branch"] == "formula");
  CHECK(j["per_partition"].size() == 14);
  CHECK(j["argmin"].size() >= 1);
}
