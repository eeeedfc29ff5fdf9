#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "kpent/builtin.hpp"
#include "kpent/io.hpp"
#include "kpent/measures.hpp"
#include "kpent/partitions.hpp"
#include "kpent/pi.hpp"
#include "kpent/roof.hpp"
#include "kpent/sweep.hpp"

namespace {

using namespace kpent;

struct GlobalFlags {
  double tol_rank = 1e-9;
  double tol_psd = 1e-9;
  std::uint64_t seed = 0;
  int threads = 1;

  Tolerances tolerances() const {
    Tolerances tol;
    tol.rank = tol_rank;
    tol.psd = tol_psd;
    return tol;
  }
  MeasureOptions measure_options() const {
    MeasureOptions opts;
    opts.tol = tolerances();
    opts.threads = threads;
    return opts;
  }
};

struct StateInput {
  std::string file;
  std::string builtin;
  std::optional<double> theta_deg;

  void add_flags(CLI::App* cmd) {
    auto* file_opt = cmd->add_option("--state", file, "state file (JSON)");
    auto* builtin_opt =
        cmd->add_option("--builtin", builtin, "builtin state: ghzN, wN, phi1, phi2, phitheta");
    cmd->add_option("--theta", theta_deg, "angle in degrees for phitheta");
    file_opt->excludes(builtin_opt);
  }

  io::LoadedState load(const Tolerances& tol) const {
    if (!builtin.empty()) return builtin_state(builtin, theta_deg);
    if (file.empty()) throw std::invalid_argument("provide --state or --builtin");
    return io::load_state_file(file, tol);
  }

  PureState load_pure(const Tolerances& tol) const {
    io::LoadedState loaded = load(tol);
    if (!std::holds_alternative<PureState>(loaded)) {
      throw std::invalid_argument(
          "this command needs a pure state (\"amplitudes\"); use the roof command for mixed "
          "states");
    }
    return std::get<PureState>(std::move(loaded));
  }

  DensityOperator load_density(const Tolerances& tol) const {
    io::LoadedState loaded = load(tol);
    if (std::holds_alternative<DensityOperator>(loaded)) {
      return std::get<DensityOperator>(std::move(loaded));
    }
    return as_density(std::get<PureState>(loaded), tol);
  }
};

void emit(const nlohmann::ordered_json& j) { std::cout << j.dump() << "\n"; }

int run(int argc, char** argv) {
  CLI::App app{"parametrized multipartite entanglement measures over bounded-block partitions"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--tol-rank", flags.tol_rank, "rank threshold for reduced spectra");
  app.add_option("--tol-psd", flags.tol_psd, "negative-eigenvalue clamp window");
  app.add_option("--seed", flags.seed, "seed for randomized searches");
  app.add_option("--threads", flags.threads, "worker threads for partition evaluation");

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "evaluate a pure-state measure");
  StateInput measure_in;
  measure_in.add_flags(measure_cmd);
  std::string measure_name = "pe";
  MeasureParam measure_param;
  double const_a = 1.0, const_b = 1.0;
  measure_cmd->add_option("--measure", measure_name, "pe | gpe | genuine-pe | genuine-gpe");
  measure_cmd->add_option("--p", measure_param.p, "exponent (q > 1 or 0 <= alpha < 1)")->required();
  measure_cmd->add_option("--k", measure_param.k, "block-size bound")->required();
  measure_cmd->add_option("--a", const_a, "constant branch value of genuine-pe");
  measure_cmd->add_option("--b", const_b, "constant branch value of genuine-gpe");
  measure_cmd->callback([&] {
    const PureState state = measure_in.load_pure(flags.tolerances());
    MeasureOptions opts = flags.measure_options();
    opts.a = const_a;
    opts.b = const_b;
    const MeasureKind kind = measure_kind_from_string(measure_name);
    MeasureReport report;
    switch (kind) {
      case MeasureKind::pe: report = pe_concurrence(state, measure_param, opts); break;
      case MeasureKind::gpe: report = gpe_concurrence(state, measure_param, opts); break;
      case MeasureKind::genuine_pe: report = genuine_pe(state, measure_param, opts); break;
      case MeasureKind::genuine_gpe: report = genuine_gpe(state, measure_param, opts); break;
    }
    nlohmann::ordered_json j = io::report_to_json(report);
    j["measure"] = measure_name;
    j["p"] = measure_param.p;
    j["k"] = measure_param.k;
    emit(j);
  });

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "smallest k with vanishing PE concurrence");
  StateInput classify_in;
  classify_in.add_flags(classify_cmd);
  double classify_p = 2.0;
  double classify_tol = 1e-9;
  classify_cmd->add_option("--p", classify_p, "exponent");
  classify_cmd->add_option("--tol", classify_tol, "zero threshold");
  classify_cmd->callback([&] {
    const PureState state = classify_in.load_pure(flags.tolerances());
    nlohmann::ordered_json j;
    j["producible_k"] = classify(state, classify_p, classify_tol, flags.measure_options());
    j["n"] = state.size();
    emit(j);
  });

  // partitions
  auto* partitions_cmd = app.add_subcommand("partitions", "list bounded-block set partitions");
  int part_n = 0, part_k = 0;
  bool part_genuine = false;
  partitions_cmd->add_option("--n", part_n, "number of elements")->required();
  partitions_cmd->add_option("--k", part_k, "block-size bound")->required();
  partitions_cmd->add_flag("--genuine", part_genuine, "largest block exactly k");
  partitions_cmd->callback([&] {
    std::uint64_t count = 0;
    for_each_bounded(part_n, part_k, [&](const Partition& p) {
      if (part_genuine && p.max_block_size() != part_k) return;
      std::cout << p.to_text() << "\n";
      ++count;
    });
    const std::uint64_t closed =
        part_genuine ? count_genuine(part_n, part_k) : count_bounded(part_n, part_k);
    if (closed != count) throw std::runtime_error("partition count mismatch against recurrence");
    std::cout << "count " << count << "\n";
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "angle sweep of a builtin family (CSV)");
  SweepSpec spec;
  std::vector<double> sweep_p{2.0};
  std::vector<int> sweep_k{2};
  std::vector<std::string> sweep_measures{"pe", "gpe"};
  sweep_cmd->add_option("--family", spec.family, "state family (phitheta)");
  sweep_cmd->add_option("--start", spec.start_deg, "grid start in degrees");
  sweep_cmd->add_option("--stop", spec.stop_deg, "grid stop in degrees");
  sweep_cmd->add_option("--steps", spec.steps, "grid points (>= 2)");
  sweep_cmd->add_option("--p", sweep_p, "exponents to evaluate");
  sweep_cmd->add_option("--k", sweep_k, "block-size bounds to evaluate");
  sweep_cmd->add_option("--measure", sweep_measures, "measures: pe and/or gpe");
  sweep_cmd->callback([&] {
    spec.options = flags.measure_options();
    spec.entries.clear();
    for (const std::string& name : sweep_measures) {
      for (double p : sweep_p) {
        for (int k : sweep_k) {
          spec.entries.push_back({measure_kind_from_string(name), p, k});
        }
      }
    }
    std::cout << sweep_to_csv(run_sweep(spec));
  });

  // pi
  auto* pi_cmd = app.add_subcommand("pi", "permutation-invariant projection and optional bound");
  StateInput pi_in;
  pi_in.add_flags(pi_cmd);
  std::string pi_measure;
  MeasureParam pi_param;
  int pi_samples = 32;
  pi_cmd->add_option("--measure", pi_measure, "pe or gpe: also report the projection bound");
  pi_cmd->add_option("--p", pi_param.p, "exponent");
  pi_cmd->add_option("--k", pi_param.k, "block-size bound");
  pi_cmd->add_option("--samples", pi_samples, "random product unitaries to try");
  pi_cmd->callback([&] {
    const Tolerances tol = flags.tolerances();
    const io::LoadedState loaded = pi_in.load(tol);
    const DensityOperator source = std::holds_alternative<DensityOperator>(loaded)
                                       ? std::get<DensityOperator>(loaded)
                                       : as_density(std::get<PureState>(loaded), tol);
    const DensityOperator projected = pi_project(source, tol, flags.threads);
    nlohmann::ordered_json j = io::state_to_json(projected);
    std::int64_t order = 1;
    for (int t = 2; t <= source.size(); ++t) order *= t;
    j["group_order"] = order;
    if (!pi_measure.empty()) {
      if (!std::holds_alternative<PureState>(loaded)) {
        throw std::invalid_argument("the projection bound needs a pure input state");
      }
      PiBoundOptions opts;
      opts.samples = pi_samples;
      opts.seed = flags.seed;
      opts.measure = flags.measure_options();
      j["bound"] = io::pi_bound_to_json(pi_lower_bound(
          std::get<PureState>(loaded), measure_kind_from_string(pi_measure), pi_param, opts));
    }
    emit(j);
  });

  // roof
  auto* roof_cmd = app.add_subcommand("roof", "convex-roof upper bound for a mixed state");
  StateInput roof_in;
  roof_in.add_flags(roof_cmd);
  std::string roof_measure = "pe";
  MeasureParam roof_param;
  RoofOptions roof_opts;
  double roof_a = 1.0, roof_b = 1.0;
  roof_cmd->add_option("--measure", roof_measure, "pe | gpe | genuine-pe | genuine-gpe");
  roof_cmd->add_option("--p", roof_param.p, "exponent")->required();
  roof_cmd->add_option("--k", roof_param.k, "block-size bound")->required();
  roof_cmd->add_option("--members", roof_opts.members, "ensemble size (default rank + 2)");
  roof_cmd->add_option("--restarts", roof_opts.restarts, "optimizer restarts");
  roof_cmd->add_option("--a", roof_a, "constant branch value of genuine-pe");
  roof_cmd->add_option("--b", roof_b, "constant branch value of genuine-gpe");
  roof_cmd->callback([&] {
    const DensityOperator op = roof_in.load_density(flags.tolerances());
    roof_opts.seed = flags.seed;
    roof_opts.measure = flags.measure_options();
    roof_opts.measure.a = roof_a;
    roof_opts.measure.b = roof_b;
    const RoofEstimate est =
        roof_upper(op, measure_kind_from_string(roof_measure), roof_param, roof_opts);
    emit(io::roof_to_json(est, op));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // flag/argument validation failure
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
