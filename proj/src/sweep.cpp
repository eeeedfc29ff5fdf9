#include "kpent/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kpent/builtin.hpp"

namespace kpent {

namespace {

std::string format_double(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string render_argmin(const std::vector<int>& ordinals,
                          const std::vector<Partition>& partitions) {
  std::string out;
  for (std::size_t i = 0; i < ordinals.size(); ++i) {
    if (i) out += '+';
    out += partitions[static_cast<std::size_t>(ordinals[i])].to_text();
  }
  return out;
}

}  // namespace

std::string sweep_column_name(const SweepSpec::Entry& entry) {
  return to_string(entry.kind) + "_p" + format_double(entry.p, "%g") + "_k" +
         std::to_string(entry.k);
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.family != "phitheta") {
    throw std::invalid_argument("sweep: unknown family '" + spec.family + "'");
  }
  if (spec.steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
  if (spec.start_deg < 0.0 || spec.stop_deg > 90.0 || spec.start_deg >= spec.stop_deg) {
    throw std::invalid_argument("sweep: grid must satisfy 0 <= start < stop <= 90 degrees");
  }
  if (spec.entries.empty()) throw std::invalid_argument("sweep: at least one measure entry required");
  for (const auto& entry : spec.entries) {
    if (entry.kind != MeasureKind::pe && entry.kind != MeasureKind::gpe) {
      throw std::invalid_argument("sweep: only pe and gpe entries are supported");
    }
  }

  SweepResult result;
  result.spec = spec;
  result.rows.reserve(static_cast<std::size_t>(spec.steps));

  for (int step = 0; step < spec.steps; ++step) {
    SweepRow row;
    row.theta_deg = spec.start_deg +
                    (spec.stop_deg - spec.start_deg) * static_cast<double>(step) /
                        static_cast<double>(spec.steps - 1);
    const PureState state = phi_theta_state(row.theta_deg);
    for (const auto& entry : spec.entries) {
      const MeasureParam param{entry.p, entry.k};
      if (entry.kind == MeasureKind::pe) {
        const MeasureReport report = pe_concurrence(state, param, spec.options);
        row.values.push_back(report.value);
        double best = report.per_partition.front().second;
        for (const auto& [partition, deficit] : report.per_partition) best = std::min(best, deficit);
        std::vector<int> ties;
        for (std::size_t i = 0; i < report.per_partition.size(); ++i) {
          if (report.per_partition[i].second <= best + spec.options.tie_tol) {
            ties.push_back(static_cast<int>(i));
          }
        }
        row.argmin_ordinal.push_back(ties.front());
        row.argmin_sets.push_back(std::move(ties));
      } else {
        row.values.push_back(gpe_concurrence(state, param, spec.options).value);
        row.argmin_ordinal.push_back(-1);
        row.argmin_sets.emplace_back();
      }
    }
    result.rows.push_back(std::move(row));
  }

  // Kink report: grid intervals where a PE argmin set changes.
  const int family_n = phi_theta_state(spec.start_deg).size();
  std::vector<std::vector<Partition>> partition_cache;
  for (const auto& entry : spec.entries) {
    partition_cache.push_back(entry.kind == MeasureKind::pe
                                  ? enumerate_bounded(family_n, entry.k)
                                  : std::vector<Partition>{});
  }
  for (std::size_t e = 0; e < spec.entries.size(); ++e) {
    if (spec.entries[e].kind != MeasureKind::pe) continue;
    for (std::size_t r = 1; r < result.rows.size(); ++r) {
      const auto& prev = result.rows[r - 1].argmin_sets[e];
      const auto& curr = result.rows[r].argmin_sets[e];
      if (prev != curr) {
        result.kinks.push_back({static_cast<int>(e), result.rows[r - 1].theta_deg,
                                result.rows[r].theta_deg,
                                render_argmin(prev, partition_cache[e]),
                                render_argmin(curr, partition_cache[e])});
      }
    }
  }
  return result;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::string out = "# family=" + result.spec.family + "\n";
  out += "theta_deg";
  for (std::size_t e = 0; e < result.spec.entries.size(); ++e) {
    const std::string name = sweep_column_name(result.spec.entries[e]);
    out += "," + name;
    if (result.spec.entries[e].kind == MeasureKind::pe) out += "," + name + "_argmin";
  }
  out += '\n';
  for (const auto& row : result.rows) {
    out += format_double(row.theta_deg);
    for (std::size_t e = 0; e < row.values.size(); ++e) {
      out += "," + format_double(row.values[e]);
      if (result.spec.entries[e].kind == MeasureKind::pe) {
        out += "," + std::to_string(row.argmin_ordinal[e]);
      }
    }
    out += '\n';
  }
  for (const auto& kink : result.kinks) {
    out += "# kink " + sweep_column_name(result.spec.entries[static_cast<std::size_t>(kink.entry)]) +
           " theta=(" + format_double(kink.theta_before) + "," + format_double(kink.theta_after) +
           ") argmin " + kink.argmin_before + " -> " + kink.argmin_after + "\n";
  }
  return out;
}

}  // namespace kpent
