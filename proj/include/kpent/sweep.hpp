#pragma once

#include <string>
#include <vector>

#include "kpent/measures.hpp"

namespace kpent {

// One-parameter family sweep over an angle grid (degrees).
struct SweepSpec {
  std::string family = "phitheta";
  double start_deg = 0.0;
  double stop_deg = 90.0;
  int steps = 91;  // >= 2 grid points, endpoints included

  struct Entry {
    MeasureKind kind = MeasureKind::pe;  // pe or gpe
    double p = 2.0;
    int k = 2;
  };
  std::vector<Entry> entries;

  MeasureOptions options;
};

struct SweepRow {
  double theta_deg = 0.0;
  std::vector<double> values;                  // one per entry
  std::vector<int> argmin_ordinal;             // per entry; -1 for GPE
  std::vector<std::vector<int>> argmin_sets;   // canonical-enumeration ordinals
};

// Grid point where the argmin set of a PE entry changes.
struct SweepKink {
  int entry = 0;
  double theta_before = 0.0;
  double theta_after = 0.0;
  std::string argmin_before;
  std::string argmin_after;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::vector<SweepKink> kinks;
};

SweepResult run_sweep(const SweepSpec& spec);

// CSV with `,` separator and `#` comment prefix; the kink report is appended
// as trailing comment lines.
std::string sweep_to_csv(const SweepResult& result);

std::string sweep_column_name(const SweepSpec::Entry& entry);

}  // namespace kpent
