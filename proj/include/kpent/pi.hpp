#pragma once

#include <cstdint>
#include <optional>

#include "kpent/measures.hpp"
#include "kpent/state.hpp"

namespace kpent {

inline constexpr std::int64_t kDefaultGroupCap = 40320;  // 8!

// Uniform average of the operator over all n! subsystem permutations.
// Requires equal local dimensions and n! within the group-order cap.
DensityOperator pi_project(const DensityOperator& op, const Tolerances& tol = {},
                           int threads = 1, std::int64_t group_cap = kDefaultGroupCap);

struct PiBoundOptions {
  int samples = 32;        // random product unitaries tried beyond the identity
  std::uint64_t seed = 0;
  int roof_restarts = 1;   // effort spent on mixed projections (heuristic track)
  int roof_max_sweeps = 2;
  MeasureOptions measure;
  std::int64_t group_cap = kDefaultGroupCap;
};

// Best measure value found over the PI parts of U rho U^dagger. Candidates
// whose PI part is pure are evaluated exactly and yield a certified lower
// bound of the mixed-state measure; mixed PI parts only admit a roof upper
// estimate, which is reported as heuristic and never presented as a bound.
struct PiBoundReport {
  double value = 0.0;
  bool certified = false;
  std::optional<double> best_certified;
  std::optional<double> best_heuristic;
  int candidates = 0;
};

PiBoundReport pi_lower_bound(const PureState& state, MeasureKind kind,
                             const MeasureParam& param, const PiBoundOptions& opts = {});

}  // namespace kpent
