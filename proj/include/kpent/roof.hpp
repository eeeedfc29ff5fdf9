#pragma once

#include <cstdint>
#include <vector>

#include "kpent/measures.hpp"
#include "kpent/state.hpp"

namespace kpent {

struct EnsembleMember {
  double probability = 0.0;
  PureState state;
};

struct EnsembleDecomposition {
  std::vector<EnsembleMember> members;
};

struct RoofEstimate {
  double value = 0.0;  // upper bound of the convex roof (never claimed tight)
  EnsembleDecomposition ensemble;
  int restarts = 0;
  bool converged = false;
};

struct RoofOptions {
  int members = 0;     // ensemble size; 0 means rank + 2
  int restarts = 16;
  std::uint64_t seed = 0;
  double improve_tol = 1e-9;  // sweep improvement threshold
  int max_sweeps = 50;
  MeasureOptions measure;
};

// Upper bound of the convex-roof extension of the selected pure-state measure.
// Ensembles of size m are parameterized by m x rank isometries mixing the
// eigendecomposition columns; the ensemble average is minimized by sequential
// two-member rotation line searches from several seeded starting points.
RoofEstimate roof_upper(const DensityOperator& op, MeasureKind kind, const MeasureParam& param,
                        const RoofOptions& opts = {});

// Sum_i p_i E(phi_i) for a given ensemble.
double ensemble_average(const EnsembleDecomposition& ensemble, MeasureKind kind,
                        const MeasureParam& param, const MeasureOptions& opts = {});

// Frobenius distance between sum_i p_i |phi_i><phi_i| and the source operator.
double reconstruction_distance(const EnsembleDecomposition& ensemble,
                               const DensityOperator& source);

}  // namespace kpent
