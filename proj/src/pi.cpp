#include "kpent/pi.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "kpent/parallel.hpp"
#include "kpent/rand.hpp"
#include "kpent/roof.hpp"

namespace kpent {

DensityOperator pi_project(const DensityOperator& op, const Tolerances& tol, int threads,
                           std::int64_t group_cap) {
  const RegisterLayout& layout = op.layout();
  const int n = layout.size();
  for (int t = 1; t < n; ++t) {
    if (layout.dim(t) != layout.dim(0)) {
      throw std::invalid_argument("pi_project: all subsystem dimensions must be equal");
    }
  }
  std::int64_t order = 1;
  for (int t = 2; t <= n; ++t) {
    order *= t;
    if (order > group_cap) {
      throw std::invalid_argument("pi_project: n! exceeds the group-order cap " +
                                  std::to_string(group_cap));
    }
  }

  const std::int64_t d = layout.total_dim();
  const Matrix& in = op.matrix();
  Matrix out = Matrix::Zero(d, d);

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);

  // Basis maps are materialized in bounded chunks; each output column then
  // accumulates over the chunk in canonical permutation order, so the result
  // is independent of the thread count.
  const std::int64_t chunk_target =
      std::min<std::int64_t>(order, std::max<std::int64_t>(1, (1 << 19) / d));
  std::vector<std::vector<std::int64_t>> maps;
  maps.reserve(static_cast<std::size_t>(chunk_target));
  bool more = true;
  while (more) {
    maps.clear();
    for (std::int64_t c = 0; c < chunk_target && more; ++c) {
      std::vector<std::int64_t> map(static_cast<std::size_t>(d));
      for (std::int64_t i = 0; i < d; ++i) map[static_cast<std::size_t>(i)] = permuted_index(layout, perm, i);
      maps.push_back(std::move(map));
      more = std::next_permutation(perm.begin(), perm.end());
    }
    parallel_for(d, threads, [&](std::int64_t j) {
      for (const auto& map : maps) {
        const std::int64_t mj = map[static_cast<std::size_t>(j)];
        for (std::int64_t i = 0; i < d; ++i) {
          out(i, j) += in(map[static_cast<std::size_t>(i)], mj);
        }
      }
    });
  }
  out /= static_cast<double>(order);
  return DensityOperator(layout, std::move(out), tol);
}

PiBoundReport pi_lower_bound(const PureState& state, MeasureKind kind,
                             const MeasureParam& param, const PiBoundOptions& opts) {
  const RegisterLayout& layout = state.layout();
  const int n = layout.size();
  Rng rng(opts.seed);
  PiBoundReport report;

  for (int c = 0; c <= opts.samples; ++c) {
    PureState rotated = state;
    if (c > 0) {
      std::vector<Matrix> factors;
      factors.reserve(static_cast<std::size_t>(n));
      for (int t = 0; t < n; ++t) factors.push_back(haar_unitary(layout.dim(t), rng));
      rotated = apply_local_unitary(state, factors, opts.measure.tol);
    }
    const DensityOperator projected = pi_project(as_density(rotated, opts.measure.tol),
                                                 opts.measure.tol, opts.measure.threads,
                                                 opts.group_cap);
    ++report.candidates;

    Eigen::SelfAdjointEigenSolver<Matrix> solver(projected.matrix());
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("pi_lower_bound: eigensolver failed");
    }
    int rank = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      if (solver.eigenvalues()[i] > opts.measure.tol.rank) ++rank;
    }
    if (rank <= 1) {
      Vector principal = solver.eigenvectors().col(solver.eigenvectors().cols() - 1);
      principal /= principal.norm();
      const double v = evaluate(PureState(layout, std::move(principal), opts.measure.tol), kind,
                                param, opts.measure);
      if (!report.best_certified || v > *report.best_certified) report.best_certified = v;
    } else {
      RoofOptions roof_opts;
      roof_opts.members = rank;  // heuristic track: keep the ensemble small
      roof_opts.restarts = opts.roof_restarts;
      roof_opts.max_sweeps = opts.roof_max_sweeps;
      roof_opts.seed = mix_seed(opts.seed, static_cast<std::uint64_t>(c));
      roof_opts.measure = opts.measure;
      const double v = roof_upper(projected, kind, param, roof_opts).value;
      if (!report.best_heuristic || v > *report.best_heuristic) report.best_heuristic = v;
    }
  }

  if (report.best_certified) {
    report.value = *report.best_certified;
    report.certified = true;
  } else if (report.best_heuristic) {
    report.value = *report.best_heuristic;
    report.certified = false;
  }
  return report;
}

}  // namespace kpent
