#include "kpent/roof.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kpent/rand.hpp"

namespace kpent {

namespace {

constexpr double kMemberFloor = 1e-14;  // members below this mass carry no term
constexpr double kDropTol = 1e-12;      // dropped from the returned ensemble

// Working ensemble: columns of M are the unnormalized member vectors, so
// M M^dagger reconstructs the source exactly and two-member rotations keep it
// that way.
struct Working {
  Matrix m;                 // D x members
  std::vector<double> prob;
  std::vector<double> measure_value;
  double objective = 0.0;
};

struct Evaluator {
  const RegisterLayout& layout;
  MeasureKind kind;
  const MeasureParam& param;
  const MeasureOptions& opts;

  double pure_value(const Vector& unnormalized, double prob) const {
    if (prob <= kMemberFloor) return 0.0;
    return evaluate(PureState(layout, unnormalized / std::sqrt(prob), opts.tol), kind, param,
                    opts);
  }
};

void refresh(Working& w, const Evaluator& eval) {
  const auto m = static_cast<int>(w.m.cols());
  w.prob.assign(static_cast<std::size_t>(m), 0.0);
  w.measure_value.assign(static_cast<std::size_t>(m), 0.0);
  w.objective = 0.0;
  for (int i = 0; i < m; ++i) {
    const double p = w.m.col(i).squaredNorm();
    w.prob[static_cast<std::size_t>(i)] = p;
    const double v = eval.pure_value(w.m.col(i), p);
    w.measure_value[static_cast<std::size_t>(i)] = v;
    w.objective += p * v;
  }
}

// Contribution of members (i1, i2) after rotating by angle theta with the
// given off-diagonal phase. Columns are written into the provided buffers.
double pair_contribution(const Working& w, const Evaluator& eval, int i1, int i2, double theta,
                         const cxd& phase, Vector& c1, Vector& c2, double& p1, double& p2) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  c1 = c * w.m.col(i1) + phase * s * w.m.col(i2);
  c2 = -std::conj(phase) * s * w.m.col(i1) + c * w.m.col(i2);
  p1 = c1.squaredNorm();
  p2 = c2.squaredNorm();
  return p1 * eval.pure_value(c1, p1) + p2 * eval.pure_value(c2, p2);
}

// One full sweep of pairwise rotation line searches. Returns the objective
// improvement.
double sweep(Working& w, const Evaluator& eval) {
  const auto m = static_cast<int>(w.m.cols());
  const double before = w.objective;
  Vector c1, c2;
  double p1 = 0.0, p2 = 0.0;
  static const cxd phases[2] = {cxd(1.0, 0.0), cxd(0.0, 1.0)};

  for (int i1 = 0; i1 < m; ++i1) {
    for (int i2 = i1 + 1; i2 < m; ++i2) {
      if (w.prob[static_cast<std::size_t>(i1)] <= kMemberFloor &&
          w.prob[static_cast<std::size_t>(i2)] <= kMemberFloor) {
        continue;  // rotating two empty members changes nothing
      }
      const double base = w.prob[static_cast<std::size_t>(i1)] * w.measure_value[static_cast<std::size_t>(i1)] +
                          w.prob[static_cast<std::size_t>(i2)] * w.measure_value[static_cast<std::size_t>(i2)];
      double best_gain = 0.0;
      double best_theta = 0.0;
      cxd best_phase = phases[0];
      for (const cxd& phase : phases) {
        // coarse scan
        constexpr int kCoarse = 12;
        double theta_lo = 0.0, f_lo = base;
        for (int j = 1; j <= kCoarse; ++j) {
          const double theta = -std::numbers::pi / 2.0 + j * std::numbers::pi / (kCoarse + 1);
          const double f = pair_contribution(w, eval, i1, i2, theta, phase, c1, c2, p1, p2);
          if (f < f_lo) {
            f_lo = f;
            theta_lo = theta;
          }
        }
        if (f_lo >= base - 1e-15) continue;  // no coarse improvement to refine
        // golden-section refinement around the coarse minimum
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = theta_lo - std::numbers::pi / (kCoarse + 1);
        double b = theta_lo + std::numbers::pi / (kCoarse + 1);
        double x1 = b - gr * (b - a);
        double x2 = a + gr * (b - a);
        double f1 = pair_contribution(w, eval, i1, i2, x1, phase, c1, c2, p1, p2);
        double f2 = pair_contribution(w, eval, i1, i2, x2, phase, c1, c2, p1, p2);
        for (int it = 0; it < 24; ++it) {
          if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = pair_contribution(w, eval, i1, i2, x1, phase, c1, c2, p1, p2);
          } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = pair_contribution(w, eval, i1, i2, x2, phase, c1, c2, p1, p2);
          }
        }
        const double theta_best = f1 < f2 ? x1 : x2;
        const double f_best = std::min({f_lo, f1, f2});
        const double theta_pick = f_best == f_lo ? theta_lo : theta_best;
        if (base - f_best > best_gain) {
          best_gain = base - f_best;
          best_theta = theta_pick;
          best_phase = phase;
        }
      }
      if (best_gain > 0.0) {
        const double f_new =
            pair_contribution(w, eval, i1, i2, best_theta, best_phase, c1, c2, p1, p2);
        w.m.col(i1) = c1;
        w.m.col(i2) = c2;
        w.prob[static_cast<std::size_t>(i1)] = p1;
        w.prob[static_cast<std::size_t>(i2)] = p2;
        w.measure_value[static_cast<std::size_t>(i1)] = eval.pure_value(c1, p1);
        w.measure_value[static_cast<std::size_t>(i2)] = eval.pure_value(c2, p2);
        w.objective += f_new - base;
      }
    }
  }
  return before - w.objective;
}

}  // namespace

RoofEstimate roof_upper(const DensityOperator& op, MeasureKind kind, const MeasureParam& param,
                        const RoofOptions& opts) {
  validate(param, op.size());
  const Tolerances& tol = opts.measure.tol;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("roof_upper: eigensolver failed");
  }
  std::vector<std::pair<double, int>> kept;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double v = solver.eigenvalues()[i];
    if (v < -tol.psd) throw std::runtime_error("roof_upper: operator is not positive semidefinite");
    if (v > tol.rank) kept.emplace_back(v, static_cast<int>(i));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  const int rank = static_cast<int>(kept.size());
  if (rank == 0) throw std::runtime_error("roof_upper: operator has no mass above the rank threshold");
  const int members = opts.members > 0 ? opts.members : rank + 2;
  if (members < rank) {
    throw std::invalid_argument("roof_upper: ensemble size " + std::to_string(members) +
                                " is below the operator rank " + std::to_string(rank));
  }

  double mass = 0.0;
  for (const auto& [v, idx] : kept) mass += v;
  Matrix columns(op.dim(), rank);
  for (int j = 0; j < rank; ++j) {
    columns.col(j) = std::sqrt(kept[static_cast<std::size_t>(j)].first / mass) *
                     solver.eigenvectors().col(kept[static_cast<std::size_t>(j)].second);
  }

  const Evaluator eval{op.layout(), kind, param, opts.measure};
  RoofEstimate best;
  bool have_best = false;
  bool best_converged = false;

  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    Working w;
    if (restart == 0) {
      // eigendecomposition ensemble, surplus members empty
      w.m = Matrix::Zero(op.dim(), members);
      w.m.leftCols(rank) = columns;
    } else {
      Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(restart)));
      std::normal_distribution<double> gauss(0.0, 1.0);
      Matrix g(members, rank);
      for (int i = 0; i < members; ++i) {
        for (int j = 0; j < rank; ++j) g(i, j) = cxd(gauss(rng), gauss(rng));
      }
      Eigen::HouseholderQR<Matrix> qr(g);
      Matrix thin_q = qr.householderQ() * Matrix::Identity(members, rank);
      w.m = columns * thin_q.transpose();
    }
    refresh(w, eval);

    bool converged = false;
    for (int s = 0; s < opts.max_sweeps; ++s) {
      const double gain = sweep(w, eval);
      if (gain < opts.improve_tol) {
        converged = true;
        break;
      }
    }

    // Restarts are compared by the exact value the estimate will report: a
    // clean sum over the members that survive the probability floor. The
    // incrementally updated objective carries rounding drift and would break
    // the exact best-of-restarts ordering.
    double value = 0.0;
    for (int i = 0; i < members; ++i) {
      const double p = w.prob[static_cast<std::size_t>(i)];
      if (p <= kDropTol) continue;
      value += p * w.measure_value[static_cast<std::size_t>(i)];
    }

    if (!have_best || value < best.value) {
      have_best = true;
      best.value = value;
      best_converged = converged;
      best.ensemble.members.clear();
      for (int i = 0; i < members; ++i) {
        const double p = w.prob[static_cast<std::size_t>(i)];
        if (p <= kDropTol) continue;
        best.ensemble.members.push_back(
            {p, PureState(op.layout(), w.m.col(i) / std::sqrt(p), tol)});
      }
    }
    if (best.value <= 1e-13) break;  // nothing left to gain
  }

  best.restarts = std::max(1, opts.restarts);
  best.converged = best_converged;
  return best;
}

double ensemble_average(const EnsembleDecomposition& ensemble, MeasureKind kind,
                        const MeasureParam& param, const MeasureOptions& opts) {
  double sum = 0.0;
  for (const auto& member : ensemble.members) {
    sum += member.probability * evaluate(member.state, kind, param, opts);
  }
  return sum;
}

double reconstruction_distance(const EnsembleDecomposition& ensemble,
                               const DensityOperator& source) {
  Matrix acc = Matrix::Zero(source.dim(), source.dim());
  for (const auto& member : ensemble.members) {
    const Vector& a = member.state.amplitudes();
    acc += member.probability * (a * a.adjoint());
  }
  return (acc - source.matrix()).norm();
}

}  // namespace kpent
