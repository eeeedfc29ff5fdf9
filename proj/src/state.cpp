#include "kpent/state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kpent {

namespace {

std::vector<int> complement_of(const RegisterLayout& layout, const std::vector<int>& keep) {
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(layout.size() - keep.size()));
  std::size_t pos = 0;
  for (int t = 0; t < layout.size(); ++t) {
    if (pos < keep.size() && keep[pos] == t) {
      ++pos;
    } else {
      rest.push_back(t);
    }
  }
  return rest;
}

}  // namespace

PureState::PureState(RegisterLayout layout, Vector amplitudes, const Tolerances& tol)
    : layout_(std::move(layout)), amp_(std::move(amplitudes)) {
  if (amp_.size() != layout_.total_dim()) {
    throw std::invalid_argument("PureState: amplitude vector has length " +
                                std::to_string(amp_.size()) + ", layout requires " +
                                std::to_string(layout_.total_dim()));
  }
  const double nrm2 = amp_.squaredNorm();
  if (std::abs(nrm2 - 1.0) > tol.norm) {
    throw std::invalid_argument("PureState: squared norm " + std::to_string(nrm2) +
                                " is not 1 within tolerance");
  }
}

DensityOperator::DensityOperator(RegisterLayout layout, Matrix matrix, const Tolerances& tol)
    : layout_(std::move(layout)), m_(std::move(matrix)) {
  const std::int64_t d = layout_.total_dim();
  if (m_.rows() != d || m_.cols() != d) {
    throw std::invalid_argument("DensityOperator: matrix is " + std::to_string(m_.rows()) +
                                "x" + std::to_string(m_.cols()) + ", layout requires " +
                                std::to_string(d) + "x" + std::to_string(d));
  }
  const double herm_dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol.herm) {
    throw std::invalid_argument("DensityOperator: hermiticity deviation " +
                                std::to_string(herm_dev) + " exceeds tolerance");
  }
  if (herm_dev > 0.0) {
    m_ = ((m_ + m_.adjoint()) / 2.0).eval();
  }
  const cxd tr = m_.trace();
  if (std::abs(tr - cxd(1.0, 0.0)) > tol.norm) {
    throw std::invalid_argument("DensityOperator: trace deviates from 1 by " +
                                std::to_string(std::abs(tr - cxd(1.0, 0.0))));
  }
}

DensityOperator as_density(const PureState& state, const Tolerances& tol) {
  const Vector& a = state.amplitudes();
  return DensityOperator(state.layout(), a * a.adjoint(), tol);
}

DensityOperator partial_trace(const PureState& state, const std::vector<int>& keep,
                              const Tolerances& tol) {
  const RegisterLayout& layout = state.layout();
  check_subsystem_set(layout, keep, "partial_trace");
  if (static_cast<int>(keep.size()) == layout.size()) {
    return as_density(state, tol);
  }
  const std::vector<int> rest = complement_of(layout, keep);
  const std::vector<std::int64_t> off_keep = subset_offsets(layout, keep);
  const std::vector<std::int64_t> off_rest = subset_offsets(layout, rest);
  const auto dk = static_cast<std::int64_t>(off_keep.size());
  const Vector& psi = state.amplitudes();

  Matrix out = Matrix::Zero(dk, dk);
  for (std::int64_t a = 0; a < dk; ++a) {
    for (std::int64_t b = a; b < dk; ++b) {
      cxd sum(0.0, 0.0);
      for (std::int64_t e : off_rest) {
        sum += psi[off_keep[static_cast<std::size_t>(a)] + e] *
               std::conj(psi[off_keep[static_cast<std::size_t>(b)] + e]);
      }
      out(a, b) = sum;
      if (b != a) out(b, a) = std::conj(sum);
    }
  }
  return DensityOperator(layout.restrict_to(keep), std::move(out), tol);
}

DensityOperator partial_trace(const DensityOperator& op, const std::vector<int>& keep,
                              const Tolerances& tol) {
  const RegisterLayout& layout = op.layout();
  check_subsystem_set(layout, keep, "partial_trace");
  if (static_cast<int>(keep.size()) == layout.size()) {
    return op;
  }
  const std::vector<int> rest = complement_of(layout, keep);
  const std::vector<std::int64_t> off_keep = subset_offsets(layout, keep);
  const std::vector<std::int64_t> off_rest = subset_offsets(layout, rest);
  const auto dk = static_cast<std::int64_t>(off_keep.size());
  const Matrix& m = op.matrix();

  Matrix out = Matrix::Zero(dk, dk);
  for (std::int64_t a = 0; a < dk; ++a) {
    for (std::int64_t b = a; b < dk; ++b) {
      cxd sum(0.0, 0.0);
      for (std::int64_t e : off_rest) {
        sum += m(off_keep[static_cast<std::size_t>(a)] + e,
                 off_keep[static_cast<std::size_t>(b)] + e);
      }
      out(a, b) = sum;
      if (b != a) out(b, a) = std::conj(sum);
    }
  }
  return DensityOperator(layout.restrict_to(keep), std::move(out), tol);
}

Spectrum spectrum(const DensityOperator& op, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectrum: eigensolver failed to converge");
  }
  Eigen::VectorXd vals = solver.eigenvalues();
  Spectrum out;
  out.eigenvalues.resize(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    double v = vals[vals.size() - 1 - i];  // descending
    if (v < -tol.psd) {
      throw std::runtime_error("spectrum: eigenvalue " + std::to_string(v) +
                               " below -psd tolerance (corrupt operator)");
    }
    v = std::clamp(v, 0.0, 1.0);
    out.eigenvalues[i] = v;
    if (v > tol.rank) ++out.rank;
  }
  if (std::abs(out.eigenvalues.sum() - 1.0) > tol.norm + tol.psd * static_cast<double>(vals.size())) {
    throw std::runtime_error("spectrum: eigenvalue sum deviates from 1");
  }
  return out;
}

double trace_power(const Spectrum& spec, double p, const Tolerances& tol) {
  if (p < 0.0) {
    throw std::invalid_argument("trace_power: exponent must be nonnegative");
  }
  if (p == 1.0) {
    throw std::invalid_argument("trace_power: exponent 1 is rejected (measure undefined)");
  }
  double mass = 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    if (spec.eigenvalues[i] > tol.rank) {
      mass += spec.eigenvalues[i];
      ++rank;
    }
  }
  if (p == 0.0) return static_cast<double>(rank);
  if (rank == 0 || mass <= 0.0) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double v = spec.eigenvalues[i];
    if (v > tol.rank) sum += std::pow(v / mass, p);
  }
  return sum;
}

double trace_power(const DensityOperator& op, double p, const Tolerances& tol) {
  return trace_power(spectrum(op, tol), p, tol);
}

std::int64_t permuted_index(const RegisterLayout& layout, const std::vector<int>& perm,
                            std::int64_t index) {
  std::int64_t src = 0;
  for (int t = 0; t < layout.size(); ++t) {
    src += static_cast<std::int64_t>(layout.digit(index, t)) * layout.stride(perm[static_cast<std::size_t>(t)]);
  }
  return src;
}

static void check_permutation(const RegisterLayout& layout, const std::vector<int>& perm) {
  const int n = layout.size();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permute_subsystems: permutation has wrong length");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int t = 0; t < n; ++t) {
    const int s = perm[static_cast<std::size_t>(t)];
    if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)]) {
      throw std::invalid_argument("permute_subsystems: not a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(s)] = 1;
    if (layout.dim(s) != layout.dim(t)) {
      throw std::invalid_argument("permute_subsystems: dimension mismatch between slots " +
                                  std::to_string(t + 1) + " and " + std::to_string(s + 1));
    }
  }
}

PureState permute_subsystems(const PureState& state, const std::vector<int>& perm) {
  const RegisterLayout& layout = state.layout();
  check_permutation(layout, perm);
  const Vector& in = state.amplitudes();
  Vector out(in.size());
  for (std::int64_t i = 0; i < in.size(); ++i) {
    out[i] = in[permuted_index(layout, perm, i)];
  }
  return PureState(layout, std::move(out));
}

PureState apply_local_unitary(const PureState& state, const std::vector<Matrix>& factors,
                              const Tolerances& tol) {
  const RegisterLayout& layout = state.layout();
  if (static_cast<int>(factors.size()) != layout.size()) {
    throw std::invalid_argument("apply_local_unitary: expected one factor per subsystem");
  }
  for (int t = 0; t < layout.size(); ++t) {
    const Matrix& u = factors[static_cast<std::size_t>(t)];
    const int d = layout.dim(t);
    if (u.rows() != d || u.cols() != d) {
      throw std::invalid_argument("apply_local_unitary: factor " + std::to_string(t + 1) +
                                  " does not match local dimension " + std::to_string(d));
    }
    const double dev = (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > tol.herm) {
      throw std::invalid_argument("apply_local_unitary: factor " + std::to_string(t + 1) +
                                  " is not unitary (deviation " + std::to_string(dev) + ")");
    }
  }

  Vector amp = state.amplitudes();
  for (int t = 0; t < layout.size(); ++t) {
    const Matrix& u = factors[static_cast<std::size_t>(t)];
    const int d = layout.dim(t);
    const std::int64_t inner = layout.stride(t);
    const std::int64_t outer = layout.total_dim() / (inner * d);
    Vector column(d);
    for (std::int64_t o = 0; o < outer; ++o) {
      const std::int64_t base = o * inner * d;
      for (std::int64_t r = 0; r < inner; ++r) {
        for (int i = 0; i < d; ++i) column[i] = amp[base + i * inner + r];
        for (int j = 0; j < d; ++j) {
          cxd acc(0.0, 0.0);
          for (int i = 0; i < d; ++i) acc += u(j, i) * column[i];
          amp[base + j * inner + r] = acc;
        }
      }
    }
  }
  return PureState(layout, std::move(amp));
}

PureState tensor(const PureState& a, const PureState& b, std::int64_t dim_cap,
                 const Tolerances& tol) {
  std::vector<int> dims = a.layout().dims();
  dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
  RegisterLayout layout(dims, dim_cap);  // throws past the cap
  const Vector& av = a.amplitudes();
  const Vector& bv = b.amplitudes();
  Vector out(av.size() * bv.size());
  for (std::int64_t i = 0; i < av.size(); ++i) {
    out.segment(i * bv.size(), bv.size()) = av[i] * bv;
  }
  return PureState(std::move(layout), std::move(out), tol);
}

}  // namespace kpent
