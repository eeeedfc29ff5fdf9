#pragma once

#include <cstdint>
#include <vector>

#include "kpent/layout.hpp"
#include "kpent/types.hpp"

namespace kpent {

// Normalized pure state on a qudit register.
class PureState {
 public:
  PureState(RegisterLayout layout, Vector amplitudes, const Tolerances& tol = {});

  const RegisterLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amp_; }
  int size() const { return layout_.size(); }
  std::int64_t dim() const { return layout_.total_dim(); }

 private:
  RegisterLayout layout_;
  Vector amp_;
};

// Hermitian, unit-trace operator on a qudit register. Inputs within the
// hermiticity tolerance are symmetrized to (M + M^dagger)/2 so file
// round-trip noise does not accumulate. Positivity is enforced where the
// spectrum is actually computed.
class DensityOperator {
 public:
  DensityOperator(RegisterLayout layout, Matrix matrix, const Tolerances& tol = {});

  const RegisterLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return m_; }
  int size() const { return layout_.size(); }
  std::int64_t dim() const { return layout_.total_dim(); }

 private:
  RegisterLayout layout_;
  Matrix m_;
};

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // nonincreasing, clamped to [0, 1]
  int rank = 0;                 // eigenvalues above the rank threshold
};

DensityOperator as_density(const PureState& state, const Tolerances& tol = {});

// Reduced operator on `keep` (strictly increasing 0-based indices, nonempty;
// the full set returns the input operator / projector unchanged).
DensityOperator partial_trace(const PureState& state, const std::vector<int>& keep,
                              const Tolerances& tol = {});
DensityOperator partial_trace(const DensityOperator& op, const std::vector<int>& keep,
                              const Tolerances& tol = {});

// Full Hermitian eigendecomposition; throws if an eigenvalue falls below
// -tol.psd (corrupt input), clamps [-tol.psd, 0) to zero.
Spectrum spectrum(const DensityOperator& op, const Tolerances& tol = {});

// Tr rho^p over the eigenvalues above the rank threshold, renormalized to
// unit mass. p = 0 returns the rank; p = 1 is rejected.
double trace_power(const DensityOperator& op, double p, const Tolerances& tol = {});
double trace_power(const Spectrum& spec, double p, const Tolerances& tol = {});

// Re-indexes amplitudes so subsystem t carries the state formerly at perm[t]
// (0-based). Requires dim(perm[t]) == dim(t) for every t.
PureState permute_subsystems(const PureState& state, const std::vector<int>& perm);

// Basis-index image of `index` under the subsystem permutation above; the
// permuted state satisfies out[i] = in[permuted_index(layout, perm, i)].
std::int64_t permuted_index(const RegisterLayout& layout, const std::vector<int>& perm,
                            std::int64_t index);

// Applies the tensor product of per-subsystem unitaries.
PureState apply_local_unitary(const PureState& state, const std::vector<Matrix>& factors,
                              const Tolerances& tol = {});

// Kronecker product state on the concatenated register (a's subsystems first).
PureState tensor(const PureState& a, const PureState& b,
                 std::int64_t dim_cap = kDefaultDimCap, const Tolerances& tol = {});

}  // namespace kpent
