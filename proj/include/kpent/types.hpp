#pragma once

#include <complex>
#include <cstdint>
#include <Eigen/Dense>

namespace kpent {

using cxd = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Validation tolerances shared across the library. Callers may override per
// operation; the defaults below are the ones every CLI run starts from.
struct Tolerances {
  double norm = 1e-10;  // unit-norm / unit-trace slack
  double herm = 1e-10;  // hermiticity and unitarity slack (max entrywise)
  double psd = 1e-9;    // eigenvalues in [-psd, 0) are clamped to zero
  double rank = 1e-9;   // eigenvalues <= rank carry no mass (shared by p = 0 and p in (0,1))
};

// Hard cap on the total Hilbert-space dimension of a register.
inline constexpr std::int64_t kDefaultDimCap = std::int64_t{1} << 20;

}  // namespace kpent
