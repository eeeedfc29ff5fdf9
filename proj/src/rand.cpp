#include "kpent/rand.hpp"

#include <Eigen/QR>
#include <cmath>

namespace kpent {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix haar_unitary(int d, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = cxd(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cxd rj = r(j, j);
    const double mag = std::abs(rj);
    q.col(j) *= mag > 0 ? rj / mag : cxd(1.0, 0.0);
  }
  return q;
}

PureState random_pure_state(const RegisterLayout& layout, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(layout.total_dim());
  for (std::int64_t i = 0; i < v.size(); ++i) v[i] = cxd(gauss(rng), gauss(rng));
  v /= v.norm();
  return PureState(layout, std::move(v));
}

}  // namespace kpent
