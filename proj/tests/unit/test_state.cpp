#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numbers>

#include "helpers.hpp"
#include "kpent/builtin.hpp"
#include "kpent/rand.hpp"
#include "kpent/state.hpp"

using namespace kpent;
using kpent::testing::basis_state;
using kpent::testing::bell_pair;
using kpent::testing::qubits;

namespace {

// Independent route for Tr rho^p: general (non-selfadjoint) eigensolver with
// the same rank filter and renormalization convention.
double trace_power_oracle(const DensityOperator& op, double p, double rank_tol = 1e-9) {
  Eigen::ComplexEigenSolver<Matrix> solver(op.matrix());
  REQUIRE(solver.info() == Eigen::Success);
  std::vector<double> kept;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double v = solver.eigenvalues()[i].real();
    if (v > rank_tol) kept.push_back(v);
  }
  if (p == 0.0) return static_cast<double>(kept.size());
  double mass = 0.0;
  for (double v : kept) mass += v;
  double sum = 0.0;
  for (double v : kept) sum += std::pow(v / mass, p);
  return sum;
}

}  // namespace

TEST_CASE("layout rejects degenerate subsystems and oversized registers") {
  CHECK_THROWS_AS(RegisterLayout({2, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(RegisterLayout(std::vector<int>(25, 2)), std::invalid_argument);
  RegisterLayout layout({2, 3, 2});
  CHECK(layout.total_dim() == 12);
  CHECK(layout.stride(0) == 6);
  CHECK(layout.stride(1) == 2);
  CHECK(layout.stride(2) == 1);
  CHECK(layout.digit(7, 0) == 1);  // 7 = 1*6 + 0*2 + 1
  CHECK(layout.digit(7, 1) == 0);
  CHECK(layout.digit(7, 2) == 1);
}

TEST_CASE("partial trace of a product basis state is a pure projector") {
  const PureState s = basis_state(qubits(2), 0b00);
  const DensityOperator r = partial_trace(s, {0});
  CHECK(r.dim() == 2);
  CHECK(std::abs(r.matrix()(0, 0) - cxd(1, 0)) == 0.0);
  CHECK(std::abs(r.matrix()(1, 1)) == 0.0);
}

TEST_CASE("single-qubit marginal of w4 is diag(3/4, 1/4)") {
  const PureState w4 = w_state(4);
  const DensityOperator r = partial_trace(w4, {3});
  CHECK(r.matrix()(0, 0).real() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.matrix()(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(r.matrix()(0, 1)) < 1e-12);
  // purity deficit of the marginal
  CHECK(1.0 - trace_power(r, 2.0) == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
  const Spectrum sp = spectrum(r);
  CHECK(sp.eigenvalues[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sp.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(sp.rank == 2);
}

TEST_CASE("bell pair marginal is maximally mixed") {
  const DensityOperator r = partial_trace(bell_pair(), {0});
  CHECK(std::abs(r.matrix()(0, 0) - cxd(0.5, 0)) < 1e-15);
  CHECK(std::abs(r.matrix()(1, 1) - cxd(0.5, 0)) < 1e-15);
  CHECK(std::abs(r.matrix()(0, 1)) < 1e-15);
  const Spectrum sp = spectrum(r);
  CHECK(sp.eigenvalues[0] == doctest::Approx(0.5));
  CHECK(sp.eigenvalues[1] == doctest::Approx(0.5));
}

TEST_CASE("partial trace over the full set is the identity map") {
  Rng rng(11);
  const PureState s = random_pure_state(qubits(3), rng);
  const DensityOperator full = as_density(s);
  const DensityOperator kept = partial_trace(full, {0, 1, 2});
  CHECK((kept.matrix() - full.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial trace composes across subsystem sets") {
  Rng rng(12);
  const PureState s = random_pure_state(qubits(4), rng);
  const DensityOperator direct = partial_trace(s, {0, 1});
  const DensityOperator staged = partial_trace(partial_trace(s, {0, 1, 2}), {0, 1});
  CHECK((direct.matrix() - staged.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace validates the keep set") {
  const PureState s = basis_state(qubits(2), 0);
  CHECK_THROWS_AS(partial_trace(s, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(s, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(s, {1, 0}), std::invalid_argument);
}

TEST_CASE("schmidt symmetry: complementary marginals share nonzero spectra") {
  Rng rng(13);
  for (int rep = 0; rep < 5; ++rep) {
    const PureState s = random_pure_state(qubits(4), rng);
    const Spectrum a = spectrum(partial_trace(s, {0}));
    const Spectrum b = spectrum(partial_trace(s, {1, 2, 3}));
    REQUIRE(a.rank <= b.eigenvalues.size());
    for (int i = 0; i < a.rank; ++i) {
      CHECK(a.eigenvalues[i] == doctest::Approx(b.eigenvalues[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("trace_power matches an independently diagonalized copy") {
  Rng rng(14);
  const PureState s = random_pure_state(qubits(4), rng);
  const DensityOperator r = partial_trace(s, {0, 2});
  for (double p : {0.0, 0.5, 2.0, 3.0, 4.7}) {
    CHECK(trace_power(r, p) == doctest::Approx(trace_power_oracle(r, p)).epsilon(1e-9));
  }
  // integer powers also agree with direct matrix products
  const Matrix m2 = r.matrix() * r.matrix();
  CHECK(trace_power(r, 2.0) == doctest::Approx(m2.trace().real()).epsilon(1e-9));
  CHECK(trace_power(r, 3.0) == doctest::Approx((m2 * r.matrix()).trace().real()).epsilon(1e-9));
}

TEST_CASE("trace_power edge cases") {
  const DensityOperator pure = partial_trace(basis_state(qubits(2), 0), {0});
  CHECK(trace_power(pure, 2.0) == 1.0);
  const DensityOperator mixed = partial_trace(bell_pair(), {0});
  CHECK(trace_power(mixed, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(trace_power(partial_trace(w_state(4), {3}), 0.0) == 2.0);
  CHECK_THROWS_AS(trace_power(mixed, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(trace_power(mixed, -0.5), std::invalid_argument);
}

TEST_CASE("permute_subsystems reorders basis digits") {
  const RegisterLayout layout = qubits(2);
  const PureState s01 = basis_state(layout, 0b01);
  const PureState swapped = permute_subsystems(s01, {1, 0});
  CHECK(std::abs(swapped.amplitudes()[0b10] - cxd(1, 0)) == 0.0);

  // slot t carries the state formerly at perm[t]: a 3-cycle pins the direction
  const PureState s001 = basis_state(qubits(3), 0b001);
  const PureState cycled = permute_subsystems(s001, {2, 0, 1});
  CHECK(std::abs(cycled.amplitudes()[0b100] - cxd(1, 0)) == 0.0);

  Rng rng(15);
  const PureState s = random_pure_state(qubits(3), rng);
  const PureState same = permute_subsystems(s, {0, 1, 2});
  CHECK((same.amplitudes() - s.amplitudes()).norm() == 0.0);
  const PureState rotated = permute_subsystems(s, {2, 0, 1});
  CHECK(std::abs(rotated.amplitudes().squaredNorm() - 1.0) < 1e-12);
}

TEST_CASE("permute_subsystems rejects mismatched dimensions") {
  RegisterLayout layout({2, 3});
  Vector amp = Vector::Zero(6);
  amp[0] = cxd(1, 0);
  const PureState s(layout, std::move(amp));
  CHECK_THROWS_AS(permute_subsystems(s, {1, 0}), std::invalid_argument);
}

TEST_CASE("apply_local_unitary acts factorwise") {
  const RegisterLayout one = RegisterLayout({2});
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  const PureState flipped = apply_local_unitary(basis_state(one, 0), {flip});
  CHECK(std::abs(flipped.amplitudes()[1] - cxd(1, 0)) == 0.0);

  Rng rng(16);
  const PureState s = random_pure_state(qubits(3), rng);
  const PureState same = apply_local_unitary(
      s, {Matrix::Identity(2, 2), Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
  CHECK((same.amplitudes() - s.amplitudes()).norm() == 0.0);

  std::vector<Matrix> factors{haar_unitary(2, rng), haar_unitary(2, rng), haar_unitary(2, rng)};
  const PureState rotated = apply_local_unitary(s, factors);
  CHECK(std::abs(rotated.amplitudes().squaredNorm() - 1.0) < 1e-12);

  Matrix not_unitary = Matrix::Identity(2, 2) * 1.5;
  CHECK_THROWS_AS(apply_local_unitary(s, {not_unitary, factors[1], factors[2]}),
                  std::invalid_argument);
}

TEST_CASE("tensor concatenates registers") {
  const RegisterLayout one({2});
  const PureState a = basis_state(one, 0);
  const PureState b = basis_state(one, 1);
  const PureState ab = tensor(a, b);
  CHECK(ab.size() == 2);
  CHECK(std::abs(ab.amplitudes()[0b01] - cxd(1, 0)) == 0.0);

  Rng rng(17);
  const PureState x = random_pure_state(qubits(2), rng);
  const PureState y = random_pure_state(qubits(2), rng);
  CHECK(std::abs(tensor(x, y).amplitudes().squaredNorm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(tensor(x, y, /*dim_cap=*/8), std::invalid_argument);
}

TEST_CASE("density operator construction symmetrizes small hermiticity noise") {
  Matrix m(2, 2);
  m << cxd(0.5, 0), cxd(0.1, 1e-12), cxd(0.1, 0), cxd(0.5, 0);
  const DensityOperator op(RegisterLayout({2}), m);
  CHECK(std::abs(op.matrix()(0, 1) - std::conj(op.matrix()(1, 0))) == 0.0);

  Matrix bad(2, 2);
  bad << cxd(0.5, 0), cxd(0.3, 0), cxd(-0.3, 0), cxd(0.5, 0);
  CHECK_THROWS_AS(DensityOperator(RegisterLayout({2}), bad), std::invalid_argument);

  Matrix off_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityOperator(RegisterLayout({2}), off_trace), std::invalid_argument);
}

TEST_CASE("pure state norm is validated") {
  Vector amp = Vector::Zero(2);
  amp[0] = cxd(0.9, 0);
  CHECK_THROWS_AS(PureState(RegisterLayout({2}), amp), std::invalid_argument);
}

TEST_CASE("spectrum flags corrupt operators") {
  Rng rng(18);
  const PureState s = random_pure_state(qubits(2), rng);
  CHECK_NOTHROW(spectrum(partial_trace(s, {0})));

  // hermitian and unit trace, but indefinite
  Matrix bad(2, 2);
  bad << cxd(1.5, 0), cxd(0, 0), cxd(0, 0), cxd(-0.5, 0);
  CHECK_THROWS_AS(spectrum(DensityOperator(RegisterLayout({2}), bad)), std::runtime_error);
}

TEST_CASE("qudit registers work through reductions") {
  RegisterLayout pair({3, 3});
  Vector amp = Vector::Zero(9);
  amp[0] = amp[4] = amp[8] = cxd(1.0 / std::sqrt(3.0), 0.0);  // maximally entangled qutrits
  const PureState s(pair, std::move(amp));
  const DensityOperator r = partial_trace(s, {0});
  CHECK(trace_power(r, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(trace_power(r, 0.0) == 3.0);
}
