#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "kpent/layout.hpp"
#include "kpent/state.hpp"

namespace kpent::testing {

inline RegisterLayout qubits(int n) {
  return RegisterLayout(std::vector<int>(static_cast<std::size_t>(n), 2));
}

inline PureState basis_state(const RegisterLayout& layout, std::int64_t index) {
  Vector amp = Vector::Zero(layout.total_dim());
  amp[index] = cxd(1.0, 0.0);
  return PureState(layout, std::move(amp));
}

inline PureState bell_pair() {
  RegisterLayout layout = qubits(2);
  Vector amp = Vector::Zero(4);
  amp[0] = amp[3] = cxd(1.0 / std::numbers::sqrt2, 0.0);
  return PureState(std::move(layout), std::move(amp));
}

}  // namespace kpent::testing
