#include "kpent/builtin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kpent {

namespace {

RegisterLayout qubits(int n) { return RegisterLayout(std::vector<int>(static_cast<std::size_t>(n), 2)); }

}  // namespace

PureState ghz_state(int n) {
  if (n < 2) throw std::invalid_argument("ghz_state: n >= 2 required");
  RegisterLayout layout = qubits(n);
  Vector amp = Vector::Zero(layout.total_dim());
  amp[0] = cxd(std::numbers::sqrt2 / 2.0, 0.0);
  amp[layout.total_dim() - 1] = amp[0];
  return PureState(std::move(layout), std::move(amp));
}

PureState w_state(int n) {
  if (n < 2) throw std::invalid_argument("w_state: n >= 2 required");
  RegisterLayout layout = qubits(n);
  Vector amp = Vector::Zero(layout.total_dim());
  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  for (int t = 0; t < n; ++t) amp[layout.stride(t)] = cxd(c, 0.0);
  return PureState(std::move(layout), std::move(amp));
}

PureState phi1_state() {
  RegisterLayout layout = qubits(4);
  Vector amp = Vector::Zero(16);
  amp[0b0000] = amp[0b1011] = amp[0b1101] = amp[0b1111] = cxd(0.5, 0.0);
  return PureState(std::move(layout), std::move(amp));
}

PureState phi2_state() {
  RegisterLayout layout = qubits(4);
  Vector amp = Vector::Zero(16);
  amp[0b0000] = amp[0b1111] = amp[0b1001] = amp[0b1110] = cxd(0.5, 0.0);
  return PureState(std::move(layout), std::move(amp));
}

PureState phi_theta_state(double theta_deg) {
  const double theta = theta_deg * std::numbers::pi / 180.0;
  RegisterLayout layout = qubits(3);
  Vector amp = Vector::Zero(8);
  amp[0b010] = cxd(std::sin(theta) / 2.0, 0.0);
  amp[0b100] = cxd(std::sin(theta) * std::sqrt(3.0) / 2.0, 0.0);
  amp[0b001] = cxd(std::cos(theta), 0.0);
  return PureState(std::move(layout), std::move(amp));
}

PureState builtin_state(const std::string& name, std::optional<double> theta_deg) {
  if (name == "phi1") return phi1_state();
  if (name == "phi2") return phi2_state();
  if (name == "phitheta") {
    if (!theta_deg) throw std::invalid_argument("builtin 'phitheta' requires --theta");
    return phi_theta_state(*theta_deg);
  }
  auto parse_n = [&](std::size_t prefix_len) {
    const std::string digits = name.substr(prefix_len);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("unknown builtin state '" + name + "'");
    }
    return std::stoi(digits);
  };
  if (name.rfind("ghz", 0) == 0) return ghz_state(parse_n(3));
  if (name.rfind("w", 0) == 0) return w_state(parse_n(1));
  throw std::invalid_argument("unknown builtin state '" + name +
                              "' (expected ghzN, wN, phi1, phi2, phitheta)");
}

}  // namespace kpent
