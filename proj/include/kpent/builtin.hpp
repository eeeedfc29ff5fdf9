#pragma once

#include <optional>
#include <string>

#include "kpent/state.hpp"

namespace kpent {

// (|0...0> + |1...1>)/sqrt(2) on n qubits.
PureState ghz_state(int n);

// Equal superposition of the n single-excitation basis states.
PureState w_state(int n);

// The two 4-qubit reference states distinguished by the geometric-mean family.
PureState phi1_state();
PureState phi2_state();

// sin(theta) (|010>/2 + sqrt(3)/2 |100>) + cos(theta) |001>, theta in degrees.
PureState phi_theta_state(double theta_deg);

// Parses "ghz4", "w5", "phi1", "phi2", "phitheta" (the latter requires
// theta_deg). Throws std::invalid_argument for unknown names.
PureState builtin_state(const std::string& name, std::optional<double> theta_deg = {});

}  // namespace kpent
