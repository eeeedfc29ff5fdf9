#pragma once

#include <cstdint>
#include <random>

#include "kpent/state.hpp"

namespace kpent {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive independent per-task seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// Haar-distributed d x d unitary (QR of a Ginibre sample with phase fix).
Matrix haar_unitary(int d, Rng& rng);

// Haar-style random pure state (normalized complex Gaussian vector).
PureState random_pure_state(const RegisterLayout& layout, Rng& rng);

}  // namespace kpent
