#include "kpent/layout.hpp"

#include <stdexcept>
#include <string>

namespace kpent {

RegisterLayout::RegisterLayout(std::vector<int> dims, std::int64_t dim_cap)
    : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw std::invalid_argument("RegisterLayout: at least one subsystem required");
  }
  for (std::size_t t = 0; t < dims_.size(); ++t) {
    if (dims_[t] < 2) {
      throw std::invalid_argument("RegisterLayout: subsystem " + std::to_string(t + 1) +
                                  " has local dimension " + std::to_string(dims_[t]) +
                                  " (must be >= 2)");
    }
    if (total_ > dim_cap / dims_[t]) {
      throw std::invalid_argument("RegisterLayout: total dimension exceeds cap " +
                                  std::to_string(dim_cap));
    }
    total_ *= dims_[t];
  }
  strides_.assign(dims_.size(), 1);
  for (int t = static_cast<int>(dims_.size()) - 2; t >= 0; --t) {
    strides_[t] = strides_[t + 1] * dims_[t + 1];
  }
}

RegisterLayout RegisterLayout::restrict_to(const std::vector<int>& subsystems) const {
  check_subsystem_set(*this, subsystems, "restrict_to");
  std::vector<int> sub;
  sub.reserve(subsystems.size());
  for (int t : subsystems) sub.push_back(dim(t));
  return RegisterLayout(sub);
}

std::vector<std::int64_t> subset_offsets(const RegisterLayout& layout,
                                         const std::vector<int>& subsystems) {
  std::int64_t count = 1;
  for (int t : subsystems) count *= layout.dim(t);
  std::vector<std::int64_t> offsets(static_cast<std::size_t>(count), 0);
  std::int64_t repeat = count;  // current block length for the running digit
  for (int t : subsystems) {
    const int d = layout.dim(t);
    const std::int64_t stride = layout.stride(t);
    repeat /= d;
    for (std::int64_t idx = 0; idx < count; ++idx) {
      offsets[static_cast<std::size_t>(idx)] += ((idx / repeat) % d) * stride;
    }
  }
  return offsets;
}

void check_subsystem_set(const RegisterLayout& layout,
                         const std::vector<int>& subsystems, const char* what) {
  if (subsystems.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty subsystem set");
  }
  int prev = -1;
  for (int t : subsystems) {
    if (t < 0 || t >= layout.size()) {
      throw std::invalid_argument(std::string(what) + ": subsystem index " +
                                  std::to_string(t) + " out of range for n=" +
                                  std::to_string(layout.size()));
    }
    if (t <= prev) {
      throw std::invalid_argument(std::string(what) +
                                  ": subsystem set must be strictly increasing");
    }
    prev = t;
  }
}

}  // namespace kpent
