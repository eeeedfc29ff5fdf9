#pragma once

#include <cstdint>
#include <vector>

#include "kpent/types.hpp"

namespace kpent {

// Qudit register layout. Subsystem 0 is the most significant digit of the
// basis index: index = sum_t digit_t * stride_t with
// stride_t = prod(dims[t+1..n-1]).
class RegisterLayout {
 public:
  explicit RegisterLayout(std::vector<int> dims,
                          std::int64_t dim_cap = kDefaultDimCap);

  int size() const { return static_cast<int>(dims_.size()); }
  int dim(int t) const { return dims_[static_cast<std::size_t>(t)]; }
  const std::vector<int>& dims() const { return dims_; }
  std::int64_t total_dim() const { return total_; }
  std::int64_t stride(int t) const { return strides_[static_cast<std::size_t>(t)]; }

  int digit(std::int64_t index, int t) const {
    return static_cast<int>((index / stride(t)) % dim(t));
  }

  // Layout of the given subsystems in their original relative order.
  // `subsystems` must be strictly increasing and in range.
  RegisterLayout restrict_to(const std::vector<int>& subsystems) const;

  bool operator==(const RegisterLayout& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<std::int64_t> strides_;
  std::int64_t total_ = 1;
};

// For each local index over `subsystems` (mixed-radix, ascending subsystem
// order), the corresponding global basis-index offset. The returned table has
// prod(dims of subsystems) entries; a global index is recovered as
// table_keep[a] + table_rest[e].
std::vector<std::int64_t> subset_offsets(const RegisterLayout& layout,
                                         const std::vector<int>& subsystems);

// Validates that `subsystems` is a nonempty, strictly increasing, in-range
// index set; throws std::invalid_argument naming `what` otherwise.
void check_subsystem_set(const RegisterLayout& layout,
                         const std::vector<int>& subsystems, const char* what);

}  // namespace kpent
