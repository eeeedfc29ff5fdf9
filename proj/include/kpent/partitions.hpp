#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace kpent {

// Canonical set partition of {0..n-1}: indices ascending inside each block,
// blocks ordered by their smallest element. Rendered 1-based as "1,2|3|4".
struct Partition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
  int max_block_size() const;
  std::string to_text() const;
  static Partition from_text(const std::string& text, int n);

  bool operator==(const Partition& other) const = default;
};

// Streams every set partition of {0..n-1} with all block sizes <= k, each
// exactly once, in lexicographic order of its restricted-growth string.
// Requires 1 <= k <= n-1.
void for_each_bounded(int n, int k, const std::function<void(const Partition&)>& visit);

std::vector<Partition> enumerate_bounded(int n, int k);

// The bounded stream filtered to partitions whose maximum block size is
// exactly k.
std::vector<Partition> enumerate_genuine(int n, int k);

// Exact counts via a recurrence independent of the enumeration (the two act
// as oracles for each other). Throws on k out of range, n above cap, or
// 64-bit overflow.
std::uint64_t count_bounded(int n, int k, int n_cap = 16);
std::uint64_t count_genuine(int n, int k, int n_cap = 16);

// All 2^(s-1) - 1 unordered two-part splits of a block with s >= 2 elements,
// in a fixed order (the part containing the smallest element first).
std::vector<std::pair<std::vector<int>, std::vector<int>>> block_bipartitions(
    const std::vector<int>& block);

}  // namespace kpent
