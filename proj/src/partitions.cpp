#include "kpent/partitions.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace kpent {

int Partition::max_block_size() const {
  int m = 0;
  for (const auto& b : blocks) m = std::max(m, static_cast<int>(b.size()));
  return m;
}

std::string Partition::to_text() const {
  std::string out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += '|';
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      if (i) out += ',';
      out += std::to_string(blocks[b][i] + 1);
    }
  }
  return out;
}

Partition Partition::from_text(const std::string& text, int n) {
  Partition p;
  p.n = n;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> block;
  std::size_t pos = 0;
  auto flush_block = [&] {
    if (block.empty()) throw std::invalid_argument("Partition: empty block in '" + text + "'");
    p.blocks.push_back(block);
    block.clear();
  };
  while (pos < text.size()) {
    std::size_t end = pos;
    while (end < text.size() && text[end] != ',' && text[end] != '|') ++end;
    const int v = std::stoi(text.substr(pos, end - pos)) - 1;
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("Partition: bad index in '" + text + "'");
    }
    seen[static_cast<std::size_t>(v)] = 1;
    block.push_back(v);
    if (end < text.size() && text[end] == '|') {
      flush_block();
    }
    pos = end + 1;
  }
  flush_block();
  for (char s : seen) {
    if (!s) throw std::invalid_argument("Partition: '" + text + "' does not cover 1.." +
                                        std::to_string(n));
  }
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

static void check_nk(int n, int k) {
  if (n < 2) throw std::invalid_argument("partitions: n must be >= 2");
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("partitions: k must satisfy 1 <= k <= n-1 (got k=" +
                                std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
}

void for_each_bounded(int n, int k, const std::function<void(const Partition&)>& visit) {
  check_nk(n, k);
  std::vector<int> assign(static_cast<std::size_t>(n), 0);  // restricted-growth string
  std::vector<int> count(static_cast<std::size_t>(n), 0);   // block occupancy
  Partition p;
  p.n = n;

  // Depth-first over RGS values in ascending order = lexicographic emission.
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == n) {
      p.blocks.assign(static_cast<std::size_t>(used), {});
      for (int j = 0; j < n; ++j) {
        p.blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(j)])].push_back(j);
      }
      visit(p);
      return;
    }
    const int limit = std::min(used, n - 1);
    for (int c = 0; c <= limit; ++c) {
      if (c < used && count[static_cast<std::size_t>(c)] >= k) continue;
      assign[static_cast<std::size_t>(i)] = c;
      ++count[static_cast<std::size_t>(c)];
      self(self, i + 1, std::max(used, c + 1));
      --count[static_cast<std::size_t>(c)];
    }
  };
  rec(rec, 0, 0);
}

std::vector<Partition> enumerate_bounded(int n, int k) {
  std::vector<Partition> out;
  for_each_bounded(n, k, [&](const Partition& p) { out.push_back(p); });
  return out;
}

std::vector<Partition> enumerate_genuine(int n, int k) {
  std::vector<Partition> out;
  for_each_bounded(n, k, [&](const Partition& p) {
    if (p.max_block_size() == k) out.push_back(p);
  });
  return out;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw std::overflow_error("partitions: count exceeds 64-bit range");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("partitions: count exceeds 64-bit range");
  }
  return a * b;
}

// Partitions of i labelled elements with every block size <= k, by the block
// containing the first element: choose j-1 companions out of i-1.
std::uint64_t count_at_most(int n, int k, int n_cap) {
  if (n > n_cap) {
    throw std::invalid_argument("partitions: n exceeds configured cap " + std::to_string(n_cap));
  }
  if (k <= 0) return n == 0 ? 1 : 0;
  std::vector<std::vector<std::uint64_t>> choose(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    choose[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j) {
      choose[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          checked_add(choose[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)],
                      choose[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
    }
  }
  std::vector<std::uint64_t> table(static_cast<std::size_t>(n + 1), 0);
  table[0] = 1;
  for (int i = 1; i <= n; ++i) {
    std::uint64_t total = 0;
    for (int j = 1; j <= std::min(k, i); ++j) {
      total = checked_add(
          total, checked_mul(choose[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)],
                             table[static_cast<std::size_t>(i - j)]));
    }
    table[static_cast<std::size_t>(i)] = total;
  }
  return table[static_cast<std::size_t>(n)];
}

}  // namespace

std::uint64_t count_bounded(int n, int k, int n_cap) {
  check_nk(n, k);
  return count_at_most(n, k, n_cap);
}

std::uint64_t count_genuine(int n, int k, int n_cap) {
  check_nk(n, k);
  return count_at_most(n, k, n_cap) - count_at_most(n, k - 1, n_cap);
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> block_bipartitions(
    const std::vector<int>& block) {
  const int s = static_cast<int>(block.size());
  if (s < 2) {
    throw std::invalid_argument("block_bipartitions: block must have at least 2 elements");
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  const std::uint64_t masks = (std::uint64_t{1} << (s - 1));
  out.reserve(static_cast<std::size_t>(masks - 1));
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    std::vector<int> first{block[0]};
    std::vector<int> second;
    for (int j = 1; j < s; ++j) {
      if (mask >> (j - 1) & 1) {
        second.push_back(block[static_cast<std::size_t>(j)]);
      } else {
        first.push_back(block[static_cast<std::size_t>(j)]);
      }
    }
    out.emplace_back(std::move(first), std::move(second));
  }
  return out;
}

}  // namespace kpent
