#include "kpent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "kpent/parallel.hpp"

namespace kpent {

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::pe: return "pe";
    case MeasureKind::gpe: return "gpe";
    case MeasureKind::genuine_pe: return "genuine-pe";
    case MeasureKind::genuine_gpe: return "genuine-gpe";
  }
  return "?";
}

MeasureKind measure_kind_from_string(const std::string& name) {
  if (name == "pe") return MeasureKind::pe;
  if (name == "gpe") return MeasureKind::gpe;
  if (name == "genuine-pe") return MeasureKind::genuine_pe;
  if (name == "genuine-gpe") return MeasureKind::genuine_gpe;
  throw std::invalid_argument("unknown measure '" + name +
                              "' (expected pe, gpe, genuine-pe, genuine-gpe)");
}

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::formula: return "formula";
    case Branch::constant_a: return "constant_a";
    case Branch::constant_b: return "constant_b";
  }
  return "?";
}

void validate(const MeasureParam& param, int n) {
  if (param.p < 0.0 || param.p == 1.0) {
    throw std::invalid_argument("MeasureParam: p must be >= 0 and != 1");
  }
  if (param.k < 1 || param.k > n - 1) {
    throw std::invalid_argument("MeasureParam: k must satisfy 1 <= k <= n-1");
  }
}

double block_term(const PureState& state, const std::vector<int>& block, double p,
                  const Tolerances& tol) {
  return std::abs(1.0 - trace_power(partial_trace(state, block, tol), p, tol));
}

namespace {

std::uint64_t block_mask(const std::vector<int>& block) {
  std::uint64_t m = 0;
  for (int t : block) m |= std::uint64_t{1} << t;
  return m;
}

// Mean block deficit per partition. Distinct blocks recur across partitions,
// so deficits are computed once per block and shared.
std::vector<double> partition_deficits(const PureState& state,
                                       const std::vector<Partition>& parts, double p,
                                       const MeasureOptions& opts) {
  std::map<std::uint64_t, int> slot_of;
  std::vector<const std::vector<int>*> blocks;
  for (const auto& part : parts) {
    for (const auto& block : part.blocks) {
      if (slot_of.emplace(block_mask(block), static_cast<int>(blocks.size())).second) {
        blocks.push_back(&block);
      }
    }
  }
  std::vector<double> deficit(blocks.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(blocks.size()), opts.threads, [&](std::int64_t i) {
    deficit[static_cast<std::size_t>(i)] =
        block_term(state, *blocks[static_cast<std::size_t>(i)], p, opts.tol);
  });

  std::vector<double> mean(parts.size(), 0.0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    double sum = 0.0;
    for (const auto& block : parts[i].blocks) {
      sum += deficit[static_cast<std::size_t>(slot_of.at(block_mask(block)))];
    }
    mean[i] = sum / static_cast<double>(parts[i].block_count());
  }
  return mean;
}

MeasureReport reduce_min(const std::vector<Partition>& parts, const std::vector<double>& mean,
                         double tie_tol) {
  MeasureReport report;
  double best = mean[0];
  for (double u : mean) best = std::min(best, u);
  report.value = std::sqrt(best);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (mean[i] <= best + tie_tol) report.argmin.push_back(parts[i]);
    report.per_partition.emplace_back(parts[i], mean[i]);
  }
  return report;
}

MeasureReport reduce_geometric(const std::vector<Partition>& parts,
                               const std::vector<double>& mean) {
  MeasureReport report;
  bool zero = false;
  double log_sum = 0.0;
  for (double u : mean) {  // canonical enumeration order
    if (u == 0.0) {
      zero = true;
      break;
    }
    log_sum += std::log(u);
  }
  report.value = zero ? 0.0 : std::exp(log_sum / (2.0 * static_cast<double>(mean.size())));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    report.per_partition.emplace_back(parts[i], mean[i]);
  }
  return report;
}

}  // namespace

MeasureReport pe_concurrence(const PureState& state, const MeasureParam& param,
                             const MeasureOptions& opts) {
  const int n = state.size();
  if (n < 2) throw std::invalid_argument("pe_concurrence: n >= 2 required");
  validate(param, n);
  const auto parts = enumerate_bounded(n, param.k);
  return reduce_min(parts, partition_deficits(state, parts, param.p, opts), opts.tie_tol);
}

MeasureReport gpe_concurrence(const PureState& state, const MeasureParam& param,
                              const MeasureOptions& opts) {
  const int n = state.size();
  if (n < 2) throw std::invalid_argument("gpe_concurrence: n >= 2 required");
  validate(param, n);
  const auto parts = enumerate_bounded(n, param.k);
  return reduce_geometric(parts, partition_deficits(state, parts, param.p, opts));
}

FactorizationCheck is_block_uncorrelated(const PureState& state, const std::vector<int>& block,
                                         double tol, const Tolerances& state_tol) {
  if (block.size() < 2) {
    throw std::invalid_argument("is_block_uncorrelated: block must have >= 2 subsystems");
  }
  const DensityOperator rho = partial_trace(state, block, state_tol);
  const RegisterLayout& local = rho.layout();
  const std::int64_t d = local.total_dim();

  // Positions of each subsystem inside the sorted block.
  std::map<int, int> pos;
  for (std::size_t i = 0; i < block.size(); ++i) pos[block[i]] = static_cast<int>(i);

  FactorizationCheck check;
  bool first = true;
  for (const auto& [part1, part2] : block_bipartitions(block)) {
    const DensityOperator rho1 = partial_trace(state, part1, state_tol);
    const DensityOperator rho2 = partial_trace(state, part2, state_tol);
    std::vector<int> slots1, slots2;
    for (int t : part1) slots1.push_back(pos.at(t));
    for (int t : part2) slots2.push_back(pos.at(t));
    const RegisterLayout l1 = rho1.layout();
    const RegisterLayout l2 = rho2.layout();

    auto split_index = [&](std::int64_t idx, std::int64_t& i1, std::int64_t& i2) {
      i1 = 0;
      for (std::size_t j = 0; j < slots1.size(); ++j) {
        i1 += static_cast<std::int64_t>(local.digit(idx, slots1[j])) * l1.stride(static_cast<int>(j));
      }
      i2 = 0;
      for (std::size_t j = 0; j < slots2.size(); ++j) {
        i2 += static_cast<std::int64_t>(local.digit(idx, slots2[j])) * l2.stride(static_cast<int>(j));
      }
    };

    double dist2 = 0.0;
    for (std::int64_t r = 0; r < d; ++r) {
      std::int64_t r1, r2;
      split_index(r, r1, r2);
      for (std::int64_t c = 0; c < d; ++c) {
        std::int64_t c1, c2;
        split_index(c, c1, c2);
        const cxd delta = rho.matrix()(r, c) - rho1.matrix()(r1, c1) * rho2.matrix()(r2, c2);
        dist2 += std::norm(delta);
      }
    }
    const double dist = std::sqrt(dist2);
    if (first || dist < check.distance) {
      check.witness = {part1, part2};
      check.distance = dist;
      first = false;
    }
    if (dist <= tol) {
      check.uncorrelated = true;
      check.witness = {part1, part2};
      check.distance = dist;
      return check;
    }
  }
  return check;
}

namespace {

// Admitted partitions of the genuine formula branch: those with at least one
// size-k block correlated across every bipartition. Block verdicts are
// memoized across partitions.
std::vector<Partition> admitted_genuine(const PureState& state, int k,
                                        const std::vector<Partition>& genuine,
                                        const MeasureOptions& opts) {
  std::map<std::uint64_t, bool> correlated;
  std::vector<Partition> admitted;
  for (const auto& part : genuine) {
    bool ok = false;
    for (const auto& block : part.blocks) {
      if (static_cast<int>(block.size()) != k) continue;
      const std::uint64_t mask = block_mask(block);
      auto it = correlated.find(mask);
      if (it == correlated.end()) {
        const bool corr =
            !is_block_uncorrelated(state, block, opts.factor_tol, opts.tol).uncorrelated;
        it = correlated.emplace(mask, corr).first;
      }
      if (it->second) {
        ok = true;
        break;
      }
    }
    if (ok) admitted.push_back(part);
  }
  return admitted;
}

}  // namespace

MeasureReport genuine_pe(const PureState& state, const MeasureParam& param,
                         const MeasureOptions& opts) {
  const int n = state.size();
  validate(param, n);
  if (param.k < 2) {
    throw std::invalid_argument("genuine_pe: k >= 2 required (a size-k block must admit a bipartition)");
  }
  const auto genuine = enumerate_genuine(n, param.k);
  const auto admitted = admitted_genuine(state, param.k, genuine, opts);
  if (admitted.empty()) {
    MeasureReport report;
    report.value = opts.a;
    report.branch = Branch::constant_a;
    return report;
  }
  return reduce_min(admitted, partition_deficits(state, admitted, param.p, opts), opts.tie_tol);
}

MeasureReport genuine_gpe(const PureState& state, const MeasureParam& param,
                          const MeasureOptions& opts) {
  const int n = state.size();
  validate(param, n);
  if (param.k < 2) {
    throw std::invalid_argument("genuine_gpe: k >= 2 required (a size-k block must admit a bipartition)");
  }
  const auto genuine = enumerate_genuine(n, param.k);
  const auto admitted = admitted_genuine(state, param.k, genuine, opts);
  if (admitted.empty()) {
    MeasureReport report;
    report.value = opts.b;
    report.branch = Branch::constant_b;
    return report;
  }
  return reduce_geometric(admitted, partition_deficits(state, admitted, param.p, opts));
}

int classify(const PureState& state, double p, double tol, const MeasureOptions& opts) {
  const int n = state.size();
  for (int k = 1; k <= n - 1; ++k) {
    if (pe_concurrence(state, {p, k}, opts).value <= tol) return k;
  }
  return n;
}

double evaluate(const PureState& state, MeasureKind kind, const MeasureParam& param,
                const MeasureOptions& opts) {
  switch (kind) {
    case MeasureKind::pe: return pe_concurrence(state, param, opts).value;
    case MeasureKind::gpe: return gpe_concurrence(state, param, opts).value;
    case MeasureKind::genuine_pe: return genuine_pe(state, param, opts).value;
    case MeasureKind::genuine_gpe: return genuine_gpe(state, param, opts).value;
  }
  throw std::logic_error("evaluate: unhandled measure kind");
}

}  // namespace kpent
