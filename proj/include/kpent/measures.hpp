#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kpent/partitions.hpp"
#include "kpent/state.hpp"

namespace kpent {

enum class MeasureKind { pe, gpe, genuine_pe, genuine_gpe };

std::string to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(const std::string& name);

// Exponent p with the target block-size bound k. p > 1 is the q regime,
// 0 <= p < 1 the alpha regime; p = 1 is rejected everywhere.
struct MeasureParam {
  double p = 2.0;
  int k = 1;

  bool q_regime() const { return p > 1.0; }
};

void validate(const MeasureParam& param, int n);

enum class Branch { formula, constant_a, constant_b };

std::string to_string(Branch branch);

struct MeasureReport {
  double value = 0.0;
  Branch branch = Branch::formula;
  // Partitions attaining the minimum within the tie tolerance (PE family;
  // empty for the geometric-mean family).
  std::vector<Partition> argmin;
  // (partition, mean block deficit) over the reduced partition set; the value
  // is recoverable by re-reduction (sqrt of min, or sqrt of geometric mean).
  std::vector<std::pair<Partition, double>> per_partition;
};

struct MeasureOptions {
  double a = 1.0;            // constant branch of the genuine PE
  double b = 1.0;            // constant branch of the genuine GPE
  double tie_tol = 1e-10;    // argmin tie window
  double factor_tol = 1e-8;  // Frobenius tolerance for block factorization
  Tolerances tol;
  int threads = 1;
};

// |1 - Tr(rho_block^p)| for the reduced operator of the block. Inside either
// regime this equals the signed deficit of the defining formulas.
double block_term(const PureState& state, const std::vector<int>& block, double p,
                  const Tolerances& tol = {});

// Minimum over all block-size-bounded partitions of sqrt(mean block deficit).
MeasureReport pe_concurrence(const PureState& state, const MeasureParam& param,
                             const MeasureOptions& opts = {});

// Geometric mean of the per-partition deficits over the same family,
// accumulated in log space in canonical enumeration order; an exactly-zero
// partition deficit short-circuits to 0.
MeasureReport gpe_concurrence(const PureState& state, const MeasureParam& param,
                              const MeasureOptions& opts = {});

struct FactorizationCheck {
  bool uncorrelated = false;  // some bipartition factorizes within tol
  std::pair<std::vector<int>, std::vector<int>> witness;  // factorizing split, or closest
  double distance = 0.0;      // Frobenius distance at the witness
};

// Tests whether rho_block factorizes as rho_B1 (x) rho_B2 across some
// bipartition of the block.
FactorizationCheck is_block_uncorrelated(const PureState& state, const std::vector<int>& block,
                                         double tol = 1e-8, const Tolerances& state_tol = {});

// Genuine variants: the partition family is restricted to max block size
// exactly k, and further to partitions containing at least one size-k block
// that is correlated across every bipartition. When that admitted set is
// empty the measures take the constant a (resp. b).
MeasureReport genuine_pe(const PureState& state, const MeasureParam& param,
                         const MeasureOptions& opts = {});
MeasureReport genuine_gpe(const PureState& state, const MeasureParam& param,
                          const MeasureOptions& opts = {});

// Smallest k with vanishing PE concurrence (within tol), or n when none: the
// state is then genuinely n-partite entangled.
int classify(const PureState& state, double p, double tol = 1e-9,
             const MeasureOptions& opts = {});

// Dispatch helper used by the roof and PI modules.
double evaluate(const PureState& state, MeasureKind kind, const MeasureParam& param,
                const MeasureOptions& opts = {});

}  // namespace kpent
