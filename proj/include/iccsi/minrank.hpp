#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "iccsi/counting.hpp"
#include "iccsi/error.hpp"
#include "iccsi/instance.hpp"

namespace iccsi {

/// Per-user flags: user i can recover R_i X from L V_S X and its cache.
/// Holds iff R_i lies in rowspace([V_i; L V_S]).
std::vector<bool> realizes_ic(const Matrix& encoder, const Instance& inst);
bool all_of(const std::vector<bool>& flags);

struct KernelCheck {
  std::vector<bool> per_user;
  /// False when some Z^(i) was sampled instead of enumerated.
  bool exhaustive = true;
  std::uint64_t samples_per_user = 0;
};

/// Same predicate through the confusion sets at t = 1: user i passes iff
/// L V_S z != 0 for every z in Z^(i). Sets beyond the budget are sampled.
KernelCheck realizes_ic_kernel(const Matrix& encoder, const Instance& inst,
                               std::uint64_t budget = kDefaultBudget,
                               std::uint64_t samples = 100000, std::uint64_t seed = 1);

struct MinRankResult {
  std::size_t kappa = 0;
  /// kappa x d_S, full row rank, realizes the instance.
  Matrix witness;
  /// q^{sum_i w_i}, w_i = dim(X^(i) ∩ X^(S)).
  BigInt coset_size;
  std::uint64_t scanned = 0;
};

/// Minimum rank of A + R over A with rows A_i in X^(i) ∩ X^(S). Never reads t.
/// `lower_bound` (e.g. alpha) allows stopping as soon as it is attained.
/// Throws BudgetExceeded.
MinRankResult min_rank(const Instance& inst, std::uint64_t budget = kDefaultBudget,
                       std::size_t lower_bound = 0);

/// Smallest N such that some L in F_q^{N x d_S} realizes the instance, by
/// exhaustive search over L. Tiny instances only; throws BudgetExceeded.
std::size_t min_rank_bruteforce(const Instance& inst, std::uint64_t budget = kDefaultBudget);

struct AlphaResult {
  std::size_t alpha = 0;
  /// Rows: a basis of a maximum subspace U with U \ {0} inside ∪ Z^(i) (t = 1).
  Matrix witness;
};

/// Exact alpha by backtracking over subspaces of F_q^n. Requires q^n within
/// the budget.
AlphaResult alpha(const Instance& inst, std::uint64_t budget = kDefaultBudget);

struct SampledRankAlpha {
  /// log_q |U| for the largest subspace U of F_q^{n x t} found whose nonzero
  /// elements all lie in ∪ Z_delta^(i). A lower bound only.
  std::size_t lower_bound = 0;
  std::uint64_t attempts = 0;
};

/// Randomized greedy search; the result is a lower bound, never exact.
SampledRankAlpha sampled_rank_alpha(const Instance& inst, std::size_t delta,
                                    std::uint64_t attempts, std::uint64_t seed,
                                    std::uint64_t budget = kDefaultBudget);

/// Z in ∪_i Z^(i) with rank(Z) >= 2 delta + 1.
bool in_confusion_union(const Instance& inst, const Matrix& z, std::size_t delta = 0);

}  // namespace iccsi
