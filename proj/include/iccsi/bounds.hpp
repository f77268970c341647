#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iccsi/counting.hpp"
#include "iccsi/instance.hpp"

namespace iccsi {

/// An evaluated bound. For probability bounds `value` is `raw` clamped to
/// [0, 1]; `raw` keeps the unclamped expression.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  Rational value;
  Rational raw;
  std::string decimal;
  /// Present iff the bound is an existence condition.
  std::optional<bool> verdict;
  std::string warning;
};

/// Number of user classes under equality of X^(i), of Z^(i), and of
/// Z^(i)_delta (users with empty Z^(i)_delta form one class).
struct EquivClassCounts {
  std::size_t m_prime = 0;
  std::size_t m_dprime = 0;
  std::size_t m_tprime = 0;
};

EquivClassCounts equiv_counts(const Instance& inst, std::size_t delta);

/// Representative d_i of each Z^(i) class (m'' entries) and of each nonempty
/// Z^(i)_delta class.
std::vector<std::size_t> z_class_dims(const Instance& inst);
std::vector<std::size_t> z_delta_class_dims(const Instance& inst, std::size_t delta);

/// w_i = dim(X^(i) ∩ X^(S)) per user.
std::vector<std::size_t> intersection_dims(const Instance& inst);

/// (1 - m'/q)^{N d_S}: probability that a uniform L realizes the instance.
/// Requires q > m'; otherwise value 0, no verdict, and a warning.
BoundReport zippel_ic_prob(std::uint64_t q, std::uint64_t m_prime, std::uint64_t n_len,
                           std::uint64_t d_s);

/// Number of N-dimensional subspaces U of an s-dimensional S with V ∩ U ⊂ W,
/// where W < V < S have dimensions w <= ell.
BigInt subspace_avoid_count(std::uint64_t w, std::uint64_t ell, std::uint64_t s,
                            std::uint64_t n_len, std::uint64_t q);

/// 1 - [d_S N]^{-1} sum_i count(w_i, w_i + 1, d_S, N): probability that a
/// uniform N-dimensional subspace of X^(S) realizes the instance.
BoundReport subspace_existence_prob(const std::vector<std::size_t>& w, std::uint64_t d_s,
                                    std::uint64_t n_len, std::uint64_t q);

/// 1 - sum_i q^{n-d_i-1}(q-1) V_q(N, 2 delta) / q^N for a uniform L under
/// Hamming errors. The verdict is N > n-d-1 + log_q(m''(q-1)V_q(N,2 delta)),
/// d = min d_i.
BoundReport hamming_random_ecic_prob(const std::vector<std::size_t>& d, std::uint64_t n,
                                     std::uint64_t n_len, std::uint64_t delta, std::uint64_t q,
                                     std::uint64_t m_dprime);

/// q-ary entropy; throws std::domain_error outside (0, 1).
double q_entropy(double x, std::uint64_t q);

struct EntropySphereCheck {
  BigInt volume;
  double entropy_bound;
  bool holds;
};

/// V_q(n, lambda n) against q^{H_q(lambda) n}. Requires lambda n integral and
/// 0 < lambda < 1 - 1/q.
EntropySphereCheck entropy_sphere_check(std::uint64_t n, const Rational& lambda, std::uint64_t q);

/// Entropy form of the Hamming existence bound with delta = floor(lambda N / 2).
/// Floating-point value (double precision).
BoundReport entropy_ecic_prob(const std::vector<std::size_t>& class_dims, std::uint64_t n,
                              std::uint64_t n_len, const Rational& lambda, std::uint64_t q);

std::size_t singleton_lb(std::size_t kappa, std::size_t delta);

/// Bracket on N(k, d), the shortest length of a q-ary linear code of
/// dimension k and minimum distance d. `upper` is absent when unknown.
struct LengthEstimate {
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  bool exact() const { return upper && *upper == lower; }
};

LengthEstimate block_length_estimate(std::size_t k, std::size_t d, std::uint64_t q);

/// N(alpha, 2 delta + 1) <= optimal ECIC length <= N(kappa, 2 delta + 1).
struct LengthBracket {
  std::size_t alpha = 0;
  std::size_t kappa = 0;
  std::size_t delta = 0;
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  bool exact() const { return upper && *upper == lower; }
};

LengthBracket alpha_kappa_bracket(std::size_t alpha, std::size_t kappa, std::size_t delta,
                                  std::uint64_t q);

/// |F_r| prod_{j<r} (q^t - q^j): linear maps F_q^t -> W with image in F_r.
BigInt hom_count(const BigInt& family_size, std::uint64_t t, std::uint64_t r, std::uint64_t q);

/// |Z^(i)_delta|: n x t matrices Z with V_i Z = 0, R_i Z != 0, rank Z >= 2 delta + 1.
BigInt z_delta_size(std::uint64_t n, std::uint64_t d_i, std::uint64_t t, std::uint64_t delta,
                    std::uint64_t q);

/// 1 - q^{-Nt} sum_i |Z^(i)_delta| V(N, t, 2 delta) for a uniform L under rank
/// errors; `class_dims` holds d_i for each class counted. The verdict is
/// sum_i |Z^(i)_delta| V(N, t, 2 delta) < q^{Nt}.
BoundReport rank_random_ecic_prob(const std::vector<std::size_t>& class_dims, std::uint64_t n,
                                  std::uint64_t n_len, std::uint64_t t, std::uint64_t delta,
                                  std::uint64_t q);

/// kappa <= k + ell - 1 whenever m''' < q^{ell t} / (q^t - 1), k = max(n - d_i).
bool rank_kappa_corollary(std::uint64_t m_tprime, std::uint64_t ell, std::uint64_t t,
                          std::uint64_t q);

/// Lower bound on the rank-metric ECIC length from alpha (as log_q |U|):
/// ceil(alpha / t) + 2 delta when t >= n_est, else ceil(alpha / (t - 2 delta)).
BoundReport rank_singleton(std::uint64_t alpha, std::uint64_t t, std::uint64_t delta,
                           std::uint64_t n_est);

/// Decimal rendering used in reports: 4 significant figures.
std::string render_value(const Rational& v, int sig = 4);

}  // namespace iccsi
