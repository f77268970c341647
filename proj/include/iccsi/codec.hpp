#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iccsi/error.hpp"
#include "iccsi/instance.hpp"
#include "iccsi/matrix.hpp"

namespace iccsi {

enum class Provenance { Coset, Random, Concatenated, File };

const char* to_string(Provenance p);
Provenance parse_provenance(const std::string& s);

/// E(X) = L V_S X. `lvs` is always L * V_S.
struct EncodingMatrix {
  Matrix l;
  Matrix lvs;
  Provenance provenance = Provenance::File;

  std::size_t length() const { return l.rows(); }
};

EncodingMatrix make_encoder(const Instance& inst, Matrix l, Provenance provenance);

struct EcicViolation {
  std::size_t user = 0;
  /// Element of Z^(i) whose encoding is too light.
  Matrix z;
  std::size_t weight = 0;
};

/// Outcome of checking w(L V_S Z) >= 2 delta + 1 over the confusion sets.
struct EcicCertificate {
  std::size_t delta = 0;
  Metric metric = Metric::Hamming;
  bool exhaustive = true;
  /// Samples drawn per user in sampled mode.
  std::uint64_t trials = 0;
  /// Elements of Z^(i) examined, summed over users.
  std::uint64_t checked = 0;
  std::vector<EcicViolation> violations;

  bool passed() const { return violations.empty(); }
};

struct VerifyOptions {
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::size_t max_witnesses = 8;
};

/// Hamming: every z in Z^(i) at t = 1 has w_H(L V_S z) >= 2 delta + 1.
/// Rank: every Z in Z^(i) with rank Z >= 2 delta + 1 has rank(L V_S Z) >= 2 delta + 1.
/// Confusion sets beyond the budget are sampled and the certificate says so.
EcicCertificate verify_ecic(const Matrix& l, const Instance& inst, std::size_t delta,
                            Metric metric, const VerifyOptions& opts = {});

/// Length-kappa encoder from a minimum-rank coset element.
EncodingMatrix coset_encoder(const Instance& inst, std::uint64_t budget = kDefaultBudget);

struct RandomSearchResult {
  std::optional<EncodingMatrix> encoder;
  std::optional<EcicCertificate> certificate;
  std::uint64_t attempts = 0;
};

/// Uniform N x d_S draws from Rng(seed) until one passes verification.
RandomSearchResult random_ic_search(const Instance& inst, std::size_t n_len, std::size_t delta,
                                    Metric metric, std::uint64_t max_attempts,
                                    std::uint64_t seed, const VerifyOptions& opts = {});

/// L = outer * L_coset, outer an N x kappa generator (column form) of a code
/// with minimum Hamming distance >= 2 delta + 1. Throws ValidationError.
EncodingMatrix concat_kappa_bound(const Instance& inst, std::size_t delta, const Matrix& outer,
                                  std::uint64_t budget = kDefaultBudget);

/// k x N generator of an extended Reed-Solomon code: Vandermonde columns at
/// the field elements 0, 1, 2, ... in encoding order, plus the point at
/// infinity when N = q + 1. Requires k <= N <= q + 1.
Matrix extended_rs_generator(const Field& field, std::size_t n_len, std::size_t k);

/// Minimum Hamming weight of a nonzero codeword x G, G a k x N generator of
/// full row rank. Throws BudgetExceeded beyond q^k codewords.
std::size_t min_hamming_distance(const Matrix& generator, std::uint64_t budget = kDefaultBudget);

/// A k x N generator with distance >= d and N = block_length_estimate(k,d,q).upper,
/// when such a construction is known here.
std::optional<Matrix> short_code_generator(const Field& field, std::size_t k, std::size_t d);

/// Encoder JSON: {"N", "L", "provenance", "certificate"}.
std::string serialize_encoder(const EncodingMatrix& enc,
                              const std::optional<EcicCertificate>& cert = std::nullopt);
EncodingMatrix parse_encoder(std::string_view text, const Instance& inst);
EncodingMatrix load_encoder(const std::string& path, const Instance& inst);

}  // namespace iccsi
