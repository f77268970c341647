#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "iccsi/bounds.hpp"
#include "iccsi/codec.hpp"
#include "iccsi/decoders.hpp"
#include "iccsi/instance.hpp"

namespace iccsi {

enum class ErrorModel { Hamming, Rank };

struct SimConfig {
  /// Decoder design radius (syndrome decoder).
  std::size_t delta = 0;
  ErrorModel model = ErrorModel::Hamming;
  /// Exact injected magnitude: Hamming weight, or rank of W.
  std::size_t magnitude = 0;
  /// Trap pad v (rank model only).
  std::size_t pad = 0;
  /// Rank model: receivers know L V_S in advance.
  bool lvs_shared = true;
  /// Refuse encoders that do not certify `delta` under Hamming errors.
  bool require_certificate = false;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
};

struct UserTally {
  std::uint64_t success = 0;
  std::uint64_t detected = 0;
  std::uint64_t undetected = 0;
  /// Rank model: trap accepted but returned a wrong payload.
  std::uint64_t trap_undetected = 0;
};

struct Interval {
  double lo = 0;
  double hi = 1;
};

/// Wilson score interval at z standard deviations.
Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z = 1.96);

struct SimReport {
  SimConfig config;
  std::size_t code_length = 0;
  std::vector<UserTally> users;
  double wall_seconds = 0;
};

/// Per trial (stream Rng::stream(seed, trial)): uniform X, caches V_i X, one
/// independent error per user, decode at every user, tally. Deterministic in
/// (instance, encoder, config). Throws ValidationError on inconsistent config.
SimReport run_simulation(const Instance& inst, const EncodingMatrix& enc, const SimConfig& cfg);

/// Exact-weight Hamming error: uniform support, uniform nonzero rows.
Matrix hamming_error(const Field& f, std::size_t rows, std::size_t cols, std::size_t weight, Rng& rng);
/// A B with A rows x r and B r x cols uniform, redrawn until rank is exactly r.
Matrix rank_error(const Field& f, std::size_t rows, std::size_t cols, std::size_t r, Rng& rng);

std::string report_csv(const SimReport& r);
/// Timing is left out unless requested so reports compare byte-for-byte.
std::string report_json(const SimReport& r, bool include_timing = false);

/// Coset encoder of length kappa under the shortest outer code known here
/// with distance 2 delta + 1. Throws ValidationError when none is known.
EncodingMatrix concatenated_encoder(const Instance& inst, std::size_t delta,
                                    std::uint64_t budget = kDefaultBudget);

struct UserDecode {
  std::optional<Matrix> demand;
  DecodeFailure failure = DecodeFailure::None;
  bool saturated = false;
};

/// One-shot decode of a received frame at user i. Rank metric, a nonzero pad
/// or an unshared L V_S selects error trapping followed by solve_demand; a
/// trapped payload that leaves R_i undetermined is reported as a trap
/// failure. Otherwise the Hamming path runs syndrome decoding (delta > 0) or
/// solve_demand directly. `lvs` is required whenever the frame shares it.
UserDecode decode_user(const Instance& inst, std::size_t i, const Frame& frame,
                       const std::optional<Matrix>& lvs, const Matrix& cache, Metric metric,
                       std::size_t delta);

/// One evaluated bound with the parameters it was evaluated at.
struct BoundRow {
  BoundReport report;
  std::uint64_t q = 0;
  std::uint64_t t = 1;
  std::uint64_t n = 0;
  std::uint64_t n_len = 0;
  std::uint64_t delta = 0;
  std::uint64_t m = 0;
};

enum class BoundTable {
  /// d_S = n = 10 over F_4, N = 10 - d: uniform matrix and uniform subspace
  /// bounds side by side, one row pair per (N, d, m).
  IcExistenceByUsers,
  /// Uniform subspace bound at d = 11 - N and the largest m it certifies.
  IcExistenceMaxUsers,
  /// Rank-metric ECIC existence verdicts at n = 20, q = 16.
  RankEcicExistence,
};

std::vector<BoundRow> bound_table(BoundTable table);

/// Every bound that applies to `inst` at length N and radius delta.
std::vector<BoundRow> instance_bounds(const Instance& inst, std::size_t n_len, std::size_t delta);

/// Columns name,q,t,n,N,delta,m,value,verdict; value at `sig` significant figures.
std::string bound_rows_csv(const std::vector<BoundRow>& rows, int sig = 4);
std::string bound_rows_json(const std::vector<BoundRow>& rows, int sig = 4);

}  // namespace iccsi
