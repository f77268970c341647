#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "iccsi/instance.hpp"
#include "iccsi/matrix.hpp"

namespace iccsi {

/// Change of basis for one receiver: V M = [I | 0] and R M = e_{d+1}, with
/// M invertible. X' = M^{-1} X then has X'_{[d]} = V X and X'_{d+1} = R X.
struct UserTransform {
  /// The basis V (d x n) the receiver's cache was computed with.
  Matrix side_info;
  Matrix request;
  Matrix m;
  Matrix m_inv;

  std::size_t d() const { return side_info.rows(); }

  /// M = [A | B], A the canonical right inverse of [V; R], B a kernel basis.
  static UserTransform build(const Matrix& side_info, const Matrix& request);
  static UserTransform build(const Instance& inst, std::size_t i);
  /// Accepts any M meeting the identities; throws ValidationError otherwise.
  static UserTransform from_explicit(const Matrix& side_info, const Matrix& request,
                                     const Matrix& m);
};

/// Parity data of one receiver for the encoder L V_S. With L' = L V_S M,
/// C_(i) is spanned by the columns of L' after column d+1 and C^(i) adds
/// column d+1. H_(i) = [h; H^(i)] checks C_(i); H^(i) checks C^(i); and
/// h L'^{d+1} = s != 0.
struct ParityData {
  Matrix l_prime;
  Matrix h;
  Matrix h_upper;
  Elem s = 1;

  Matrix parity() const { return vstack(h, h_upper); }

  /// Canonical h solves h [L'^{d+1} | trailing] = [1, 0, ..., 0], so s = 1.
  /// Throws std::logic_error when L'^{d+1} lies in C_(i) (L does not realize
  /// the instance for this user).
  static ParityData build(const Matrix& lvs, const UserTransform& ut);
  /// Explicit H_(i) (first row h); checked against the defining identities.
  static ParityData from_explicit(const Matrix& lvs, const UserTransform& ut, const Matrix& parity);
};

enum class DecodeFailure { None, SyndromeNotFound, TrapFailureDetected, UndetectedRiskFlag };

const char* to_string(DecodeFailure f);

struct SyndromeOutcome {
  /// R_i X (1 x t) on success.
  std::optional<Matrix> demand;
  DecodeFailure failure = DecodeFailure::None;
  Matrix alpha;
  Matrix beta;
  Matrix epsilon;
};

/// Steps I-III. `received` is N x t, `cache` is V X (d x t) for the basis in
/// `ut`. Step II takes the first epsilon with at most `delta` nonzero rows,
/// scanning supports by size and then by increasing 0/1 indicator vector
/// (first coordinate most significant).
SyndromeOutcome syndrome_decode(const ParityData& pd, const UserTransform& ut,
                                const Matrix& received, const Matrix& cache, std::size_t delta);

struct TrapLayout {
  std::size_t v = 0;
  std::size_t n_len = 0;
  std::size_t ell = 0;
};

struct TrapOutcome {
  /// Recovered N x ell payload.
  std::optional<Matrix> payload;
  Matrix t;
  DecodeFailure failure = DecodeFailure::None;
  /// rank(W_11) = v: an escaping error could go unnoticed.
  bool saturated = false;
};

/// Error trapping on a (v+N) x (v+ell) received matrix whose top v rows and
/// left v columns carry zeros before the error.
TrapOutcome rank_trap_decode(const Matrix& received, const TrapLayout& layout);

/// R_i X from the RREF [S | T] of [V | cache; LV_S | Y] by solving Z S = R_i;
/// nullopt when R_i is outside rowspace([V; LV_S]).
std::optional<Matrix> solve_demand(const Matrix& side_info, const Matrix& request,
                                   const Matrix& cache, const Matrix& lvs, const Matrix& received);
std::optional<Matrix> solve_demand(const Instance& inst, std::size_t i, const Matrix& lvs,
                                   const Matrix& received, const Matrix& cache);

/// Broadcast frame. Little-endian layout:
///   "ICC1", u32 p, u32 e, u32 v, u32 N, u32 ell, u32 flags,
///   then the (v+N) x (v+ell) matrix row-major, each entry as e base-p digits
///   (least significant first), every digit in bit_width(p-1) bits packed
///   LSB-first, zero-padded to a byte.
/// flags bit 0: L V_S is known to receivers (payload is L V_S X); otherwise
/// the payload is [L | L V_S X] and ell = d_S + t.
struct Frame {
  Matrix matrix;
  TrapLayout layout;
  bool lvs_shared = true;
};

/// Embeds an N x ell payload below and right of a v-wide zero pad.
Frame make_frame(const Matrix& payload, std::size_t v, bool lvs_shared);
std::string encode_frame(const Frame& frame);
/// Throws ValidationError on malformed input or a field mismatch.
Frame decode_frame(std::string_view bytes, const Field& field);

}  // namespace iccsi
