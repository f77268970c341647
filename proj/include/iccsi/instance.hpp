#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iccsi/counting.hpp"
#include "iccsi/error.hpp"
#include "iccsi/matrix.hpp"
#include "iccsi/rng.hpp"

namespace iccsi {

/// One receiver: its side-information space X^(i) (row basis V_i, d_i x n)
/// and its request R_i (1 x n).
struct UserSpec {
  Matrix side_info;
  Matrix request;
};

/// An index coding instance with coded side information: block length t,
/// n packets, sender space X^(S) (row basis, d_S x n) and m users.
///
/// Bases are stored in reduced row-echelon form, so two instances describing
/// the same spaces compare equal. Every request lies in the sender space and
/// outside the user's own side-information space.
class Instance {
 public:
  /// Canonicalizes every basis and validates. Throws ValidationError.
  static Instance create(Field field, std::size_t t, std::size_t n, const Matrix& sender,
                         std::vector<UserSpec> users);

  const Field& field() const { return field_; }
  std::size_t t() const { return t_; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return users_.size(); }
  const Matrix& sender() const { return sender_; }
  std::size_t sender_dim() const { return sender_.rows(); }
  const std::vector<UserSpec>& users() const { return users_; }
  const UserSpec& user(std::size_t i) const { return users_.at(i); }
  std::size_t side_dim(std::size_t i) const { return users_.at(i).side_info.rows(); }

  /// The m x n request matrix R.
  Matrix requests() const;

  /// Same spaces with a different block length.
  Instance with_block_length(std::size_t t) const;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  Instance(Field f, std::size_t t, std::size_t n, Matrix sender, std::vector<UserSpec> users)
      : field_(std::move(f)), t_(t), n_(n), sender_(std::move(sender)), users_(std::move(users)) {}

  Field field_;
  std::size_t t_;
  std::size_t n_;
  Matrix sender_;
  std::vector<UserSpec> users_;
};

bool operator==(const Instance& a, const Instance& b);

/// Parses the JSON instance format:
///   {"p":2,"e":1,"t":1,"n":4,"m":4,"sender":[[...]...],
///    "users":[{"V":[[...]...],"R":[...]}, ...], "modulus":[...]}
/// "modulus" is optional. Throws ValidationError.
Instance parse_instance(std::string_view json_text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& inst);

/// Classical index coding: sender holds every packet, user i requests packet
/// demands[i] and caches the packets in side_sets[i] (zero-based indices).
Instance from_icsi(const Field& field, std::size_t n, const std::vector<std::size_t>& demands,
                   const std::vector<std::vector<std::size_t>>& side_sets, std::size_t t = 1);

/// Canonical (RREF) basis of rowspace(u) ∩ rowspace(w).
Matrix intersection_basis(const Matrix& u, const Matrix& w);

/// Lambda_i = V_i X, the cached coded packets of a user for data X (n x t).
Matrix side_information(const Instance& inst, std::size_t i, const Matrix& data);

/// The set Z^(i) = {Z in F_q^{n x t} : V_i Z = 0, R_i Z != 0} of differences
/// between data matrices that user i cannot tell apart from its cache but
/// that disagree on its request.
///
/// Elements are streamed as K C, K a basis of ker V_i and C running over
/// F_q^{k x t} in odometer order (entry (0,0) fastest), skipping R_i K C = 0.
class ConfusionSet {
 public:
  ConfusionSet(const Matrix& side_info, const Matrix& request, std::size_t t,
               std::uint64_t budget = kDefaultBudget);
  ConfusionSet(const Instance& inst, std::size_t i, std::uint64_t budget = kDefaultBudget)
      : ConfusionSet(inst.user(i).side_info, inst.user(i).request, inst.t(), budget) {}

  /// |Z^(i)| = q^{kt} - q^{(k-1)t}, k = n - d_i.
  BigInt size() const;
  /// Whether q^{kt} fits the enumeration budget.
  bool exhaustive() const { return exhaustive_; }
  /// Columns span ker V_i (n x k).
  const Matrix& kernel() const { return kernel_; }
  std::size_t block_length() const { return t_; }

  /// Writes the next element into z; false once exhausted. Throws
  /// BudgetExceeded when the set is too large to enumerate.
  bool next(Matrix& z);
  void reset();

  /// Uniform random element.
  Matrix sample(Rng& rng) const;

 private:
  Matrix request_;
  Matrix kernel_;
  std::size_t t_;
  bool exhaustive_;
  std::vector<Elem> counter_;
  bool started_ = false;
  bool done_ = false;
};

}  // namespace iccsi
