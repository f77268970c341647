#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace iccsi {

/// Malformed input: bad field parameters, schema violations, instance
/// invariants that do not hold.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what,
                           std::optional<std::size_t> user = std::nullopt)
      : std::runtime_error(user ? "user " + std::to_string(*user) + ": " + what
                                : what),
        user_(user) {}

  /// Zero-based index of the offending user, when the error is per-user.
  std::optional<std::size_t> user() const { return user_; }

 private:
  std::optional<std::size_t> user_;
};

/// An exhaustive enumeration would exceed the configured element budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default cap on exhaustively enumerated elements (2^22).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 22;

}  // namespace iccsi
