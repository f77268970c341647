#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace iccsi {

/// Field element. Encodes a polynomial over F_p in base p, little-endian
/// (digit j is the coefficient of x^j). 0 and 1 are the identities.
using Elem = std::uint32_t;

namespace detail {
struct FieldTables;
}

/// The finite field F_q, q = p^e <= 2^16, with a fixed monic irreducible
/// modulus. Arithmetic goes through precomputed log/antilog tables.
///
/// Copies share the tables; a Field is immutable once built.
class Field {
 public:
  /// Field with the canonical modulus: x^2+x+1 (F_4), x^3+x+1 (F_8),
  /// x^2+1 (F_9), x^4+x+1 (F_16); otherwise the smallest monic irreducible
  /// polynomial of degree e in integer-encoding order.
  /// Throws ValidationError on non-prime p, e < 1 or q > 2^16.
  static Field make(unsigned p, unsigned e = 1);

  /// Field with an explicit modulus (little-endian coefficients, degree e,
  /// monic). The modulus is checked for irreducibility.
  static Field make(unsigned p, unsigned e, const std::vector<unsigned>& modulus);

  unsigned p() const;
  unsigned e() const;
  Elem q() const;
  /// Little-endian coefficients of the modulus (length e+1). For e = 1 this
  /// is x, i.e. {0, 1}.
  const std::vector<unsigned>& modulus() const;
  /// A generator of the multiplicative group.
  Elem primitive() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  /// Multiplicative inverse. Precondition: a != 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  bool contains(std::uint64_t v) const { return v < q(); }

  friend bool operator==(const Field& a, const Field& b);

 private:
  explicit Field(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}
  std::shared_ptr<const detail::FieldTables> t_;
};

bool operator==(const Field& a, const Field& b);

/// Trial-division primality test.
bool is_prime(std::uint64_t n);

/// Irreducibility of a monic polynomial over F_p (little-endian coefficients),
/// by trial division against every monic polynomial of degree <= deg/2.
bool is_irreducible(const std::vector<unsigned>& poly, unsigned p);

}  // namespace iccsi
