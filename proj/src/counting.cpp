#include "iccsi/counting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace iccsi {

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;
  }
  return r;
}

BigInt independent_tuples(std::uint64_t s, std::uint64_t r, std::uint64_t q) {
  if (r > s) return 0;
  const BigInt qs = big_pow(q, s);
  BigInt prod = 1;
  BigInt qj = 1;
  for (std::uint64_t j = 0; j < r; ++j) {
    prod *= qs - qj;
    qj *= q;
  }
  return prod;
}

BigInt gaussian_binomial(std::uint64_t s, std::uint64_t r, std::uint64_t q) {
  if (s < r) return 0;
  return independent_tuples(s, r, q) / independent_tuples(r, r, q);
}

BigInt sphere_vol_hamming(std::uint64_t length, std::uint64_t radius, std::uint64_t q) {
  if (radius > length) radius = length;
  BigInt total = 0;
  for (std::uint64_t j = 0; j <= radius; ++j) total += binomial(length, j) * big_pow(q - 1, j);
  return total;
}

BigInt sphere_vol_rank(std::uint64_t rows, std::uint64_t cols, std::uint64_t radius,
                       std::uint64_t q) {
  radius = std::min({radius, rows, cols});
  BigInt total = 0;
  for (std::uint64_t r = 0; r <= radius; ++r)
    total += independent_tuples(rows, r, q) * gaussian_binomial(cols, r, q);
  return total;
}

long decimal_exponent(const Rational& v) {
  BigInt num = abs(numerator(v));
  BigInt den = denominator(v);
  if (num == 0) throw std::domain_error("decimal_exponent of zero");
  long k = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
  // Adjust so that 10^k <= num/den < 10^(k+1).
  auto ge_pow = [&](long e) {
    return e >= 0 ? num >= den * big_pow(10, e) : num * big_pow(10, -e) >= den;
  };
  while (!ge_pow(k)) --k;
  while (ge_pow(k + 1)) ++k;
  return k;
}

namespace {

// round(|v| * 10^shift), half-up.
BigInt scaled_round(const Rational& v, long shift) {
  BigInt num = abs(numerator(v));
  BigInt den = denominator(v);
  if (shift >= 0)
    num *= big_pow(10, shift);
  else
    den *= big_pow(10, -shift);
  BigInt q = num / den;
  BigInt rem = num - q * den;
  if (2 * rem >= den) ++q;
  return q;
}

}  // namespace

std::string to_scientific(const Rational& v, int sig) {
  if (sig < 1) throw std::invalid_argument("significant figures must be >= 1");
  if (v == 0) {
    std::string s = "0";
    if (sig > 1) s += "." + std::string(sig - 1, '0');
    return s + "e+00";
  }
  long k = decimal_exponent(v);
  BigInt mant = scaled_round(v, sig - 1 - k);
  if (mant.str().size() > static_cast<std::size_t>(sig)) {  // rounded up to 10^sig
    ++k;
    mant = scaled_round(v, sig - 1 - k);
  }
  std::string digits = mant.str();
  std::ostringstream os;
  if (v < 0) os << '-';
  os << digits[0];
  if (sig > 1) os << '.' << digits.substr(1);
  os << 'e' << (k < 0 ? '-' : '+');
  const long ak = k < 0 ? -k : k;
  if (ak < 10) os << '0';
  os << ak;
  return os.str();
}

std::string to_decimal(const Rational& v, int sig) {
  if (v == 0) return "0";
  const long k = decimal_exponent(v);
  if (k < -4 || k >= 6) return to_scientific(v, sig);
  long decimals = sig - 1 - k;
  if (decimals < 0) decimals = 0;
  BigInt scaled = scaled_round(v, decimals);
  std::string digits = scaled.str();
  if (static_cast<long>(digits.size()) <= decimals)
    digits = std::string(decimals - digits.size() + 1, '0') + digits;
  std::string out = v < 0 ? "-" : "";
  if (decimals == 0) return out + digits;
  out += digits.substr(0, digits.size() - decimals) + "." + digits.substr(digits.size() - decimals);
  return out;
}

double to_double(const Rational& v) {
  if (v == 0) return 0.0;
  // Direct conversion loses range for huge numerators/denominators; go
  // through the decimal exponent instead.
  const long k = decimal_exponent(v);
  const BigInt mant = scaled_round(v, 17 - k);
  const double m = mant.convert_to<double>();
  const double r = m * std::pow(10.0, static_cast<double>(k - 17));
  return v < 0 ? -r : r;
}

}  // namespace iccsi
