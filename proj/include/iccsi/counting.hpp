#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace iccsi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt big_pow(std::uint64_t base, std::uint64_t exp);

/// C(n, k); 0 when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// prod_{j=0}^{r-1} (q^s - q^j): the number of ordered r-tuples of linearly
/// independent vectors in F_q^s (0 when r > s).
BigInt independent_tuples(std::uint64_t s, std::uint64_t r, std::uint64_t q);

/// Number of r-dimensional subspaces of F_q^s; 0 when s < r.
BigInt gaussian_binomial(std::uint64_t s, std::uint64_t r, std::uint64_t q);

/// |{x in F_q^N : w_H(x) <= r}|.
BigInt sphere_vol_hamming(std::uint64_t length, std::uint64_t radius, std::uint64_t q);

/// |{X in F_q^{N x t} : rank X <= s}|.
BigInt sphere_vol_rank(std::uint64_t rows, std::uint64_t cols, std::uint64_t radius,
                       std::uint64_t q);

/// Decimal rendering with `sig` significant figures, rounded half-up,
/// e.g. "9.537e-07" or "0.5000". Exact for any magnitude.
std::string to_scientific(const Rational& v, int sig);

/// Fixed-point rendering when 1e-4 <= |v| < 1e6, scientific otherwise.
std::string to_decimal(const Rational& v, int sig);

double to_double(const Rational& v);

/// floor(log10 |v|) for v != 0.
long decimal_exponent(const Rational& v);

}  // namespace iccsi
