#include "doctest.h"
#include "iccsi/counting.hpp"
#include "support.hpp"

using iccsi::BigInt;
using iccsi::Rational;

TEST_CASE("Gaussian binomials count subspaces") {
  for (unsigned q : {2u, 3u}) {
    const oracle::Gf g(q, 1, {0, 1});
    const std::size_t s_max = q == 2 ? 4 : 3;
    for (std::size_t s = 1; s <= s_max; ++s)
      for (std::size_t k = 0; k <= s; ++k) {
        CAPTURE(s);
        CAPTURE(k);
        CHECK(iccsi::gaussian_binomial(s, k, q) == BigInt(oracle::subspaces(g, s, k).size()));
      }
  }
  CHECK(iccsi::gaussian_binomial(10, 1, 4) == BigInt(349525));
  CHECK(iccsi::gaussian_binomial(3, 4, 2) == 0);
}

TEST_CASE("sphere volumes by enumeration") {
  const oracle::Gf g(3, 1, {0, 1});
  for (std::size_t r = 0; r <= 4; ++r) {
    std::size_t count = 0;
    oracle::for_each_vector(3, 4, [&](const oracle::Vec& v) { count += oracle::hamming_weight(v) <= r; });
    CHECK(iccsi::sphere_vol_hamming(4, r, 3) == BigInt(count));
  }
  const oracle::Gf g2(2, 1, {0, 1});
  for (std::size_t r = 0; r <= 2; ++r) {
    std::size_t count = 0;
    oracle::any_matrix(2, 3, 2, [&](const oracle::Mat& m) {
      count += oracle::matrix_rank(g2, m) <= r;
      return false;
    });
    CHECK(iccsi::sphere_vol_rank(3, 2, r, 2) == BigInt(count));
  }
}

TEST_CASE("integer helpers") {
  CHECK(iccsi::binomial(10, 3) == 120);
  CHECK(iccsi::binomial(3, 5) == 0);
  CHECK(iccsi::big_pow(4, 20) == BigInt(1099511627776ULL));
  CHECK(iccsi::independent_tuples(3, 2, 2) == BigInt(42));
  CHECK(iccsi::independent_tuples(2, 3, 2) == 0);
}

TEST_CASE("decimal rendering") {
  CHECK(iccsi::to_decimal(Rational(1, 1024), 4) == "0.0009766");
  CHECK(iccsi::to_decimal(Rational(1, 2), 4) == "0.5000");
  CHECK(iccsi::to_decimal(Rational(0), 4) == "0");
  CHECK(iccsi::to_scientific(Rational(1, 1048576), 4) == "9.537e-07");
  CHECK(iccsi::to_decimal(Rational(-3), 4) == "-3.000");
  CHECK(iccsi::decimal_exponent(Rational(1, 1024)) == -4);
  CHECK(iccsi::to_double(Rational(3, 4)) == doctest::Approx(0.75));
}
