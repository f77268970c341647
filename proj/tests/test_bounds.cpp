#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "iccsi/bounds.hpp"
#include "support.hpp"

using iccsi::BigInt;
using iccsi::Rational;

TEST_CASE("uniform matrix bound") {
  const auto r = iccsi::zippel_ic_prob(4, 2, 1, 10);
  CHECK(r.value == Rational(1, 1024));
  CHECK(r.decimal == "0.0009766");
  CHECK(r.verdict == true);
  CHECK(r.warning.empty());

  const auto none = iccsi::zippel_ic_prob(4, 4, 1, 10);
  CHECK(none.value == 0);
  CHECK_FALSE(none.verdict);
  CHECK_FALSE(none.warning.empty());
}

TEST_CASE("subspace avoidance count agrees with enumeration") {
  const oracle::Gf g(2, 1, {0, 1});
  constexpr std::size_t s = 4;
  auto unit_span = [&](std::size_t k) {
    oracle::Mat rows;
    for (std::size_t j = 0; j < k; ++j) {
      oracle::Vec v(s, 0);
      v[j] = 1;
      rows.push_back(v);
    }
    return oracle::span(g, rows, s);
  };
  for (std::size_t ell = 0; ell <= s; ++ell)
    for (std::size_t w = 0; w <= ell; ++w)
      for (std::size_t n_len = 0; n_len <= s; ++n_len) {
        const auto v = unit_span(ell), wsp = unit_span(w);
        std::size_t count = 0;
        for (const auto& u : oracle::subspaces(g, s, n_len)) {
          bool ok = true;
          for (const auto& x : u)
            if (v.count(x) && !wsp.count(x)) ok = false;
          count += ok;
        }
        CAPTURE(ell);
        CAPTURE(w);
        CAPTURE(n_len);
        CHECK(iccsi::subspace_avoid_count(w, ell, s, n_len, 2) == BigInt(count));
      }
}

TEST_CASE("uniform subspace bound") {
  CHECK(iccsi::subspace_existence_prob(std::vector<std::size_t>(6, 2), 4, 3, 2).decimal == "0.2000");
  CHECK(iccsi::subspace_existence_prob(std::vector<std::size_t>(2, 9), 10, 1, 4).value ==
        Rational(174763, 349525));
  // The whole sender space always works.
  const auto full = iccsi::subspace_existence_prob({3, 2, 4, 1}, 5, 5, 3);
  CHECK(full.value == 1);
}

TEST_CASE("Hamming random ECIC bound keeps its negative raw value") {
  const auto r = iccsi::hamming_random_ecic_prob({2, 2, 2, 2}, 4, 5, 1, 2, 4);
  CHECK(r.raw == -3);
  CHECK(r.value == 0);
  CHECK(r.verdict == false);
  const auto big = iccsi::hamming_random_ecic_prob({9, 9}, 10, 12, 1, 4, 2);
  CHECK(big.value > 0);
  CHECK(big.verdict == true);
}

TEST_CASE("entropy bounds") {
  const auto c = iccsi::entropy_sphere_check(10, Rational(3, 10), 2);
  CHECK(c.volume == 176);
  CHECK(c.entropy_bound == doctest::Approx(std::pow(2.0, 10 * iccsi::q_entropy(0.3, 2))));
  CHECK(c.holds);
  CHECK(iccsi::q_entropy(0.5, 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(iccsi::q_entropy(0.0, 2), std::domain_error);
  const auto e = iccsi::entropy_ecic_prob({9, 9}, 10, 20, Rational(1, 10), 4);
  const auto h = iccsi::hamming_random_ecic_prob({9, 9}, 10, 20, 1, 4, 2);
  CHECK(iccsi::to_double(e.raw) <= iccsi::to_double(h.raw) + 1e-12);
}

TEST_CASE("block length estimates never fabricate") {
  auto est = iccsi::block_length_estimate(3, 1, 2);
  CHECK(est.exact());
  CHECK(est.lower == 3);
  est = iccsi::block_length_estimate(1, 5, 2);
  CHECK(est.exact());
  CHECK(est.lower == 5);
  est = iccsi::block_length_estimate(2, 3, 2);
  CHECK(est.exact());
  CHECK(est.lower == 5);
  est = iccsi::block_length_estimate(3, 3, 2);
  CHECK(est.exact());
  CHECK(est.lower == 6);
  est = iccsi::block_length_estimate(4, 3, 2);
  CHECK(est.lower == 7);
  CHECK_FALSE(est.upper);
  est = iccsi::block_length_estimate(2, 3, 4);
  CHECK(est.lower == 4);
  CHECK(est.upper == 4u);

  const auto b = iccsi::alpha_kappa_bracket(2, 3, 1, 2);
  CHECK(b.lower == 5);
  CHECK(b.upper == 6u);
  CHECK_FALSE(b.exact());
  CHECK(iccsi::alpha_kappa_bracket(3, 3, 1, 2).exact());
  CHECK(iccsi::singleton_lb(3, 1) == 5);
}

TEST_CASE("rank-metric counts agree with enumeration") {
  const oracle::Gf g(2, 1, {0, 1});
  struct Case { std::size_t n, d, t, delta; };
  for (const auto c : {Case{4, 2, 2, 0}, Case{4, 1, 3, 1}, Case{3, 1, 2, 0}, Case{4, 0, 3, 1}}) {
    std::size_t count = 0;
    oracle::any_matrix(2, c.n, c.t, [&](const oracle::Mat& z) {
      bool in_kernel = true;
      for (std::size_t r = 0; r < c.d; ++r) in_kernel &= oracle::is_zero(z[r]);
      if (in_kernel && !oracle::is_zero(z[c.d]) && oracle::matrix_rank(g, z) >= 2 * c.delta + 1) ++count;
      return false;
    });
    CAPTURE(c.n);
    CAPTURE(c.d);
    CHECK(iccsi::z_delta_size(c.n, c.d, c.t, c.delta, 2) == BigInt(count));
  }
  CHECK(iccsi::hom_count(7, 2, 1, 2) == 21);
}

TEST_CASE("rank-metric existence") {
  const std::vector<std::size_t> dims239(239, 11), dims240(240, 11);
  CHECK(iccsi::rank_random_ecic_prob(dims239, 20, 16, 6, 1, 16).verdict == true);
  CHECK(iccsi::rank_random_ecic_prob(dims240, 20, 16, 6, 1, 16).verdict == false);
  CHECK(iccsi::rank_kappa_corollary(1, 1, 1, 2));
  CHECK_FALSE(iccsi::rank_kappa_corollary(2, 1, 1, 2));
  CHECK(iccsi::rank_kappa_corollary(9, 2, 1, 8));
  CHECK_FALSE(iccsi::rank_kappa_corollary(10, 2, 1, 8));
  CHECK(iccsi::rank_singleton(4, 3, 1, 2).value == 4);
  CHECK(iccsi::rank_singleton(4, 3, 1, 5).value == 4);
  CHECK(iccsi::rank_singleton(7, 2, 0, 9).value == 4);
}

TEST_CASE("equivalence classes") {
  const auto inst = support::load("syndrome_walkthrough.json");
  const auto c0 = iccsi::equiv_counts(inst, 0);
  CHECK(c0.m_prime == 4);
  CHECK(c0.m_dprime == 4);
  CHECK(c0.m_tprime == 4);
  CHECK(iccsi::equiv_counts(inst, 1).m_tprime == 1);
  CHECK(iccsi::z_class_dims(inst) == std::vector<std::size_t>{2, 2, 2, 2});
  CHECK(iccsi::z_delta_class_dims(inst, 1).empty());
  CHECK(iccsi::intersection_dims(inst) == std::vector<std::size_t>{2, 2, 2, 2});

  const auto shared = iccsi::from_icsi(iccsi::Field::make(2), 3, {0, 1}, {{2}, {2}});
  const auto cs = iccsi::equiv_counts(shared, 0);
  CHECK(cs.m_prime == 1);
  CHECK(cs.m_dprime == 2);
}
