#include "doctest.h"
#include "iccsi/bounds.hpp"
#include "iccsi/codec.hpp"
#include "iccsi/error.hpp"
#include "iccsi/minrank.hpp"
#include "support.hpp"

using iccsi::Field;
using iccsi::Matrix;
using iccsi::Metric;

namespace {

Matrix walkthrough_encoder(const Field& f) {
  return Matrix::from_rows(f, {{1, 0, 1, 0}, {0, 1, 1, 1}, {1, 1, 0, 0}, {1, 1, 1, 0}, {0, 0, 1, 0}});
}

}  // namespace

TEST_CASE("walkthrough encoder corrects one error") {
  const auto inst = support::load("syndrome_walkthrough.json");
  const Matrix l = walkthrough_encoder(inst.field());
  const auto one = iccsi::verify_ecic(l, inst, 1, Metric::Hamming);
  CHECK(one.passed());
  CHECK(one.exhaustive);
  CHECK(one.checked == 8);
  const auto two = iccsi::verify_ecic(l, inst, 2, Metric::Hamming);
  CHECK_FALSE(two.passed());
  REQUIRE_FALSE(two.violations.empty());
  CHECK(two.violations.front().weight < 5);
}

TEST_CASE("ECIC verification agrees with ball disjointness") {
  iccsi::Rng rng(31);
  const Field f = Field::make(2);
  const oracle::Gf g = support::gf_of(f);
  int passes = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = support::random_instance(f, rng, 3, 3);
    const Matrix l = rng.matrix(f, 2 + rng.below(4), inst.sender_dim());
    const auto lvs = support::rows_of(l * inst.sender());
    for (std::size_t delta : {0u, 1u}) {
      const bool got = iccsi::verify_ecic(l, inst, delta, Metric::Hamming).passed();
      CHECK(got == oracle::balls_disjoint(g, support::users_of(inst), lvs, inst.n(), delta));
      passes += got;
    }
  }
  CHECK(passes > 0);
}

TEST_CASE("coset and concatenated encoders") {
  const auto inst = support::load("syndrome_walkthrough.json");
  const auto coset = iccsi::coset_encoder(inst);
  CHECK(coset.length() == 2);
  CHECK(coset.provenance == iccsi::Provenance::Coset);
  CHECK(iccsi::verify_ecic(coset.l, inst, 0, Metric::Hamming).passed());

  const auto outer = iccsi::short_code_generator(inst.field(), 2, 3);
  REQUIRE(outer);
  const auto concat = iccsi::concat_kappa_bound(inst, 1, outer->transpose());
  CHECK(concat.length() == 5);
  CHECK(iccsi::verify_ecic(concat.l, inst, 1, Metric::Hamming).passed());

  CHECK_THROWS_AS(iccsi::concat_kappa_bound(inst, 1, Matrix::identity(inst.field(), 3)),
                  iccsi::ValidationError);
  CHECK_THROWS_AS(iccsi::concat_kappa_bound(inst, 2, outer->transpose()), iccsi::ValidationError);
}

TEST_CASE("short codes reach their distance") {
  for (unsigned q : {2u, 4u, 8u}) {
    const Field f = q == 2 ? Field::make(2) : Field::make(2, q == 4 ? 2 : 3);
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t d = 1; d <= 5; ++d) {
        const auto g = iccsi::short_code_generator(f, k, d);
        const auto est = iccsi::block_length_estimate(k, d, q);
        CHECK(bool(g) == bool(est.upper));
        if (!g) continue;
        CAPTURE(q);
        CAPTURE(k);
        CAPTURE(d);
        CHECK(g->rows() == k);
        CHECK(g->cols() == *est.upper);
        CHECK(iccsi::min_hamming_distance(*g) >= d);
      }
  }
}

TEST_CASE("extended Reed-Solomon codes are MDS") {
  const Field f = Field::make(2, 2);
  for (std::size_t n_len = 2; n_len <= 5; ++n_len)
    for (std::size_t k = 1; k <= n_len; ++k)
      CHECK(iccsi::min_hamming_distance(iccsi::extended_rs_generator(f, n_len, k)) == n_len - k + 1);
  CHECK_THROWS(iccsi::extended_rs_generator(f, 6, 2));
}

TEST_CASE("random search") {
  const auto inst = support::load("syndrome_walkthrough.json");
  const auto none = iccsi::random_ic_search(inst, 0, 0, Metric::Hamming, 10, 1);
  CHECK_FALSE(none.encoder);
  const auto a = iccsi::random_ic_search(inst, 5, 1, Metric::Hamming, 5000, 9);
  REQUIRE(a.encoder);
  CHECK(a.certificate->passed());
  const auto b = iccsi::random_ic_search(inst, 5, 1, Metric::Hamming, 5000, 9);
  CHECK(b.encoder->l == a.encoder->l);
  CHECK(b.attempts == a.attempts);
  const auto c = iccsi::random_ic_search(inst, 1, 0, Metric::Hamming, 50, 9);
  CHECK_FALSE(c.encoder);
  CHECK(c.attempts == 50);
}

TEST_CASE("rank-metric verification only checks high-rank differences") {
  const auto inst = support::load("rank_walkthrough.json").with_block_length(3);
  const Matrix l = Matrix::identity(inst.field(), 4);
  const auto cert = iccsi::verify_ecic(l, inst, 1, Metric::Rank);
  CHECK(cert.passed());
  CHECK(cert.checked > 0);
  // ker L = <1111> meets no {x : x_j = 0}; ker L = <0011> does.
  const Matrix wide = Matrix::from_rows(inst.field(), {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});
  CHECK(iccsi::verify_ecic(wide, inst, 1, Metric::Rank).passed());
  const Matrix short_l = Matrix::from_rows(inst.field(), {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}});
  CHECK_FALSE(iccsi::verify_ecic(short_l, inst, 1, Metric::Rank).passed());
}

TEST_CASE("encoder JSON") {
  const auto inst = support::load("syndrome_walkthrough.json");
  const auto enc = iccsi::make_encoder(inst, walkthrough_encoder(inst.field()), iccsi::Provenance::File);
  const auto cert = iccsi::verify_ecic(enc.l, inst, 1, Metric::Hamming);
  const auto back = iccsi::parse_encoder(iccsi::serialize_encoder(enc, cert), inst);
  CHECK(back.l == enc.l);
  CHECK(back.lvs == enc.lvs);
  CHECK(back.provenance == iccsi::Provenance::File);
  CHECK(iccsi::serialize_encoder(enc, cert).find("\"passed\":true") != std::string::npos);

  CHECK_THROWS_AS(iccsi::parse_encoder(R"({"L":[[1,0,1]]})", inst), iccsi::ValidationError);
  CHECK_THROWS_AS(iccsi::parse_encoder(R"({"N":2,"L":[[1,0,1,0]]})", inst), iccsi::ValidationError);
  CHECK_THROWS_AS(iccsi::parse_encoder("[", inst), iccsi::ValidationError);
  CHECK_THROWS_AS(iccsi::parse_encoder(R"({"L":[[1,0,1,0]],"provenance":"magic"})", inst),
                  iccsi::ValidationError);
}
