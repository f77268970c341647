#include "doctest.h"
#include "iccsi/error.hpp"
#include "iccsi/minrank.hpp"
#include "support.hpp"

using iccsi::Field;
using iccsi::Instance;
using iccsi::Matrix;

namespace {

struct Expected {
  const char* file;
  std::size_t kappa;
  std::size_t alpha;
};

const Expected kRegressions[] = {
    {"min_rank_three.json", 3, 2},       {"min_rank_two.json", 2, 2},
    {"coded_side_info_mds.json", 3, 3},  {"alpha_equals_kappa.json", 3, 3},
    {"syndrome_walkthrough.json", 2, 2}, {"rank_walkthrough.json", 3, 3}};

/// No nonzero combination of the witness rows lies outside the confusion union.
bool witness_in_union(const Instance& inst, const Matrix& w) {
  bool ok = true;
  oracle::for_each_vector(inst.field().q(), w.rows(), [&](const oracle::Vec& c) {
    if (!ok || oracle::is_zero(c)) return;
    Matrix coeff(inst.field(), 1, w.rows());
    for (std::size_t j = 0; j < c.size(); ++j) coeff(0, j) = c[j];
    ok = iccsi::in_confusion_union(inst, (coeff * w).transpose());
  });
  return ok;
}

}  // namespace

TEST_CASE("min-rank and alpha regressions") {
  for (const auto& e : kRegressions) {
    CAPTURE(e.file);
    const Instance inst = support::load(e.file);
    const auto k = iccsi::min_rank(inst);
    CHECK(k.kappa == e.kappa);
    CHECK(k.witness.rows() == e.kappa);
    CHECK(iccsi::all_of(iccsi::realizes_ic(k.witness, inst)));
    CHECK(iccsi::min_rank_bruteforce(inst) == e.kappa);
    const auto a = iccsi::alpha(inst);
    CHECK(a.alpha == e.alpha);
    CHECK(iccsi::rank(a.witness) == e.alpha);
    CHECK(witness_in_union(inst, a.witness));
  }
}

TEST_CASE("no side information needs every packet") {
  const Field f = Field::make(3);
  const Instance inst = iccsi::from_icsi(f, 3, {0, 1, 2}, {{}, {}, {}});
  CHECK(iccsi::min_rank(inst).kappa == 3);
  CHECK(iccsi::alpha(inst).alpha == 3);
}

TEST_CASE("full side information of the others gives kappa one") {
  const Field f = Field::make(2);
  const Instance inst = iccsi::from_icsi(f, 3, {0, 1, 2}, {{1, 2}, {0, 2}, {0, 1}});
  CHECK(iccsi::min_rank(inst).kappa == 1);
  CHECK(iccsi::min_rank(inst).witness == Matrix::from_rows(f, {{1, 1, 1}}));
}

TEST_CASE("realization criteria agree with the decodability definition") {
  iccsi::Rng rng(17);
  const Field f = Field::make(2);
  const oracle::Gf g = support::gf_of(f);
  for (int trial = 0; trial < 80; ++trial) {
    const Instance inst = support::random_instance(f, rng, 4, 4);
    const Matrix l = rng.matrix(f, 1 + rng.below(inst.sender_dim()), inst.sender_dim());
    const auto flags = iccsi::realizes_ic(l, inst);
    const auto kernel = iccsi::realizes_ic_kernel(l, inst);
    const auto lvs = support::rows_of(l * inst.sender());
    const auto users = support::users_of(inst);
    for (std::size_t i = 0; i < inst.m(); ++i) {
      CHECK(flags[i] == oracle::user_decodes(g, users[i], lvs, inst.n()));
      CHECK(kernel.per_user[i] == flags[i]);
    }
  }
}

TEST_CASE("coded side information example") {
  const Instance inst = support::load("coded_side_info_mds.json");
  const Field& f = inst.field();
  const Matrix g = Matrix::from_rows(f, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}});
  const Matrix l = Matrix::from_rows(f, {{1, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}});
  CHECK_FALSE(iccsi::realizes_ic(g, inst)[0]);
  CHECK(iccsi::all_of(iccsi::realizes_ic(l, inst)));
}

TEST_CASE("alpha never exceeds kappa") {
  iccsi::Rng rng(23);
  for (const Field& f : {Field::make(2), Field::make(3)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const Instance inst = support::random_instance(f, rng, 4, 4);
      CHECK(iccsi::alpha(inst).alpha <= iccsi::min_rank(inst).kappa);
    }
  }
}

TEST_CASE("min-rank over a larger field matches exhaustive search") {
  iccsi::Rng rng(29);
  const Field f = Field::make(2, 2);
  for (int trial = 0; trial < 15; ++trial) {
    const Instance inst = support::random_instance(f, rng, 3, 3);
    CHECK(iccsi::min_rank(inst).kappa == iccsi::min_rank_bruteforce(inst));
  }
}

TEST_CASE("budget guards") {
  const Field f = Field::make(2);
  const Instance inst = support::load("alpha_equals_kappa.json");
  CHECK_THROWS_AS(iccsi::min_rank(inst, 4), iccsi::BudgetExceeded);
  CHECK_THROWS_AS(iccsi::min_rank_bruteforce(inst, 4), iccsi::BudgetExceeded);
  CHECK_THROWS_AS(iccsi::alpha(inst, 4), iccsi::BudgetExceeded);
}

TEST_CASE("sampled rank-metric alpha is a lower bound") {
  const Instance inst = support::load("syndrome_walkthrough.json").with_block_length(2);
  const auto s = iccsi::sampled_rank_alpha(inst, 0, 200, 3);
  CHECK(s.lower_bound >= 1);
  CHECK(s.attempts == 200);
}
