#include "iccsi/minrank.hpp"

#include <algorithm>
#include <functional>

namespace iccsi {

std::vector<bool> realizes_ic(const Matrix& encoder, const Instance& inst) {
  if (encoder.cols() != inst.sender_dim())
    throw std::invalid_argument("encoder must have d_S columns");
  const Matrix lvs = encoder * inst.sender();
  std::vector<bool> flags(inst.m());
  for (std::size_t i = 0; i < inst.m(); ++i)
    flags[i] = in_row_space(vstack(inst.user(i).side_info, lvs), inst.user(i).request);
  return flags;
}

bool all_of(const std::vector<bool>& flags) {
  return std::all_of(flags.begin(), flags.end(), [](bool b) { return b; });
}

KernelCheck realizes_ic_kernel(const Matrix& encoder, const Instance& inst, std::uint64_t budget,
                               std::uint64_t samples, std::uint64_t seed) {
  if (encoder.cols() != inst.sender_dim())
    throw std::invalid_argument("encoder must have d_S columns");
  const Matrix lvs = encoder * inst.sender();
  KernelCheck out;
  out.per_user.assign(inst.m(), true);
  for (std::size_t i = 0; i < inst.m(); ++i) {
    ConfusionSet zs(inst.user(i).side_info, inst.user(i).request, 1, budget);
    if (zs.exhaustive()) {
      Matrix z(inst.field(), 0, 0);
      while (zs.next(z))
        if ((lvs * z).is_zero()) {
          out.per_user[i] = false;
          break;
        }
    } else {
      out.exhaustive = false;
      out.samples_per_user = samples;
      Rng rng = Rng::stream(seed, i);
      for (std::uint64_t s = 0; s < samples; ++s)
        if ((lvs * zs.sample(rng)).is_zero()) {
          out.per_user[i] = false;
          break;
        }
    }
  }
  return out;
}

MinRankResult min_rank(const Instance& inst, std::uint64_t budget, std::size_t lower_bound) {
  const Field& f = inst.field();
  const std::size_t m = inst.m();
  std::vector<Matrix> bases;
  std::size_t total_dim = 0;
  for (std::size_t i = 0; i < m; ++i) {
    bases.push_back(intersection_basis(inst.user(i).side_info, inst.sender()));
    total_dim += bases.back().rows();
  }
  MinRankResult res;
  res.coset_size = big_pow(f.q(), total_dim);
  if (m == 0) {
    res.witness = Matrix(f, 0, inst.sender_dim());
    return res;
  }
  if (res.coset_size > budget) throw BudgetExceeded("min-rank coset exceeds the enumeration budget");

  const Matrix r = inst.requests();
  const std::size_t target = std::max<std::size_t>(1, lower_bound);
  std::vector<Elem> digits(total_dim, 0);
  Matrix current = r;
  Matrix best = r;
  std::size_t best_rank = rank(r);
  res.scanned = 1;

  auto rebuild_row = [&](std::size_t i, std::size_t offset) {
    auto row = current.row_span(i);
    const auto req = r.row_span(i);
    std::copy(req.begin(), req.end(), row.begin());
    for (std::size_t k = 0; k < bases[i].rows(); ++k) {
      const Elem c = digits[offset + k];
      if (c == 0) continue;
      const auto b = bases[i].row_span(k);
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = f.add(row[j], f.mul(c, b[j]));
    }
  };

  while (best_rank > target) {
    // Odometer step: lowest user, lowest coefficient fastest.
    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < f.q()) break;
      digits[pos++] = 0;
    }
    if (pos == digits.size()) break;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t w = bases[i].rows();
      if (offset > pos) break;
      rebuild_row(i, offset);
      offset += w;
    }
    ++res.scanned;
    const std::size_t rk = rank(current);
    if (rk < best_rank) {
      best_rank = rk;
      best = current;
    }
  }

  res.kappa = best_rank;
  auto coeffs = solve_left(inst.sender(), best);
  if (!coeffs) throw std::logic_error("coset element left the sender space");
  res.witness = row_space_basis(*coeffs);
  return res;
}

std::size_t min_rank_bruteforce(const Instance& inst, std::uint64_t budget) {
  const Field& f = inst.field();
  const std::size_t ds = inst.sender_dim();
  if (inst.m() == 0) return 0;
  // L = I always realizes, so only lengths below d_S need a search.
  for (std::size_t n_rows = 1; n_rows < ds; ++n_rows) {
    if (big_pow(f.q(), n_rows * ds) > budget)
      throw BudgetExceeded("encoder search exceeds the enumeration budget");
    Matrix l(f, n_rows, ds);
    std::vector<Elem> digits(n_rows * ds, 0);
    for (;;) {
      for (std::size_t k = 0; k < digits.size(); ++k) l(k / ds, k % ds) = digits[k];
      if (all_of(realizes_ic(l, inst))) return n_rows;
      std::size_t pos = 0;
      while (pos < digits.size()) {
        if (++digits[pos] < f.q()) break;
        digits[pos++] = 0;
      }
      if (pos == digits.size()) break;
    }
  }
  return ds;
}

namespace {

// Vectors of F_q^n as integers, coordinate 0 most significant.
struct VectorCodec {
  std::uint64_t q;
  std::size_t n;

  std::vector<Elem> decode(std::uint64_t idx) const {
    std::vector<Elem> v(n);
    for (std::size_t j = n; j-- > 0;) {
      v[j] = static_cast<Elem>(idx % q);
      idx /= q;
    }
    return v;
  }
  std::uint64_t encode(const std::vector<Elem>& v) const {
    std::uint64_t idx = 0;
    for (Elem x : v) idx = idx * q + x;
    return idx;
  }
  // Leading (first nonzero) coordinate is 1.
  bool normalized(std::uint64_t idx) const {
    if (idx == 0) return false;
    std::uint64_t lead = idx;
    std::uint64_t scale = 1;
    for (std::size_t j = 1; j < n; ++j) scale *= q;
    while (lead / scale == 0) scale /= q;
    return lead / scale == 1;
  }
};

class AlphaSearch {
 public:
  AlphaSearch(const Field& f, std::size_t n, std::vector<bool> in_union)
      : f_(f), codec_{f.q(), n}, in_union_(std::move(in_union)) {}

  AlphaResult run() {
    std::vector<std::uint64_t> cands;
    for (std::uint64_t idx = 1; idx < in_union_.size(); ++idx)
      if (in_union_[idx] && codec_.normalized(idx)) cands.push_back(idx);
    std::vector<std::uint64_t> span{0};
    std::vector<std::uint64_t> basis;
    dfs(span, basis, cands);
    AlphaResult res;
    res.alpha = best_basis_.size();
    res.witness = Matrix(f_, best_basis_.size(), codec_.n);
    for (std::size_t k = 0; k < best_basis_.size(); ++k) {
      const auto v = codec_.decode(best_basis_[k]);
      std::copy(v.begin(), v.end(), res.witness.row_span(k).begin());
    }
    return res;
  }

 private:
  std::uint64_t combine(Elem c, std::uint64_t v, std::uint64_t u) const {
    auto a = codec_.decode(v);
    const auto b = codec_.decode(u);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = f_.add(f_.mul(c, a[j]), b[j]);
    return codec_.encode(a);
  }

  bool compatible(std::uint64_t w, const std::vector<std::uint64_t>& span) const {
    for (auto u : span)
      if (!in_union_[combine(1, w, u)]) return false;
    return true;
  }

  void dfs(const std::vector<std::uint64_t>& span, std::vector<std::uint64_t>& basis,
           const std::vector<std::uint64_t>& cands) {
    if (basis.size() > best_basis_.size()) best_basis_ = basis;
    const std::uint64_t q = f_.q();
    for (std::size_t a = 0; a < cands.size(); ++a) {
      // Beating the best needs (q^{best+1} - q^{dim}) / (q-1) more normalized
      // vectors, all among the remaining candidates.
      const BigInt needed =
          (big_pow(q, best_basis_.size() + 1) - big_pow(q, basis.size())) / (q - 1);
      if (needed > cands.size() - a) return;
      const std::uint64_t v = cands[a];
      std::vector<std::uint64_t> added;
      bool canonical = true;
      for (Elem c = 1; c < q && canonical; ++c)
        for (auto u : span) {
          const std::uint64_t x = combine(c, v, u);
          if (x < v && codec_.normalized(x)) {
            canonical = false;
            break;
          }
          added.push_back(x);
        }
      if (!canonical) continue;
      std::vector<std::uint64_t> next_span = span;
      next_span.insert(next_span.end(), added.begin(), added.end());
      std::vector<std::uint64_t> next_cands;
      for (std::size_t b = a + 1; b < cands.size(); ++b)
        if (compatible(cands[b], next_span)) next_cands.push_back(cands[b]);
      basis.push_back(v);
      dfs(next_span, basis, next_cands);
      basis.pop_back();
    }
  }

  const Field& f_;
  VectorCodec codec_;
  std::vector<bool> in_union_;
  std::vector<std::uint64_t> best_basis_;
};

}  // namespace

AlphaResult alpha(const Instance& inst, std::uint64_t budget) {
  const Field& f = inst.field();
  const BigInt space = big_pow(f.q(), inst.n());
  if (space > budget) throw BudgetExceeded("alpha search space exceeds the enumeration budget");
  const VectorCodec codec{f.q(), inst.n()};
  std::vector<bool> in_union(static_cast<std::size_t>(space), false);
  for (std::size_t i = 0; i < inst.m(); ++i) {
    ConfusionSet zs(inst.user(i).side_info, inst.user(i).request, 1, budget);
    Matrix z(f, 0, 0);
    while (zs.next(z)) in_union[codec.encode(z.transpose().to_rows().front())] = true;
  }
  return AlphaSearch(f, inst.n(), std::move(in_union)).run();
}

bool in_confusion_union(const Instance& inst, const Matrix& z, std::size_t delta) {
  if (z.is_zero() || rank(z) < 2 * delta + 1) return false;
  for (const auto& u : inst.users())
    if ((u.side_info * z).is_zero() && !(u.request * z).is_zero()) return true;
  return false;
}

SampledRankAlpha sampled_rank_alpha(const Instance& inst, std::size_t delta,
                                    std::uint64_t attempts, std::uint64_t seed,
                                    std::uint64_t budget) {
  const Field& f = inst.field();
  const std::size_t t = inst.t();
  SampledRankAlpha out;
  out.attempts = attempts;
  if (2 * delta + 1 > std::min(inst.n(), t)) return out;
  std::vector<ConfusionSet> sets;
  for (std::size_t i = 0; i < inst.m(); ++i)
    sets.emplace_back(inst.user(i).side_info, inst.user(i).request, t, budget);
  if (sets.empty()) return out;
  constexpr int kDrawsPerStep = 64;
  for (std::uint64_t a = 0; a < attempts; ++a) {
    Rng rng = Rng::stream(seed, a);
    std::vector<Matrix> span{Matrix(f, inst.n(), t)};
    std::size_t dim = 0;
    for (int draw = 0; draw < kDrawsPerStep; ++draw) {
      if (static_cast<std::uint64_t>(span.size()) * f.q() > budget) break;
      const Matrix z = sets[rng.below(sets.size())].sample(rng);
      bool ok = true;
      for (const auto& u : span)
        if (!in_confusion_union(inst, z + u, delta)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      const std::size_t old = span.size();
      for (Elem c = 1; c < f.q(); ++c)
        for (std::size_t k = 0; k < old; ++k) span.push_back(scale(c, z) + span[k]);
      ++dim;
    }
    out.lower_bound = std::max(out.lower_bound, dim);
  }
  return out;
}

}  // namespace iccsi
