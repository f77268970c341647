#include "iccsi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "iccsi/matrix.hpp"

namespace iccsi {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

BoundReport probability_report(std::string name,
                               std::vector<std::pair<std::string, std::string>> params,
                               const Rational& raw) {
  BoundReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.raw = raw;
  r.value = raw < 0 ? Rational(0) : (raw > 1 ? Rational(1) : raw);
  r.decimal = render_value(r.value);
  if (raw < 0) r.warning = "bound is negative before clamping (" + render_value(raw) + ")";
  return r;
}

std::string rational_str(const Rational& v) {
  return denominator(v) == 1 ? numerator(v).str() : numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace

std::string render_value(const Rational& v, int sig) { return to_decimal(v, sig); }

std::vector<std::size_t> intersection_dims(const Instance& inst) {
  std::vector<std::size_t> w;
  for (const auto& u : inst.users()) w.push_back(intersection_basis(u.side_info, inst.sender()).rows());
  return w;
}

namespace {

// Z^(i) is determined by (ker V_i, ker V_i ∩ ker R_i), i.e. by the row spaces
// of V_i and [V_i; R_i].
using ZKey = std::pair<std::vector<std::vector<Elem>>, std::vector<std::vector<Elem>>>;

ZKey z_key(const UserSpec& u) {
  return {row_space_basis(u.side_info).to_rows(),
          row_space_basis(vstack(u.side_info, u.request)).to_rows()};
}

bool z_delta_empty(const Instance& inst, std::size_t i, std::size_t delta) {
  const std::size_t k = inst.n() - inst.side_dim(i);
  return 2 * delta + 1 > std::min(k, inst.t());
}

}  // namespace

EquivClassCounts equiv_counts(const Instance& inst, std::size_t delta) {
  std::map<std::vector<std::vector<Elem>>, int> x_classes;
  std::map<ZKey, int> z_classes;
  std::map<ZKey, int> zd_classes;
  bool any_empty = false;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    const auto& u = inst.user(i);
    x_classes[row_space_basis(u.side_info).to_rows()] = 1;
    const ZKey key = z_key(u);
    z_classes[key] = 1;
    if (z_delta_empty(inst, i, delta))
      any_empty = true;
    else
      zd_classes[key] = 1;
  }
  EquivClassCounts c;
  c.m_prime = x_classes.size();
  c.m_dprime = z_classes.size();
  c.m_tprime = zd_classes.size() + (any_empty ? 1 : 0);
  return c;
}

std::vector<std::size_t> z_class_dims(const Instance& inst) {
  std::map<ZKey, std::size_t> classes;
  for (std::size_t i = 0; i < inst.m(); ++i) classes.emplace(z_key(inst.user(i)), inst.side_dim(i));
  std::vector<std::size_t> dims;
  for (const auto& [key, d] : classes) dims.push_back(d);
  return dims;
}

std::vector<std::size_t> z_delta_class_dims(const Instance& inst, std::size_t delta) {
  std::map<ZKey, std::size_t> classes;
  for (std::size_t i = 0; i < inst.m(); ++i)
    if (!z_delta_empty(inst, i, delta)) classes.emplace(z_key(inst.user(i)), inst.side_dim(i));
  std::vector<std::size_t> dims;
  for (const auto& [key, d] : classes) dims.push_back(d);
  return dims;
}

BoundReport zippel_ic_prob(std::uint64_t q, std::uint64_t m_prime, std::uint64_t n_len,
                           std::uint64_t d_s) {
  std::vector<std::pair<std::string, std::string>> params{
      {"q", str(q)}, {"m'", str(m_prime)}, {"N", str(n_len)}, {"d_S", str(d_s)}};
  Rational base(static_cast<long long>(q) - static_cast<long long>(m_prime),
                static_cast<long long>(q));
  Rational raw = 1;
  for (std::uint64_t k = 0; k < n_len * d_s; ++k) raw *= base;
  if (q <= m_prime) {
    BoundReport r = probability_report("zippel", std::move(params), raw);
    r.value = 0;
    r.decimal = render_value(r.value);
    r.warning = "requires q > m'";
    return r;
  }
  BoundReport r = probability_report("zippel", std::move(params), raw);
  r.verdict = r.value > 0;
  return r;
}

BigInt subspace_avoid_count(std::uint64_t w, std::uint64_t ell, std::uint64_t s,
                            std::uint64_t n_len, std::uint64_t q) {
  if (w > ell || ell > s) throw std::invalid_argument("subspace_avoid_count needs w <= ell <= s");
  BigInt total = 0;
  for (std::uint64_t r = 0; r <= std::min(w, n_len); ++r)
    total += big_pow(q, (ell - r) * (n_len - r)) * gaussian_binomial(w, r, q) *
             gaussian_binomial(s - ell, n_len - r, q);
  return total;
}

BoundReport subspace_existence_prob(const std::vector<std::size_t>& w, std::uint64_t d_s,
                                    std::uint64_t n_len, std::uint64_t q) {
  std::vector<std::pair<std::string, std::string>> params{
      {"q", str(q)}, {"d_S", str(d_s)}, {"N", str(n_len)}, {"m", str(w.size())}};
  const BigInt total = gaussian_binomial(d_s, n_len, q);
  if (total == 0) {
    BoundReport r = probability_report("subspace", std::move(params), 0);
    r.verdict = false;
    r.warning = "N exceeds d_S";
    return r;
  }
  BigInt missing = 0;
  for (std::size_t wi : w) {
    if (wi + 1 > d_s) throw std::invalid_argument("w_i must be below d_S");
    missing += subspace_avoid_count(wi, wi + 1, d_s, n_len, q);
  }
  BoundReport r = probability_report("subspace", std::move(params),
                                     Rational(1) - Rational(missing, total));
  r.verdict = r.raw > 0;
  return r;
}

BoundReport hamming_random_ecic_prob(const std::vector<std::size_t>& d, std::uint64_t n,
                                     std::uint64_t n_len, std::uint64_t delta, std::uint64_t q,
                                     std::uint64_t m_dprime) {
  std::vector<std::pair<std::string, std::string>> params{
      {"q", str(q)},         {"n", str(n)}, {"N", str(n_len)}, {"delta", str(delta)},
      {"m", str(d.size())}, {"m''", str(m_dprime)}};
  const BigInt vol = sphere_vol_hamming(n_len, 2 * delta, q);
  BigInt numer = 0;
  for (std::size_t di : d) {
    if (di >= n) throw std::invalid_argument("d_i must be below n");
    numer += big_pow(q, n - di - 1) * (q - 1) * vol;
  }
  BoundReport r = probability_report("hamming-random", std::move(params),
                                     Rational(1) - Rational(numer, big_pow(q, n_len)));
  if (d.empty()) {
    r.verdict = true;
    return r;
  }
  // q^N > m''(q-1)V q^{n-d-1}.
  const std::size_t dmin = *std::min_element(d.begin(), d.end());
  r.verdict = big_pow(q, n_len) > BigInt(m_dprime) * (q - 1) * vol * big_pow(q, n - dmin - 1);
  return r;
}

double q_entropy(double x, std::uint64_t q) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("q-ary entropy needs 0 < x < 1");
  const double lq = std::log(static_cast<double>(q));
  return (x * std::log(static_cast<double>(q - 1)) - x * std::log(x) -
          (1 - x) * std::log1p(-x)) /
         lq;
}

EntropySphereCheck entropy_sphere_check(std::uint64_t n, const Rational& lambda,
                                        std::uint64_t q) {
  if (!(lambda > 0 && lambda < Rational(static_cast<long long>(q - 1), static_cast<long long>(q))))
    throw std::domain_error("lambda must lie in (0, 1 - 1/q)");
  const Rational radius = lambda * n;
  if (denominator(radius) != 1) throw std::domain_error("lambda n must be an integer");
  EntropySphereCheck c;
  c.volume = sphere_vol_hamming(n, numerator(radius).convert_to<std::uint64_t>(), q);
  const double h = q_entropy(to_double(lambda), q);
  c.entropy_bound = std::pow(static_cast<double>(q), h * static_cast<double>(n));
  c.holds = to_double(Rational(c.volume)) <= c.entropy_bound * (1 + 1e-12);
  return c;
}

BoundReport entropy_ecic_prob(const std::vector<std::size_t>& class_dims, std::uint64_t n,
                              std::uint64_t n_len, const Rational& lambda, std::uint64_t q) {
  const Rational radius = lambda * n_len;
  if (denominator(radius) != 1) throw std::domain_error("lambda N must be an integer");
  const std::uint64_t delta = numerator(radius).convert_to<std::uint64_t>() / 2;
  const double h = q_entropy(to_double(lambda), q);
  const double lq = std::log(static_cast<double>(q));
  const double rate = static_cast<double>(n_len) * (1.0 - h);
  double sum = 0.0;
  for (std::size_t di : class_dims)
    sum += std::exp(lq * (static_cast<double>(n - di - 1) - rate));
  const double raw = 1.0 - static_cast<double>(q - 1) * sum;
  BoundReport r = probability_report(
      "entropy", {{"q", str(q)}, {"n", str(n)}, {"N", str(n_len)}, {"lambda", rational_str(lambda)},
                  {"delta", str(delta)}, {"m''", str(class_dims.size())}},
      Rational(raw));
  if (class_dims.empty()) {
    r.verdict = true;
    return r;
  }
  const std::size_t dmin = *std::min_element(class_dims.begin(), class_dims.end());
  const double threshold =
      std::exp(lq * (rate - static_cast<double>(n - dmin - 1))) / static_cast<double>(q - 1);
  r.verdict = static_cast<double>(class_dims.size()) < threshold;
  return r;
}

std::size_t singleton_lb(std::size_t kappa, std::size_t delta) { return kappa + 2 * delta; }

LengthEstimate block_length_estimate(std::size_t k, std::size_t d, std::uint64_t q) {
  LengthEstimate e;
  if (k == 0) {
    e.upper = 0;
    return e;
  }
  if (d == 0) throw std::invalid_argument("minimum distance must be >= 1");
  BigInt qi = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const BigInt c = (BigInt(d) + qi - 1) / qi;
    e.lower += c.convert_to<std::size_t>();
    qi *= q;
  }
  if (d == 1)
    e.upper = k;
  else if (k == 1)
    e.upper = d;
  else if (q + 2 >= k + d)
    e.upper = k + d - 1;
  else if (q == 2 && d == 3 && k == 2)
    e.upper = 5;
  else if (q == 2 && d == 3 && k == 3)
    e.upper = 6;
  return e;
}

LengthBracket alpha_kappa_bracket(std::size_t alpha, std::size_t kappa, std::size_t delta,
                                  std::uint64_t q) {
  LengthBracket b;
  b.alpha = alpha;
  b.kappa = kappa;
  b.delta = delta;
  b.lower = block_length_estimate(alpha, 2 * delta + 1, q).lower;
  b.upper = block_length_estimate(kappa, 2 * delta + 1, q).upper;
  return b;
}

BigInt hom_count(const BigInt& family_size, std::uint64_t t, std::uint64_t r, std::uint64_t q) {
  return family_size * independent_tuples(t, r, q);
}

BigInt z_delta_size(std::uint64_t n, std::uint64_t d_i, std::uint64_t t, std::uint64_t delta,
                    std::uint64_t q) {
  if (d_i >= n) throw std::invalid_argument("d_i must be below n");
  const std::uint64_t k = n - d_i;
  BigInt total = 0;
  for (std::uint64_t r = 2 * delta + 1; r <= std::min(t, k); ++r)
    total += (independent_tuples(k, r, q) - independent_tuples(k - 1, r, q)) *
             gaussian_binomial(t, r, q);
  return total;
}

BoundReport rank_random_ecic_prob(const std::vector<std::size_t>& class_dims, std::uint64_t n,
                                  std::uint64_t n_len, std::uint64_t t, std::uint64_t delta,
                                  std::uint64_t q) {
  const BigInt vol = sphere_vol_rank(n_len, t, 2 * delta, q);
  BigInt confusable = 0;
  for (std::size_t di : class_dims) confusable += z_delta_size(n, di, t, delta, q);
  const BigInt space = big_pow(q, n_len * t);
  BoundReport r = probability_report(
      "rank-random",
      {{"q", str(q)}, {"n", str(n)}, {"N", str(n_len)}, {"t", str(t)}, {"delta", str(delta)},
       {"m'''", str(class_dims.size())}},
      Rational(1) - Rational(confusable * vol, space));
  r.verdict = confusable * vol < space;
  return r;
}

bool rank_kappa_corollary(std::uint64_t m_tprime, std::uint64_t ell, std::uint64_t t,
                          std::uint64_t q) {
  return BigInt(m_tprime) * (big_pow(q, t) - 1) < big_pow(q, ell * t);
}

BoundReport rank_singleton(std::uint64_t alpha, std::uint64_t t, std::uint64_t delta,
                           std::uint64_t n_est) {
  BoundReport r;
  r.name = "rank-singleton";
  r.params = {{"alpha", str(alpha)}, {"t", str(t)}, {"delta", str(delta)}, {"N_est", str(n_est)}};
  std::uint64_t bound;
  if (t >= n_est) {
    if (t == 0) throw std::invalid_argument("t must be positive");
    bound = (alpha + t - 1) / t + 2 * delta;
  } else {
    if (t <= 2 * delta) throw std::invalid_argument("t must exceed 2 delta");
    bound = (alpha + (t - 2 * delta) - 1) / (t - 2 * delta);
  }
  r.value = r.raw = Rational(bound);
  r.decimal = std::to_string(bound);
  return r;
}

}  // namespace iccsi
