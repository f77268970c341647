#pragma once

// Brute-force reference implementations. Nothing here calls into the library's
// arithmetic: field products are schoolbook polynomial products reduced by the
// modulus, and every linear-algebra question is answered by enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<unsigned>;
using Mat = std::vector<Vec>;

struct Gf {
  unsigned p = 2;
  unsigned e = 1;
  Vec modulus;  // little-endian, monic, degree e
  unsigned q = 2;

  Gf(unsigned p_, unsigned e_, Vec mod) : p(p_), e(e_), modulus(std::move(mod)), q(1) {
    for (unsigned i = 0; i < e; ++i) q *= p;
  }

  Vec digits(unsigned a) const {
    Vec d(e);
    for (unsigned i = 0; i < e; ++i, a /= p) d[i] = a % p;
    return d;
  }
  unsigned pack(const Vec& d) const {
    unsigned a = 0;
    for (unsigned i = e; i-- > 0;) a = a * p + d[i];
    return a;
  }
  unsigned add(unsigned a, unsigned b) const {
    Vec x = digits(a), y = digits(b);
    for (unsigned i = 0; i < e; ++i) x[i] = (x[i] + y[i]) % p;
    return pack(x);
  }
  unsigned neg(unsigned a) const {
    Vec x = digits(a);
    for (auto& v : x) v = (p - v) % p;
    return pack(x);
  }
  unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }
  unsigned mul(unsigned a, unsigned b) const {
    Vec x = digits(a), y = digits(b), prod(2 * e, 0);
    for (unsigned i = 0; i < e; ++i)
      for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (unsigned deg = 2 * e - 1; deg >= e; --deg) {
      const unsigned c = prod[deg];
      if (c == 0) continue;
      for (unsigned k = 0; k <= e; ++k)
        prod[deg - e + k] = (prod[deg - e + k] + (p - c) * modulus[k]) % p;
    }
    prod.resize(e);
    return pack(prod);
  }
};

inline unsigned dot(const Gf& f, const Vec& a, const Vec& b) {
  unsigned s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

inline Vec apply(const Gf& f, const Mat& m, const Vec& x) {
  Vec y;
  for (const auto& row : m) y.push_back(dot(f, row, x));
  return y;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](unsigned x) { return x == 0; });
}

/// Calls fn on every vector of F_q^n.
inline void for_each_vector(unsigned q, std::size_t n, const std::function<void(const Vec&)>& fn) {
  Vec v(n, 0);
  for (;;) {
    fn(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == q) v[i++] = 0;
    if (i == n) return;
  }
}

/// Every linear combination of the rows.
inline std::set<Vec> span(const Gf& f, const Mat& rows, std::size_t n) {
  std::set<Vec> out;
  for_each_vector(f.q, rows.size(), [&](const Vec& c) {
    Vec v(n, 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(c[r], rows[r][j]));
    out.insert(v);
  });
  return out;
}

inline std::size_t rank(const Gf& f, const Mat& rows, std::size_t n) {
  std::size_t size = span(f, rows, n).size(), r = 0;
  while (size > 1) size /= f.q, ++r;
  return r;
}

inline std::size_t hamming_weight(const Vec& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](unsigned x) { return x; }));
}

struct User {
  Mat v;
  Vec r;
};

/// User decodes from (V x, L' x) iff no x has V x = 0, L' x = 0 and R x != 0.
inline bool user_decodes(const Gf& f, const User& u, const Mat& lvs, std::size_t n) {
  bool ok = true;
  for_each_vector(f.q, n, [&](const Vec& x) {
    if (ok && is_zero(apply(f, u.v, x)) && is_zero(apply(f, lvs, x)) && dot(f, u.r, x) != 0)
      ok = false;
  });
  return ok;
}

inline Mat multiply(const Gf& f, const Mat& a, const Mat& b) {
  Mat c(a.size(), Vec(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] = f.add(c[i][j], f.mul(a[i][k], b[k][j]));
  return c;
}

/// Calls fn on every rows x cols matrix; stops early when fn returns true.
inline bool any_matrix(unsigned q, std::size_t rows, std::size_t cols,
                       const std::function<bool(const Mat&)>& fn) {
  bool hit = false;
  Mat m(rows, Vec(cols, 0));
  for_each_vector(q, rows * cols, [&](const Vec& flat) {
    if (hit) return;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = flat[i * cols + j];
    hit = fn(m);
  });
  return hit;
}

/// Smallest N for which some N x d_S matrix L makes every user decode.
inline std::size_t shortest_realizing_length(const Gf& f, const std::vector<User>& users,
                                             const Mat& sender, std::size_t n) {
  const std::size_t d_s = sender.size();
  for (std::size_t len = 0; len < d_s; ++len) {
    const bool found = any_matrix(f.q, len, d_s, [&](const Mat& l) {
      const Mat lvs = multiply(f, l, sender);
      for (const auto& u : users)
        if (!user_decodes(f, u, lvs, n)) return false;
      return true;
    });
    if (found) return len;
  }
  return d_s;
}

inline std::set<Vec> hamming_ball(const Gf& f, const Vec& centre, std::size_t radius) {
  std::set<Vec> out;
  for_each_vector(f.q, centre.size(), [&](const Vec& e) {
    if (hamming_weight(e) > radius) return;
    Vec y = centre;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = f.add(y[j], e[j]);
    out.insert(y);
  });
  return out;
}

/// For every user, any two data vectors it cannot tell apart from its cache
/// but that differ on its request have disjoint radius-delta balls around
/// their codewords.
inline bool balls_disjoint(const Gf& f, const std::vector<User>& users, const Mat& lvs,
                           std::size_t n, std::size_t delta) {
  std::vector<Vec> xs;
  for_each_vector(f.q, n, [&](const Vec& x) { xs.push_back(x); });
  for (const auto& u : users)
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = a + 1; b < xs.size(); ++b) {
        if (apply(f, u.v, xs[a]) != apply(f, u.v, xs[b])) continue;
        if (dot(f, u.r, xs[a]) == dot(f, u.r, xs[b])) continue;
        const auto ba = hamming_ball(f, apply(f, lvs, xs[a]), delta);
        const auto bb = hamming_ball(f, apply(f, lvs, xs[b]), delta);
        for (const auto& y : ba)
          if (bb.count(y)) return false;
      }
  return true;
}

/// All subspaces of F_q^s of dimension k, each as its sorted element set.
inline std::set<std::set<Vec>> subspaces(const Gf& f, std::size_t s, std::size_t k) {
  std::set<std::set<Vec>> out;
  any_matrix(f.q, k, s, [&](const Mat& rows) {
    auto sp = span(f, rows, s);
    std::size_t size = 1;
    for (std::size_t i = 0; i < k; ++i) size *= f.q;
    if (sp.size() == size) out.insert(std::move(sp));
    return false;
  });
  return out;
}

inline std::size_t matrix_rank(const Gf& f, const Mat& m) {
  return m.empty() ? 0 : rank(f, m, m[0].size());
}

}  // namespace oracle
