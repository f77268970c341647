#include "iccsi/field.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "iccsi/error.hpp"

namespace iccsi {

namespace detail {

struct FieldTables {
  unsigned p = 2;
  unsigned e = 1;
  Elem q = 2;
  std::vector<unsigned> modulus;
  Elem primitive = 1;
  // exp has 2(q-1) entries so that log a + log b never needs a reduction.
  std::vector<Elem> exp;
  std::vector<std::uint32_t> log;
  std::vector<Elem> neg;
  // Full addition table for q <= 256, empty otherwise.
  std::vector<Elem> add;
};

}  // namespace detail

namespace {

using Poly = std::vector<unsigned>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo a monic g, over F_p.
Poly poly_mod(Poly f, const Poly& g, unsigned p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const unsigned lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t j = 0; j <= dg; ++j) {
      f[shift + j] = (f[shift + j] + p - (lead * g[j]) % p) % p;
    }
    trim(f);
  }
  return f;
}

Poly digits_of(std::uint64_t v, unsigned p, unsigned width) {
  Poly d(width, 0);
  for (unsigned j = 0; j < width; ++j) {
    d[j] = static_cast<unsigned>(v % p);
    v /= p;
  }
  return d;
}

Elem value_of(const Poly& d, unsigned p) {
  Elem v = 0;
  for (std::size_t j = d.size(); j-- > 0;) v = v * p + d[j];
  return v;
}

// Product of two field elements by polynomial multiplication and reduction.
Elem slow_mul(Elem a, Elem b, const Poly& modulus, unsigned p, unsigned e) {
  const Poly da = digits_of(a, p, e);
  const Poly db = digits_of(b, p, e);
  Poly prod(2 * e, 0);
  for (unsigned i = 0; i < e; ++i)
    for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  Poly r = poly_mod(prod, modulus, p);
  r.resize(e, 0);
  return value_of(r, p);
}

const std::map<std::pair<unsigned, unsigned>, Poly>& canonical_moduli() {
  static const std::map<std::pair<unsigned, unsigned>, Poly> table = {
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{3, 2}, {1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
  };
  return table;
}

Poly smallest_irreducible(unsigned p, unsigned e) {
  std::uint64_t count = 1;
  for (unsigned j = 0; j < e; ++j) count *= p;
  for (std::uint64_t low = 0; low < count; ++low) {
    Poly f = digits_of(low, p, e);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw ValidationError("no irreducible polynomial found");  // unreachable
}

std::shared_ptr<const detail::FieldTables> build(unsigned p, unsigned e, Poly modulus) {
  auto t = std::make_shared<detail::FieldTables>();
  t->p = p;
  t->e = e;
  Elem q = 1;
  for (unsigned j = 0; j < e; ++j) q *= p;
  t->q = q;
  t->modulus = std::move(modulus);

  if (q == 2) {
    t->primitive = 1;
  } else {
    for (Elem g = 2; g < q; ++g) {
      Elem x = g;
      std::uint32_t order = 1;
      while (x != 1) {
        x = slow_mul(x, g, t->modulus, p, e);
        ++order;
      }
      if (order == q - 1) {
        t->primitive = g;
        break;
      }
    }
  }

  const Elem n = q - 1;
  t->exp.assign(2 * static_cast<std::size_t>(n), 0);
  t->log.assign(q, 0);
  Elem x = 1;
  for (Elem k = 0; k < n; ++k) {
    t->exp[k] = x;
    t->exp[k + n] = x;
    t->log[x] = k;
    x = slow_mul(x, t->primitive, t->modulus, p, e);
  }

  t->neg.assign(q, 0);
  for (Elem a = 0; a < q; ++a) {
    Poly d = digits_of(a, p, e);
    for (auto& c : d) c = (p - c) % p;
    t->neg[a] = value_of(d, p);
  }

  if (q <= 256 && p != 2) {
    t->add.assign(static_cast<std::size_t>(q) * q, 0);
    for (Elem a = 0; a < q; ++a) {
      const Poly da = digits_of(a, p, e);
      for (Elem b = 0; b < q; ++b) {
        const Poly db = digits_of(b, p, e);
        Poly s(e);
        for (unsigned j = 0; j < e; ++j) s[j] = (da[j] + db[j]) % p;
        t->add[static_cast<std::size_t>(a) * q + b] = value_of(s, p);
      }
    }
  }
  return t;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(const std::vector<unsigned>& poly, unsigned p) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (std::size_t dg = 1; dg <= deg / 2; ++dg) {
    std::uint64_t count = 1;
    for (std::size_t j = 0; j < dg; ++j) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = digits_of(low, p, static_cast<unsigned>(dg));
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field Field::make(unsigned p, unsigned e) {
  if (!is_prime(p)) throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw ValidationError("extension degree must be >= 1");
  if (e == 1) return make(p, 1, {0, 1});
  const auto& table = canonical_moduli();
  if (auto it = table.find({p, e}); it != table.end()) return make(p, e, it->second);
  std::uint64_t q = 1;
  for (unsigned j = 0; j < e; ++j) {
    q *= p;
    if (q > 65536) throw ValidationError("field order exceeds 2^16");
  }
  return make(p, e, smallest_irreducible(p, e));
}

Field Field::make(unsigned p, unsigned e, const std::vector<unsigned>& modulus) {
  if (!is_prime(p)) throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw ValidationError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned j = 0; j < e; ++j) {
    q *= p;
    if (q > 65536) throw ValidationError("field order exceeds 2^16");
  }
  if (e == 1) return Field(build(p, 1, {0, 1}));
  Poly f = modulus;
  trim(f);
  if (f.size() != e + 1 || f.back() != 1)
    throw ValidationError("modulus must be monic of degree " + std::to_string(e));
  for (unsigned c : f)
    if (c >= p) throw ValidationError("modulus coefficient out of range");
  if (!is_irreducible(f, p)) throw ValidationError("modulus is reducible over F_p");
  return Field(build(p, e, f));
}

unsigned Field::p() const { return t_->p; }
unsigned Field::e() const { return t_->e; }
Elem Field::q() const { return t_->q; }
const std::vector<unsigned>& Field::modulus() const { return t_->modulus; }
Elem Field::primitive() const { return t_->primitive; }

Elem Field::add(Elem a, Elem b) const {
  if (t_->p == 2) return a ^ b;
  if (t_->e == 1) {
    const Elem s = a + b;
    return s >= t_->q ? s - t_->q : s;
  }
  if (!t_->add.empty()) return t_->add[static_cast<std::size_t>(a) * t_->q + b];
  Elem r = 0, scale = 1;
  const unsigned p = t_->p;
  for (unsigned j = 0; j < t_->e; ++j) {
    r += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return r;
}

Elem Field::neg(Elem a) const { return t_->neg[a]; }

Elem Field::sub(Elem a, Elem b) const { return add(a, t_->neg[b]); }

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return t_->exp[t_->log[a] + t_->log[b]];
}

Elem Field::inv(Elem a) const {
  const Elem n = t_->q - 1;
  return t_->exp[(n - t_->log[a]) % n];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = t_->q - 1;
  return t_->exp[(static_cast<std::uint64_t>(t_->log[a]) * (k % n)) % n];
}

bool operator==(const Field& a, const Field& b) {
  if (a.t_ == b.t_) return true;
  return a.t_->p == b.t_->p && a.t_->e == b.t_->e && a.t_->modulus == b.t_->modulus;
}

}  // namespace iccsi
