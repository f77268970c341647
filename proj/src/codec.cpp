#include "iccsi/codec.hpp"

#include <fstream>
#include <sstream>

#include "iccsi/bounds.hpp"
#include "iccsi/minrank.hpp"
#include "iccsi/rng.hpp"
#include "json.hpp"

namespace iccsi {

using nlohmann::json;

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Coset: return "coset";
    case Provenance::Random: return "random";
    case Provenance::Concatenated: return "concatenated";
    case Provenance::File: return "file";
  }
  return "file";
}

Provenance parse_provenance(const std::string& s) {
  if (s == "coset") return Provenance::Coset;
  if (s == "random") return Provenance::Random;
  if (s == "concatenated") return Provenance::Concatenated;
  if (s == "file") return Provenance::File;
  throw ValidationError("unknown provenance \"" + s + "\"");
}

EncodingMatrix make_encoder(const Instance& inst, Matrix l, Provenance provenance) {
  if (l.cols() != inst.sender_dim()) throw ValidationError("encoder must have d_S columns");
  EncodingMatrix e;
  e.lvs = l * inst.sender();
  e.l = std::move(l);
  e.provenance = provenance;
  return e;
}

EcicCertificate verify_ecic(const Matrix& l, const Instance& inst, std::size_t delta,
                            Metric metric, const VerifyOptions& opts) {
  if (l.cols() != inst.sender_dim()) throw ValidationError("encoder must have d_S columns");
  const Matrix lvs = l * inst.sender();
  const std::size_t t = metric == Metric::Hamming ? 1 : inst.t();
  const std::size_t need = 2 * delta + 1;
  EcicCertificate cert;
  cert.delta = delta;
  cert.metric = metric;

  for (std::size_t i = 0; i < inst.m(); ++i) {
    ConfusionSet zs(inst.user(i).side_info, inst.user(i).request, t, opts.budget);
    bool user_failed = false;
    auto check = [&](const Matrix& z) {
      if (metric == Metric::Rank && rank(z) < need) return;
      ++cert.checked;
      const std::size_t w = weight(lvs * z, metric);
      if (w < need) {
        user_failed = true;
        if (cert.violations.size() < opts.max_witnesses) cert.violations.push_back({i, z, w});
      }
    };
    if (zs.exhaustive()) {
      Matrix z;
      while (zs.next(z) && !user_failed) check(z);
    } else {
      cert.exhaustive = false;
      cert.trials = opts.samples;
      Rng rng = Rng::stream(opts.seed, i);
      for (std::uint64_t s = 0; s < opts.samples && !user_failed; ++s) check(zs.sample(rng));
    }
  }
  return cert;
}

EncodingMatrix coset_encoder(const Instance& inst, std::uint64_t budget) {
  return make_encoder(inst, min_rank(inst, budget).witness, Provenance::Coset);
}

RandomSearchResult random_ic_search(const Instance& inst, std::size_t n_len, std::size_t delta,
                                    Metric metric, std::uint64_t max_attempts,
                                    std::uint64_t seed, const VerifyOptions& opts) {
  RandomSearchResult res;
  if (n_len == 0) return res;
  Rng rng(seed);
  for (res.attempts = 1; res.attempts <= max_attempts; ++res.attempts) {
    Matrix l = rng.matrix(inst.field(), n_len, inst.sender_dim());
    EcicCertificate cert = verify_ecic(l, inst, delta, metric, opts);
    if (cert.passed()) {
      res.encoder = make_encoder(inst, std::move(l), Provenance::Random);
      res.certificate = std::move(cert);
      return res;
    }
  }
  res.attempts = max_attempts;
  return res;
}

std::size_t min_hamming_distance(const Matrix& generator, std::uint64_t budget) {
  const Field& f = generator.field();
  const std::size_t k = generator.rows();
  if (k == 0) throw std::invalid_argument("empty generator");
  if (big_pow(f.q(), k) > budget) throw BudgetExceeded("code too large to enumerate");
  std::size_t best = generator.cols() + 1;
  std::vector<Elem> x(k, 0);
  Matrix msg(f, 1, k);
  for (;;) {
    std::size_t pos = 0;
    while (pos < k) {
      if (++x[pos] < f.q()) break;
      x[pos++] = 0;
    }
    if (pos == k) break;
    std::copy(x.begin(), x.end(), msg.row_span(0).begin());
    const Matrix cw = msg * generator;
    std::size_t w = 0;
    for (Elem v : cw.row_span(0)) w += v != 0;
    if (w == 0) throw std::invalid_argument("generator rows are dependent");
    best = std::min(best, w);
  }
  return best;
}

EncodingMatrix concat_kappa_bound(const Instance& inst, std::size_t delta, const Matrix& outer,
                                  std::uint64_t budget) {
  const EncodingMatrix inner = coset_encoder(inst, budget);
  if (outer.cols() != inner.length())
    throw ValidationError("outer generator must have kappa = " + std::to_string(inner.length()) +
                          " columns");
  if (rank(outer) != outer.cols()) throw ValidationError("outer generator must have full column rank");
  if (min_hamming_distance(outer.transpose(), budget) < 2 * delta + 1)
    throw ValidationError("outer code distance below 2 delta + 1");
  return make_encoder(inst, outer * inner.l, Provenance::Concatenated);
}

Matrix extended_rs_generator(const Field& field, std::size_t n_len, std::size_t k) {
  const std::size_t q = field.q();
  if (k == 0 || k > n_len) throw std::invalid_argument("need 1 <= k <= N");
  if (n_len > q + 1) throw std::invalid_argument("extended Reed-Solomon length exceeds q + 1");
  Matrix g(field, k, n_len);
  const std::size_t finite = std::min(n_len, q);
  for (std::size_t j = 0; j < finite; ++j) {
    Elem pw = 1;
    for (std::size_t r = 0; r < k; ++r) {
      g(r, j) = pw;
      pw = field.mul(pw, static_cast<Elem>(j));
    }
  }
  if (n_len == q + 1) g(k - 1, q) = 1;
  return g;
}

std::optional<Matrix> short_code_generator(const Field& field, std::size_t k, std::size_t d) {
  const auto est = block_length_estimate(k, d, field.q());
  if (!est.upper || k == 0) return std::nullopt;
  const std::size_t n_len = *est.upper;
  if (d == 1) return Matrix::identity(field, k);
  if (k == 1) {
    Matrix g(field, 1, d);
    for (auto& x : g.row_span(0)) x = 1;
    return g;
  }
  if (field.q() + 2 >= k + d) return extended_rs_generator(field, n_len, k);
  if (field.q() == 2 && k == 2 && d == 3)
    return Matrix::from_rows(field, {{1, 0, 1, 1, 0}, {0, 1, 1, 0, 1}});
  if (field.q() == 2 && k == 3 && d == 3)
    return Matrix::from_rows(field, {{1, 0, 0, 1, 1, 0}, {0, 1, 0, 1, 0, 1}, {0, 0, 1, 0, 1, 1}});
  return std::nullopt;
}

std::string serialize_encoder(const EncodingMatrix& enc, const std::optional<EcicCertificate>& cert) {
  json j;
  j["N"] = enc.length();
  j["L"] = enc.l.to_rows();
  j["provenance"] = to_string(enc.provenance);
  if (cert) {
    json c;
    c["delta"] = cert->delta;
    c["metric"] = to_string(cert->metric);
    c["mode"] = cert->exhaustive ? "exhaustive" : "sampled";
    c["trials"] = cert->trials;
    c["checked"] = cert->checked;
    json v = json::array();
    for (const auto& w : cert->violations)
      v.push_back({{"user", w.user}, {"Z", w.z.to_rows()}, {"weight", w.weight}});
    c["violations"] = v;
    c["passed"] = cert->passed();
    j["certificate"] = c;
  } else {
    j["certificate"] = nullptr;
  }
  return j.dump();
}

EncodingMatrix parse_encoder(std::string_view text, const Instance& inst) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed encoder JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("L") || !j.at("L").is_array())
    throw ValidationError("encoder needs an \"L\" array");
  std::vector<std::vector<Elem>> rows;
  for (const auto& row : j.at("L")) {
    if (!row.is_array()) throw ValidationError("encoder rows must be arrays");
    std::vector<Elem> r;
    for (const auto& x : row) {
      if (!x.is_number_integer() || x.get<long long>() < 0)
        throw ValidationError("encoder entries must be non-negative integers");
      r.push_back(x.get<Elem>());
    }
    rows.push_back(std::move(r));
  }
  Matrix l = rows.empty() ? Matrix(inst.field(), 0, inst.sender_dim())
                          : Matrix::from_rows(inst.field(), rows);
  if (j.contains("N") && j.at("N").get<std::size_t>() != l.rows())
    throw ValidationError("encoder \"N\" disagrees with the rows of \"L\"");
  const Provenance p =
      j.contains("provenance") ? parse_provenance(j.at("provenance").get<std::string>())
                               : Provenance::File;
  return make_encoder(inst, std::move(l), p);
}

EncodingMatrix load_encoder(const std::string& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open encoder file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_encoder(ss.str(), inst);
}

}  // namespace iccsi
