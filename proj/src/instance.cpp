#include "iccsi/instance.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace iccsi {

using nlohmann::json;

Instance Instance::create(Field field, std::size_t t, std::size_t n, const Matrix& sender,
                          std::vector<UserSpec> users) {
  if (t < 1) throw ValidationError("block length t must be >= 1");
  if (sender.cols() != n) throw ValidationError("sender basis must have n columns");
  if (!(sender.field() == field)) throw ValidationError("sender basis over a different field");
  Matrix vs = row_space_basis(sender);
  for (std::size_t i = 0; i < users.size(); ++i) {
    auto& u = users[i];
    if (!(u.side_info.field() == field) || !(u.request.field() == field))
      throw ValidationError("matrix over a different field", i);
    if (u.side_info.cols() != n) throw ValidationError("side information must have n columns", i);
    if (u.request.rows() != 1 || u.request.cols() != n)
      throw ValidationError("request must be a length-n row vector", i);
    u.side_info = row_space_basis(u.side_info);
    if (!in_row_space(vs, u.request)) throw ValidationError("request outside sender space", i);
    if (in_row_space(u.side_info, u.request))
      throw ValidationError("request in side information", i);
  }
  return Instance(std::move(field), t, n, std::move(vs), std::move(users));
}

Matrix Instance::requests() const {
  Matrix r(field_, users_.size(), n_);
  for (std::size_t i = 0; i < users_.size(); ++i) r.set_block(i, 0, users_[i].request);
  return r;
}

Instance Instance::with_block_length(std::size_t t) const {
  if (t < 1) throw ValidationError("block length t must be >= 1");
  Instance copy = *this;
  copy.t_ = t;
  return copy;
}

bool operator==(const Instance& a, const Instance& b) {
  if (!(a.field_ == b.field_) || a.t_ != b.t_ || a.n_ != b.n_ || !(a.sender_ == b.sender_) ||
      a.users_.size() != b.users_.size())
    return false;
  for (std::size_t i = 0; i < a.users_.size(); ++i)
    if (!(a.users_[i].side_info == b.users_[i].side_info) ||
        !(a.users_[i].request == b.users_[i].request))
      return false;
  return true;
}

namespace {

std::uint64_t as_count(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ValidationError(std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<Elem> parse_row(const json& row, const Field& f, std::size_t n, const char* what,
                            std::optional<std::size_t> user) {
  if (!row.is_array()) throw ValidationError(std::string(what) + " row must be an array", user);
  if (row.size() != n)
    throw ValidationError(std::string(what) + " row length " + std::to_string(row.size()) +
                              " differs from n=" + std::to_string(n),
                          user);
  std::vector<Elem> out;
  out.reserve(n);
  for (const auto& x : row) {
    if (!x.is_number_integer()) throw ValidationError(std::string(what) + " entry not an integer", user);
    const long long v = x.get<long long>();
    if (v < 0 || !f.contains(static_cast<std::uint64_t>(v)))
      throw ValidationError(std::string(what) + " entry " + std::to_string(v) + " outside [0, q)",
                            user);
    out.push_back(static_cast<Elem>(v));
  }
  return out;
}

Matrix parse_matrix(const json& rows, const Field& f, std::size_t n, const char* what,
                    std::optional<std::size_t> user) {
  if (!rows.is_array()) throw ValidationError(std::string(what) + " must be an array of rows", user);
  Matrix m(f, rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto row = parse_row(rows[r], f, n, what, user);
    std::copy(row.begin(), row.end(), m.row_span(r).begin());
  }
  return m;
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("instance must be a JSON object");
  const auto p = as_count(j, "p");
  const auto e = j.contains("e") ? as_count(j, "e") : 1;
  const auto t = j.contains("t") ? as_count(j, "t") : 1;
  const auto n = as_count(j, "n");
  Field field = [&] {
    try {
      if (j.contains("modulus") && !j.at("modulus").is_null())
        return Field::make(static_cast<unsigned>(p), static_cast<unsigned>(e),
                           j.at("modulus").get<std::vector<unsigned>>());
      return Field::make(static_cast<unsigned>(p), static_cast<unsigned>(e));
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ValidationError(std::string("invalid field: ") + ex.what());
    }
  }();
  if (!j.contains("sender")) throw ValidationError("missing field \"sender\"");
  Matrix sender = parse_matrix(j.at("sender"), field, n, "sender", std::nullopt);
  if (!j.contains("users") || !j.at("users").is_array())
    throw ValidationError("missing array \"users\"");
  const json& ju = j.at("users");
  if (j.contains("m") && as_count(j, "m") != ju.size())
    throw ValidationError("\"m\" disagrees with the number of users");
  std::vector<UserSpec> users;
  for (std::size_t i = 0; i < ju.size(); ++i) {
    const json& u = ju[i];
    if (!u.is_object() || !u.contains("V") || !u.contains("R"))
      throw ValidationError("user needs \"V\" and \"R\"", i);
    Matrix v = parse_matrix(u.at("V"), field, n, "V", i);
    Matrix r = Matrix::row_vector(field, parse_row(u.at("R"), field, n, "R", i));
    users.push_back({std::move(v), std::move(r)});
  }
  return Instance::create(field, t, n, sender, std::move(users));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const Instance& inst) {
  const Field& f = inst.field();
  json j;
  j["p"] = f.p();
  j["e"] = f.e();
  j["t"] = inst.t();
  j["n"] = inst.n();
  j["m"] = inst.m();
  j["sender"] = inst.sender().to_rows();
  json users = json::array();
  for (const auto& u : inst.users())
    users.push_back({{"V", u.side_info.to_rows()}, {"R", u.request.to_rows().front()}});
  j["users"] = users;
  if (f.e() > 1) j["modulus"] = f.modulus();
  return j.dump();
}

Instance from_icsi(const Field& field, std::size_t n, const std::vector<std::size_t>& demands,
                   const std::vector<std::vector<std::size_t>>& side_sets, std::size_t t) {
  if (demands.size() != side_sets.size())
    throw ValidationError("demand list and side-information list differ in length");
  std::vector<UserSpec> users;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i] >= n) throw ValidationError("demanded packet index out of range", i);
    Matrix v(field, side_sets[i].size(), n);
    for (std::size_t k = 0; k < side_sets[i].size(); ++k) {
      const std::size_t j = side_sets[i][k];
      if (j >= n) throw ValidationError("cached packet index out of range", i);
      if (j == demands[i]) throw ValidationError("demanded packet already cached", i);
      v(k, j) = 1;
    }
    Matrix r(field, 1, n);
    r(0, demands[i]) = 1;
    users.push_back({std::move(v), std::move(r)});
  }
  return Instance::create(field, t, n, Matrix::identity(field, n), std::move(users));
}

Matrix intersection_basis(const Matrix& u, const Matrix& w) {
  if (u.cols() != w.cols()) throw std::invalid_argument("intersection_basis column mismatch");
  const Field& f = u.field();
  if (u.rows() == 0 || w.rows() == 0) return Matrix(f, 0, u.cols());
  // c [U; W] = 0 gives c_U U = -c_W W, an element of both spaces.
  const Matrix kernel = null_space(vstack(u, w).transpose());
  if (kernel.cols() == 0) return Matrix(f, 0, u.cols());
  const Matrix coeffs = kernel.row_range(0, u.rows()).transpose();
  return row_space_basis(coeffs * u);
}

Matrix side_information(const Instance& inst, std::size_t i, const Matrix& data) {
  return inst.user(i).side_info * data;
}

ConfusionSet::ConfusionSet(const Matrix& side_info, const Matrix& request, std::size_t t,
                           std::uint64_t budget)
    : request_(request), kernel_(null_space(side_info)), t_(t) {
  const BigInt total = big_pow(side_info.field().q(), kernel_.cols() * t_);
  exhaustive_ = total <= budget;
  counter_.assign(kernel_.cols() * t_, 0);
}

BigInt ConfusionSet::size() const {
  const std::uint64_t q = kernel_.field().q();
  const std::size_t k = kernel_.cols();
  if (k == 0) return 0;
  return big_pow(q, k * t_) - big_pow(q, (k - 1) * t_);
}

void ConfusionSet::reset() {
  std::fill(counter_.begin(), counter_.end(), 0);
  started_ = false;
  done_ = false;
}

bool ConfusionSet::next(Matrix& z) {
  if (!exhaustive_) throw BudgetExceeded("confusion set exceeds the enumeration budget");
  const Field& f = kernel_.field();
  const std::size_t k = kernel_.cols();
  while (!done_) {
    if (started_) {
      std::size_t pos = 0;
      while (pos < counter_.size()) {
        if (++counter_[pos] < f.q()) break;
        counter_[pos++] = 0;
      }
      if (pos == counter_.size()) {
        done_ = true;
        return false;
      }
    }
    started_ = true;
    if (counter_.empty()) {
      done_ = true;
      return false;
    }
    Matrix c(f, k, t_);
    for (std::size_t idx = 0; idx < counter_.size(); ++idx) c(idx % k, idx / k) = counter_[idx];
    Matrix cand = kernel_ * c;
    if (!(request_ * cand).is_zero()) {
      z = std::move(cand);
      return true;
    }
  }
  return false;
}

Matrix ConfusionSet::sample(Rng& rng) const {
  const Field& f = kernel_.field();
  if (kernel_.cols() == 0) throw std::logic_error("empty confusion set");
  for (;;) {
    Matrix cand = kernel_ * rng.matrix(f, kernel_.cols(), t_);
    if (!(request_ * cand).is_zero()) return cand;
  }
}

}  // namespace iccsi
