#include "iccsi/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "iccsi/error.hpp"

namespace iccsi {

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("matrices over different fields");
}

// Gauss-Jordan on m in place; optionally mirrors row operations on companion.
// Returns pivot columns. Only the first `limit_cols` columns are eligible.
std::vector<std::size_t> eliminate(Matrix& m, Matrix* companion, std::size_t limit_cols) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit_cols && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      std::swap_ranges(m.row_span(piv).begin(), m.row_span(piv).end(), m.row_span(r).begin());
      if (companion)
        std::swap_ranges(companion->row_span(piv).begin(), companion->row_span(piv).end(),
                         companion->row_span(r).begin());
    }
    const Elem inv = f.inv(m(r, c));
    if (inv != 1) {
      for (auto& x : m.row_span(r)) x = f.mul(x, inv);
      if (companion)
        for (auto& x : companion->row_span(r)) x = f.mul(x, inv);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Elem factor = m(i, c);
      auto dst = m.row_span(i);
      auto src = m.row_span(r);
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (src[j] != 0) dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
      if (companion) {
        auto cdst = companion->row_span(i);
        auto csrc = companion->row_span(r);
        for (std::size_t j = 0; j < companion->cols(); ++j)
          if (csrc[j] != 0) cdst[j] = f.sub(cdst[j], f.mul(factor, csrc[j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

namespace {
const Field& binary_field() {
  static const Field f = Field::make(2);
  return f;
}
}  // namespace

Matrix::Matrix() : Matrix(binary_field(), 0, 0) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<Elem>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw ValidationError("ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) {
      if (!field.contains(rows[r][c]))
        throw ValidationError("entry " + std::to_string(rows[r][c]) + " outside [0, q)");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::from_rows(Field field, std::initializer_list<std::initializer_list<Elem>> rows) {
  std::vector<std::vector<Elem>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(std::move(field), v);
}

Matrix Matrix::row_vector(Field field, const std::vector<Elem>& entries) {
  return from_rows(std::move(field), std::vector<std::vector<Elem>>{entries});
}

Matrix Matrix::column_vector(Field field, const std::vector<Elem>& entries) {
  return row_vector(std::move(field), entries).transpose();
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::row(std::size_t r) const { return block(r, 0, 1, cols_); }
Matrix Matrix::col(std::size_t c) const { return block(0, c, rows_, 1); }
Matrix Matrix::row_range(std::size_t b, std::size_t e) const { return block(b, 0, e - b, cols_); }
Matrix Matrix::col_range(std::size_t b, std::size_t e) const { return block(0, b, rows_, e - b); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
  Matrix out(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix out(field_, idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r)
    std::copy_n(row_span(idx[r]).begin(), cols_, out.row_span(r).begin());
  return out;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix out(field_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = (*this)(r, idx[c]);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
  if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_)
    throw std::out_of_range("set_block out of range");
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c) (*this)(r0 + r, c0 + c) = src(r, c);
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

bool Matrix::row_is_zero(std::size_t r) const {
  const auto s = row_span(r);
  return std::all_of(s.begin(), s.end(), [](Elem x) { return x == 0; });
}

std::vector<std::vector<Elem>> Matrix::to_rows() const {
  std::vector<std::vector<Elem>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row_span(r).begin(), row_span(r).end());
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], o.data_[i]);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.sub(data_[i], o.data_[i]);
  return *this;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
  const Field& f = a.field();
  Matrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row_span(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem x = a(i, k);
      if (x == 0) continue;
      const auto src = b.row_span(k);
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (src[j] != 0) dst[j] = f.add(dst[j], f.mul(x, src[j]));
    }
  }
  return out;
}

Matrix scale(Elem c, Matrix a) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (auto& x : a.row_span(r)) x = a.field().mul(c, x);
  return a;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Matrix out(a.field(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
  }
  os << ']';
  return os.str();
}

RrefResult rref(const Matrix& m) {
  Matrix work = m;
  Matrix transform = Matrix::identity(m.field(), m.rows());
  auto pivots = eliminate(work, &transform, work.cols());
  return {std::move(work), std::move(pivots), std::move(transform)};
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return eliminate(work, nullptr, work.cols()).size();
}

Matrix row_space_basis(const Matrix& m) {
  Matrix work = m;
  const auto pivots = eliminate(work, nullptr, work.cols());
  return work.row_range(0, pivots.size());
}

Matrix null_space(const Matrix& m) {
  Matrix work = m;
  const auto pivots = eliminate(work, nullptr, work.cols());
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(f, m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    basis(fc, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = f.neg(work(r, fc));
  }
  return basis;
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_right row mismatch");
  Matrix aug = hstack(a, b);
  const auto pivots = eliminate(aug, nullptr, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    for (std::size_t c = a.cols(); c < aug.cols(); ++c)
      if (aug(r, c) != 0) return std::nullopt;
  Matrix x(a.field(), a.cols(), b.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) x(pivots[r], c) = aug(r, a.cols() + c);
  return x;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("solve_left column mismatch");
  auto xt = solve_right(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

std::optional<Matrix> right_inverse(const Matrix& a) {
  if (rank(a) != a.rows()) return std::nullopt;
  return solve_right(a, Matrix::identity(a.field(), a.rows()));
}

bool in_row_space(const Matrix& a, const Matrix& v) { return solve_left(a, v).has_value(); }

std::size_t weight(const Matrix& m, Metric metric) {
  if (metric == Metric::Rank) return rank(m);
  std::size_t w = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row_is_zero(r)) ++w;
  return w;
}

const char* to_string(Metric metric) { return metric == Metric::Rank ? "rank" : "hamming"; }

Metric parse_metric(const std::string& s) {
  if (s == "hamming") return Metric::Hamming;
  if (s == "rank") return Metric::Rank;
  throw ValidationError("unknown metric '" + s + "' (expected hamming|rank)");
}

}  // namespace iccsi
