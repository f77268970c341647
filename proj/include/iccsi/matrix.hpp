#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iccsi/field.hpp"

namespace iccsi {

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  /// 0 x 0 matrix over F_2; a placeholder to be assigned.
  Matrix();
  /// rows x cols zero matrix.
  Matrix(Field field, std::size_t rows, std::size_t cols);

  /// Throws ValidationError on ragged rows or entries outside [0, q).
  static Matrix from_rows(Field field, const std::vector<std::vector<Elem>>& rows);
  static Matrix from_rows(Field field, std::initializer_list<std::initializer_list<Elem>> rows);
  static Matrix row_vector(Field field, const std::vector<Elem>& entries);
  static Matrix column_vector(Field field, const std::vector<Elem>& entries);
  static Matrix identity(Field field, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Elem> row_span(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Elem> row_span(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  Matrix row(std::size_t r) const;
  Matrix col(std::size_t c) const;
  /// Rows [begin, end).
  Matrix row_range(std::size_t begin, std::size_t end) const;
  /// Columns [begin, end).
  Matrix col_range(std::size_t begin, std::size_t end) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& src);

  Matrix transpose() const;
  bool is_zero() const;
  bool row_is_zero(std::size_t r) const;

  std::vector<std::vector<Elem>> to_rows() const;
  const std::vector<Elem>& data() const { return data_; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

bool operator==(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix scale(Elem c, Matrix a);

/// [a | b]; row counts must match.
Matrix hstack(const Matrix& a, const Matrix& b);
/// [a ; b]; column counts must match.
Matrix vstack(const Matrix& a, const Matrix& b);

std::string to_string(const Matrix& m);

struct RrefResult {
  Matrix rref;
  /// Pivot column of each nonzero row, ascending.
  std::vector<std::size_t> pivots;
  /// Invertible, with transform * input == rref.
  Matrix transform;

  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form, pivoting on the lowest-index available row.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// The nonzero rows of rref(m): the canonical basis of the row space.
Matrix row_space_basis(const Matrix& m);

/// Columns form a basis of {x : m x = 0}; one column per free variable, with
/// that variable set to 1 and the other free variables 0.
Matrix null_space(const Matrix& m);

/// X with a * X == b, free variables zero; nullopt if inconsistent.
std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);

/// X with X * a == b, free variables zero; nullopt if some row of b lies
/// outside the row space of a.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

/// B with a * B == I, when a has full row rank.
std::optional<Matrix> right_inverse(const Matrix& a);

/// True when every row of v is in the row space of a.
bool in_row_space(const Matrix& a, const Matrix& v);

enum class Metric { Hamming, Rank };

/// Hamming: number of nonzero rows. Rank: matrix rank.
std::size_t weight(const Matrix& m, Metric metric);

const char* to_string(Metric metric);
Metric parse_metric(const std::string& s);

}  // namespace iccsi
