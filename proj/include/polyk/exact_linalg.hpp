#ifndef POLYK_EXACT_LINALG_HPP
#define POLYK_EXACT_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace polyk {

using Integer = mpz_class;
using Rational = mpq_class;  // gmpxx keeps arithmetic results canonical
using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;

/// Raised when an exact linear-algebra precondition fails (singular basis,
/// target outside a span, non-square determinant).
class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Dense row-major matrix over an exact scalar type. Shapes with zero rows or
 * zero columns are legal and behave as rank-0 maps.
 */
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw LinalgError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw LinalgError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& entries() const { return data_; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw LinalgError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

QMatrix to_rational(const ZMatrix& m);

/// Horizontal concatenation; both operands must have the same row count.
QMatrix hcat(const QMatrix& a, const QMatrix& b);

Rational dot(const QVector& a, const QVector& b);

/// Scales a nonzero rational vector by a positive factor to the unique
/// primitive integer vector on the same ray.
ZVector primitive_integer(const QVector& v);
QVector to_rational(const ZVector& v);

std::size_t rank(const QMatrix& m);
std::size_t rank(const ZMatrix& m);

/// Sign of the determinant of a square matrix. Throws LinalgError otherwise.
int det_sign(const QMatrix& m);

/// Solves B·X = T exactly. B must have independent columns and every column
/// of T must lie in the column span of B.
QMatrix coords_in_basis(const QMatrix& basis, const QMatrix& targets);

/// Columns form a basis of the right null space over the rationals.
QMatrix kernel_basis(const QMatrix& m);

/// Indices of a maximal independent subset of columns, chosen greedily left
/// to right.
std::vector<std::size_t> greedy_independent_columns(const QMatrix& m);

struct SNFResult {
  ZMatrix U;  // rows x rows, unimodular
  ZMatrix D;  // same shape as the input
  ZMatrix V;  // cols x cols, unimodular
  std::vector<Integer> diagonal;  // min(rows, cols) invariant factors, zeros trailing
};

/// Smith normal form with transforms: U·M·V = D.
SNFResult smith_normal_form(const ZMatrix& m);

/// Exact integer determinant (Bareiss). Used to certify unimodularity.
Integer determinant(const ZMatrix& m);

std::string to_string(const ZMatrix& m);

}  // namespace polyk

#endif  // POLYK_EXACT_LINALG_HPP
