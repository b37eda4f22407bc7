#include "polyk/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace polyk {

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(ZMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += f * row[src]
void add_row(ZMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
void negate_row(ZMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}
void add_col(ZMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

QMatrix to_rational(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  return q;
}

QVector to_rational(const ZVector& v) {
  QVector q;
  q.reserve(v.size());
  for (const auto& x : v) q.emplace_back(x);
  return q;
}

QMatrix hcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw LinalgError("hcat: row count mismatch");
  QMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw LinalgError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ZVector primitive_integer(const QVector& v) {
  Integer lcm_den = 1;
  for (const auto& x : v) lcm_den = lcm(lcm_den, Integer(x.get_den()));
  ZVector z;
  z.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer k = x.get_num() * (lcm_den / x.get_den());
    g = gcd(g, k);
    z.push_back(std::move(k));
  }
  if (g == 0) throw LinalgError("primitive_integer: zero vector");
  for (auto& k : z) k /= g;
  return z;
}

std::size_t rank(const QMatrix& m) {
  QMatrix w = m;
  return rref(w).size();
}

std::size_t rank(const ZMatrix& m) { return rank(to_rational(m)); }

int det_sign(const QMatrix& m) {
  if (m.rows() != m.cols()) throw LinalgError("det_sign: matrix is not square");
  QMatrix w = m;
  const std::size_t n = w.rows();
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
      sign = -sign;
    }
    if (w(c, c) < 0) sign = -sign;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (w(i, c) == 0) continue;
      const Rational f = w(i, c) / w(c, c);
      for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return sign;
}

QMatrix coords_in_basis(const QMatrix& basis, const QMatrix& targets) {
  if (basis.rows() != targets.rows()) throw LinalgError("coords_in_basis: row count mismatch");
  const std::size_t k = basis.cols();
  QMatrix aug = hcat(basis, targets);
  const auto pivots = rref(aug);
  if (pivots.size() < k || (k > 0 && pivots[k - 1] != k - 1))
    throw LinalgError("coords_in_basis: basis columns are linearly dependent");
  if (pivots.size() > k) throw LinalgError("coords_in_basis: target column outside the basis span");
  QMatrix x(k, targets.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < targets.cols(); ++j) x(i, j) = aug(i, k + j);
  return x;
}

QMatrix kernel_basis(const QMatrix& m) {
  QMatrix w = m;
  const auto pivots = rref(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> cols;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w(r, f);
    cols.push_back(std::move(v));
  }
  return QMatrix::from_columns(cols, m.cols());
}

std::vector<std::size_t> greedy_independent_columns(const QMatrix& m) {
  QMatrix w = m;
  return rref(w);  // pivot columns of the RREF are exactly the greedy choice
}

SNFResult smith_normal_form(const ZMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SNFResult r{ZMatrix::identity(rows), m, ZMatrix::identity(cols), {}};
  ZMatrix& D = r.D;
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    // Pivot on the smallest nonzero magnitude in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (D(i, j) != 0 && (pi == rows || abs_int(D(i, j)) < abs_int(D(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    swap_rows(D, t, pi);
    swap_rows(r.U, t, pi);
    swap_cols(D, t, pj);
    swap_cols(r.V, t, pj);

    for (;;) {
      bool remainder = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        const Integer q = D(i, t) / D(t, t);
        add_row(D, i, t, -q);
        add_row(r.U, i, t, -q);
        if (D(i, t) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        const Integer q = D(t, j) / D(t, t);
        add_col(D, j, t, -q);
        add_col(r.V, j, t, -q);
        if (D(t, j) != 0) remainder = true;
      }
      if (remainder) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (D(i, t) != 0 && abs_int(D(i, t)) < abs_int(D(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(t, j) != 0 && abs_int(D(t, j)) < abs_int(D(bi, bj))) {
            bi = t;
            bj = j;
          }
        swap_rows(D, t, bi);
        swap_rows(r.U, t, bi);
        swap_cols(D, t, bj);
        swap_cols(r.V, t, bj);
        continue;
      }
      // Row and column t are clear; enforce divisibility of the trailing block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(D, t, bad, 1);
      add_row(r.U, t, bad, 1);
    }
    if (D(t, t) < 0) {
      negate_row(D, t);
      negate_row(r.U, t);
    }
  }
  r.diagonal.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) r.diagonal.push_back(D(t, t));
  return r;
}

Integer determinant(const ZMatrix& m) {
  if (m.rows() != m.cols()) throw LinalgError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  ZMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string to_string(const ZMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  os << ']';
  return os.str();
}

}  // namespace polyk
