// Test-only corpus generators and independent oracles. Nothing here calls the
// code path it is used to check.
#ifndef POLYK_TESTS_SUPPORT_HPP
#define POLYK_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "polyk/cellular.hpp"
#include "polyk/cone_geometry.hpp"
#include "polyk/exact_linalg.hpp"
#include "polyk/polytope.hpp"

namespace polyk::testing {

inline QVector qvec(std::initializer_list<long> xs) {
  QVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

inline Polytope point_polytope() { return validate({QVector{}}, 0, "point"); }

inline Polytope segment() { return validate({qvec({0}), qvec({1})}, 1, "segment"); }

inline Polytope triangle() { return validate({qvec({0, 0}), qvec({1, 0}), qvec({0, 1})}, 2, "triangle"); }

inline Polytope unit_square() {
  return validate({qvec({0, 0}), qvec({1, 0}), qvec({1, 1}), qvec({0, 1})}, 2, "square");
}

inline Polytope quadrilateral() {
  return validate({qvec({0, 0}), qvec({3, 1}), qvec({4, 5}), qvec({1, 3})}, 2, "quadrilateral");
}

/// conv{0, e_1, ..., e_d}
inline Polytope standard_simplex(std::size_t d) {
  std::vector<QVector> v(d + 1, QVector(d));
  for (std::size_t i = 0; i < d; ++i) v[i + 1][i] = 1;
  return validate(v, d, "simplex" + std::to_string(d));
}

inline Polytope hypercube(std::size_t d) {
  std::vector<QVector> v;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    QVector p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = (mask >> i) & 1U;
    v.push_back(p);
  }
  return validate(v, d, "cube" + std::to_string(d));
}

inline Polytope cross_polytope(std::size_t d) {
  std::vector<QVector> v;
  for (std::size_t i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      QVector p(d);
      p[i] = s;
      v.push_back(p);
    }
  return validate(v, d, "cross" + std::to_string(d));
}

inline Polytope octahedron() { return validate(cross_polytope(3).vertices(), 3, "octahedron"); }

inline Rational random_rational(std::mt19937& rng, int num_range, int den_max) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Convex hull of <= max_points random rational points in R^d (d in 2..max_dim).
inline Polytope random_hull(std::mt19937& rng, std::size_t max_dim, std::size_t max_points, const std::string& name) {
  std::uniform_int_distribution<std::size_t> dim_dist(2, max_dim);
  for (;;) {
    const std::size_t d = dim_dist(rng);
    std::uniform_int_distribution<std::size_t> count(d + 1, max_points);
    const std::size_t n = count(rng);
    std::vector<QVector> pts(n, QVector(d));
    for (auto& p : pts)
      for (auto& x : p) x = random_rational(rng, 6, 3);
    try {
      std::vector<QVector> verts;
      for (auto i : hull_vertices(pts, d)) verts.push_back(pts[i]);
      return validate(verts, d, name);
    } catch (const PolytopeError&) {
      continue;  // degenerate draw
    }
  }
}

/// Random invertible affine image x -> M x + t, optionally permuting vertices.
inline Polytope random_affine_image(std::mt19937& rng, const Polytope& p, const std::string& name, bool shuffle) {
  const std::size_t d = p.dim();
  QMatrix m(d, d);
  do {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = random_rational(rng, 3, 2);
  } while (det_sign(m) == 0);
  QVector t(d);
  for (auto& x : t) x = random_rational(rng, 4, 3);
  std::vector<QVector> out;
  for (const auto& v : p.vertices()) {
    QVector w(d);
    for (std::size_t i = 0; i < d; ++i) {
      w[i] = t[i];
      for (std::size_t j = 0; j < d; ++j) w[i] += m(i, j) * v[j];
    }
    out.push_back(w);
  }
  if (shuffle) std::shuffle(out.begin(), out.end(), rng);
  return validate(out, d, name);
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Closed-form f-vectors (f_{-1}, ..., f_d).
inline std::vector<std::size_t> simplex_f_vector(std::size_t d) {
  std::vector<std::size_t> f;
  for (std::size_t j = 0; j <= d + 1; ++j) f.push_back(binomial(d + 1, j));
  return f;
}
inline std::vector<std::size_t> cube_f_vector(std::size_t d) {
  std::vector<std::size_t> f{1};
  for (std::size_t j = 0; j <= d; ++j) f.push_back(binomial(d, j) << (d - j));
  return f;
}
inline std::vector<std::size_t> cross_f_vector(std::size_t d) {
  std::vector<std::size_t> f{1};
  for (std::size_t j = 0; j < d; ++j) f.push_back(binomial(d, j + 1) << (j + 1));
  f.push_back(1);
  return f;
}

/// Standard simplicial boundary between index-ordered vertex sets:
/// d[v_0..v_j] = sum_i (-1)^i [v_0..^v_i..v_j], with d[v] = [empty].
inline ZMatrix simplicial_boundary(const std::vector<Face>& rows, const std::vector<Face>& cols) {
  ZMatrix d(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& s = cols[c].vertices;
    for (std::size_t i = 0; i < s.size(); ++i) {
      VertexSet sub = s;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].vertices == sub) d(r, c) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return d;
}

/// Counts entries where no diagonal +-1 conjugation can match `a` to `b`:
/// solves s_E s_F = b/a along nonzero entries by propagation, then counts
/// mismatching entries (zeros included).
inline std::size_t diagonal_sign_mismatches(const std::vector<ZMatrix>& a, const std::vector<ZMatrix>& b,
                                            const std::vector<std::size_t>& counts) {
  std::vector<std::vector<int>> sign;
  for (auto c : counts) sign.emplace_back(c, 0);
  std::size_t mismatches = 0;
  for (std::size_t lvl = 0; lvl < counts.size(); ++lvl)
    for (std::size_t start = 0; start < counts[lvl]; ++start) {
      if (sign[lvl][start] != 0) continue;
      sign[lvl][start] = 1;
      std::deque<std::pair<std::size_t, std::size_t>> q{{lvl, start}};
      while (!q.empty()) {
        auto [l, i] = q.front();
        q.pop_front();
        auto visit = [&](std::size_t ml, std::size_t r, std::size_t c, std::size_t ol, std::size_t oi) {
          const Integer& x = a[ml](r, c);
          const Integer& y = b[ml](r, c);
          if (x == 0 || y == 0) return;
          const int want = sign[l][i] * (x == y ? 1 : -1);
          if (sign[ol][oi] == 0) {
            sign[ol][oi] = want;
            q.push_back({ol, oi});
          }
        };
        // matrices[j] maps level j+1 (columns) to level j (rows)
        if (l + 1 < counts.size())
          for (std::size_t c = 0; c < counts[l + 1]; ++c) visit(l, i, c, l + 1, c);
        if (l > 0)
          for (std::size_t r = 0; r < counts[l - 1]; ++r) visit(l - 1, r, i, l - 1, r);
      }
    }
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t r = 0; r < a[j].rows(); ++r)
      for (std::size_t c = 0; c < a[j].cols(); ++c)
        if (b[j](r, c) != a[j](r, c) * sign[j][r] * sign[j + 1][c]) ++mismatches;
  return mismatches;
}

/// Invariant factors through determinantal divisors: d_k = gcd of k x k
/// minors, factor_k = d_k / d_{k-1}. Exponential; small matrices only.
inline std::vector<Integer> invariant_factors_by_minors(const ZMatrix& m) {
  const std::size_t n = std::min(m.rows(), m.cols());
  std::vector<Integer> divisors{1};
  for (std::size_t k = 1; k <= n; ++k) {
    Integer g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    std::function<void(std::size_t, std::size_t)> pick_cols;
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t start, std::size_t depth) {
      if (depth == k) {
        pick_cols(0, 0);
        return;
      }
      for (std::size_t i = start; i < m.rows(); ++i) {
        rs[depth] = i;
        pick_rows(i + 1, depth + 1);
      }
    };
    pick_cols = [&](std::size_t start, std::size_t depth) {
      if (depth == k) {
        ZMatrix sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rs[a], cs[b]);
        g = gcd(g, determinant(sub));
        return;
      }
      for (std::size_t j = start; j < m.cols(); ++j) {
        cs[depth] = j;
        pick_cols(j + 1, depth + 1);
      }
    };
    pick_rows(0, 0);
    divisors.push_back(g);
  }
  std::vector<Integer> factors;
  for (std::size_t k = 1; k <= n; ++k) factors.push_back(divisors[k - 1] == 0 ? Integer(0) : Integer(divisors[k] / divisors[k - 1]));
  return factors;
}

inline ZMatrix random_int_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  ZMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline QMatrix random_rational_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng, 4, 3);
  return m;
}

/// The four membership conditions on an edge ray, plus one-dimensionality of
/// the solution line, checked directly from their definitions.
inline bool edge_ray_invariants_hold(const LiftedCone& cone, const FaceConeData& lower, const FaceConeData& upper,
                                     const EdgeRay& ray) {
  const std::size_t n = cone.ambient_dim;
  const QVector e = to_rational(ray.direction);
  auto pair = [&](const ZVector& y) { return dot(to_rational(y), e); };
  if (rank(hcat(upper.span_basis, QMatrix::from_columns({e}, n))) != upper.span_basis.cols()) return false;
  const auto lower_lifted = lifted_vertices(cone, lower.face);
  for (const auto& x : lower_lifted)
    if (dot(e, x) != 0) return false;
  for (const auto& y : lower.dual_face_gens)
    if (pair(y) < 0) return false;
  for (const auto& y : upper.dual_face_gens)
    if (pair(y) != 0) return false;
  QMatrix rows(lower_lifted.size() + upper.dual_face_gens.size(), n);
  std::size_t r = 0;
  for (const auto& x : lower_lifted) {
    for (std::size_t c = 0; c < n; ++c) rows(r, c) = x[c];
    ++r;
  }
  for (const auto& y : upper.dual_face_gens) {
    for (std::size_t c = 0; c < n; ++c) rows(r, c) = y[c];
    ++r;
  }
  return n - rank(rows) == 1;
}

/// Simplices d = 1..5, cubes d = 1..4, cross-polytopes d = 1..4, and
/// `random_count` random hulls with <= 10 points in dimension <= 4.
inline std::vector<Polytope> acceptance_corpus(std::size_t random_count, unsigned seed = 20261016U) {
  std::vector<Polytope> c;
  for (std::size_t d = 1; d <= 5; ++d) c.push_back(standard_simplex(d));
  for (std::size_t d = 1; d <= 4; ++d) c.push_back(hypercube(d));
  for (std::size_t d = 1; d <= 4; ++d) c.push_back(cross_polytope(d));
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) c.push_back(random_hull(rng, 4, 10, "random" + std::to_string(i)));
  return c;
}

}  // namespace polyk::testing

#endif  // POLYK_TESTS_SUPPORT_HPP
