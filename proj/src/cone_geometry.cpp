#include "polyk/cone_geometry.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace polyk {

namespace {

QMatrix rows_matrix(const std::vector<QVector>& rows, std::size_t width) {
  QMatrix m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<QVector> as_rational(const std::vector<ZVector>& v) {
  std::vector<QVector> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(to_rational(z));
  return out;
}

QMatrix greedy_basis(const std::vector<QVector>& vectors, std::size_t ambient) {
  const QMatrix all = QMatrix::from_columns(vectors, ambient);
  std::vector<QVector> picked;
  for (auto c : greedy_independent_columns(all)) picked.push_back(vectors[c]);
  return QMatrix::from_columns(picked, ambient);
}

}  // namespace

std::vector<QVector> lifted_vertices(const LiftedCone& cone, const Face& face) {
  std::vector<QVector> out;
  out.reserve(face.vertices.size());
  for (auto i : face.vertices) out.push_back(cone.generators.at(i));
  return out;
}

std::vector<ZVector> dual_cone(const std::vector<QVector>& generators) {
  if (generators.empty()) return {};
  const std::size_t k = generators.front().size();
  if (rank(QMatrix::from_columns(generators, k)) != k)
    throw GeometryError("dual_cone: input cone is not solid in its declared span");
  if (k == 0) return {};

  // Distinct rays only; repeated directions would just repeat subsets.
  std::set<ZVector> rays;
  for (const auto& g : generators)
    if (std::any_of(g.begin(), g.end(), [](const Rational& x) { return x != 0; })) rays.insert(primitive_integer(g));
  const std::vector<QVector> gens = as_rational({rays.begin(), rays.end()});

  std::set<ZVector> normals;
  std::vector<std::size_t> pick(k - 1);
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t start, std::size_t depth) {
    if (depth + 1 == k) {
      std::vector<QVector> rows;
      for (auto i : pick) rows.push_back(gens[i]);
      const QMatrix ker = kernel_basis(rows_matrix(rows, k));
      if (ker.cols() != 1) return;
      QVector y = ker.column(0);
      bool pos = false, neg = false;
      for (const auto& g : gens) {
        const Rational s = dot(y, g);
        if (s > 0) pos = true;
        if (s < 0) neg = true;
      }
      if (pos && neg) return;
      if (!pos && !neg) return;  // hyperplane contains every generator
      if (neg)
        for (auto& x : y) x = -x;
      normals.insert(primitive_integer(y));
      return;
    }
    for (std::size_t i = start; i + (k - 1 - depth) <= gens.size(); ++i) {
      pick[depth] = i;
      recurse(i + 1, depth + 1);
    }
  };
  recurse(0, 0);
  return {normals.begin(), normals.end()};
}

std::vector<ZVector> dual_cone_in_span(const std::vector<QVector>& generators, const QMatrix& span_basis) {
  const std::size_t m = span_basis.cols();
  if (m == 0) return {};
  const QMatrix coords = coords_in_basis(span_basis, QMatrix::from_columns(generators, span_basis.rows()));
  const QMatrix gram = span_basis.transposed() * span_basis;
  // <W c, W c_y> = c . (G c_y): dualise the Gram-transformed coordinates.
  const QMatrix transformed = gram * coords;
  std::vector<QVector> tgens;
  for (std::size_t j = 0; j < transformed.cols(); ++j) tgens.push_back(transformed.column(j));
  std::vector<ZVector> out;
  for (const auto& c : dual_cone(tgens)) {
    const QMatrix x = span_basis * QMatrix::from_columns({to_rational(c)}, m);
    out.push_back(primitive_integer(x.column(0)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

LiftedCone lift(const Polytope& p) {
  LiftedCone c;
  c.ambient_dim = p.dim() + 1;
  for (const auto& v : p.vertices()) {
    QVector g;
    g.reserve(c.ambient_dim);
    g.emplace_back(1);
    g.insert(g.end(), v.begin(), v.end());
    c.generators.push_back(std::move(g));
  }
  if (rank(QMatrix::from_columns(c.generators, c.ambient_dim)) != c.ambient_dim)
    throw GeometryError("lift: lifted cone is not solid");
  // Pointedness is witnessed by (1, 0, ..., 0), positive on every generator.
  c.dual_generators = dual_cone(c.generators);
  return c;
}

FaceConeData face_cone_data(const LiftedCone& cone, const Face& face) {
  const std::size_t n = cone.ambient_dim;
  FaceConeData data;
  data.face = face;
  const auto lifted = lifted_vertices(cone, face);
  data.span_basis = greedy_basis(lifted, n);
  if (static_cast<int>(data.span_basis.cols()) != face.dim + 1)
    throw GeometryError("face_cone_data: span dimension disagrees with face dimension");

  for (const auto& g : cone.dual_generators) {
    const QVector qg = to_rational(g);
    if (std::all_of(lifted.begin(), lifted.end(), [&](const QVector& x) { return dot(qg, x) == 0; }))
      data.dual_face_gens.push_back(g);
  }
  const auto dual_gens = as_rational(data.dual_face_gens);
  data.dual_span_basis = dual_gens.empty() ? QMatrix(n, 0) : greedy_basis(dual_gens, n);
  data.circledast_gens = dual_gens.empty() ? std::vector<ZVector>{} : dual_cone_in_span(dual_gens, data.dual_span_basis);
  return data;
}

ConeAtlas::ConeAtlas(const LiftedCone& cone, const FaceLattice& lattice) : cone_(cone) {
  for (int k = -1; k <= lattice.dim(); ++k) {
    std::vector<FaceConeData> level;
    for (const auto& f : lattice.faces(k)) level.push_back(face_cone_data(cone, f));
    data_.push_back(std::move(level));
  }
}

EdgeRay edge_ray(const LiftedCone& cone, const FaceConeData& lower, const FaceConeData& upper) {
  const std::size_t n = cone.ambient_dim;
  // The ray lies in Omega_E^perp (the span of the dual face of E) and is
  // orthogonal to the dual face of F.
  std::vector<QVector> constraints = lifted_vertices(cone, lower.face);
  for (const auto& g : upper.dual_face_gens) constraints.push_back(to_rational(g));
  const QMatrix ker = kernel_basis(rows_matrix(constraints, n));
  if (ker.cols() != 1) {
    std::ostringstream os;
    os << "edge_ray: intersection for " << format_vertex_set(lower.face.vertices) << " < "
       << format_vertex_set(upper.face.vertices) << " has dimension " << ker.cols();
    throw GeometryError(os.str());
  }
  QVector dir = ker.column(0);
  bool pos = false, neg = false;
  for (const auto& g : lower.dual_face_gens) {
    const Rational s = dot(dir, to_rational(g));
    if (s > 0) pos = true;
    if (s < 0) neg = true;
  }
  if (pos == neg) throw GeometryError("edge_ray: line is not a ray of the circledast cone");
  if (neg)
    for (auto& x : dir) x = -x;
  return EdgeRay{lower.face, upper.face, primitive_integer(dir)};
}

EdgeRay edge_ray(const LiftedCone& cone, const Face& lower, const Face& upper) {
  return edge_ray(cone, face_cone_data(cone, lower), face_cone_data(cone, upper));
}

QVector edge_ray_crosscheck(const LiftedCone& cone, const Face& lower, const Face& upper) {
  const std::size_t n = cone.ambient_dim;
  const auto lifted = lifted_vertices(cone, upper);
  if (lifted.empty()) throw GeometryError("edge_ray_crosscheck: empty upper face");
  QVector bary(n);
  for (const auto& x : lifted)
    for (std::size_t i = 0; i < n; ++i) bary[i] += x[i];
  for (auto& x : bary) x /= static_cast<long>(lifted.size());

  const QMatrix basis = greedy_basis(lifted_vertices(cone, lower), n);
  QVector out = bary;
  if (basis.cols() > 0) {
    // Orthogonal projection onto the column span: A (A^T A)^{-1} A^T b.
    const QMatrix at = basis.transposed();
    const QMatrix rhs = at * QMatrix::from_columns({bary}, n);
    const QMatrix coef = coords_in_basis(at * basis, rhs);
    const QMatrix proj = basis * coef;
    for (std::size_t i = 0; i < n; ++i) out[i] -= proj(i, 0);
  }
  if (std::all_of(out.begin(), out.end(), [](const Rational& x) { return x == 0; }))
    throw GeometryError("edge_ray_crosscheck: projection vanishes");
  return out;
}

bool is_positive_multiple(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) return false;
  Rational ratio = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return false;
    if (a[i] == 0) continue;
    const Rational r = a[i] / b[i];
    if (ratio == 0) ratio = r;
    if (r != ratio) return false;
  }
  return ratio > 0;
}

}  // namespace polyk
