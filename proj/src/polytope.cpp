#include "polyk/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace polyk {

namespace {

// Supporting hyperplanes spanned by affinely independent d-subsets of the
// point set. Works for point sets containing redundant points as well.
std::vector<Facet> supporting_facets(const std::vector<QVector>& points, std::size_t d) {
  std::vector<Facet> out;
  if (d == 0) return out;
  std::map<ZVector, std::size_t> seen;
  const std::size_t n = points.size();
  std::vector<std::size_t> pick(d);

  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      QMatrix sys(d, d + 1);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) sys(r, c) = points[pick[r]][c];
        sys(r, d) = -1;
      }
      const QMatrix ker = kernel_basis(sys);
      if (ker.cols() != 1) return;
      QVector a(d);
      for (std::size_t c = 0; c < d; ++c) a[c] = ker(c, 0);
      Rational b = ker(d, 0);
      bool pos = false, neg = false;
      for (const auto& v : points) {
        const Rational s = dot(a, v) - b;
        if (s > 0) pos = true;
        if (s < 0) neg = true;
      }
      if (pos && neg) return;
      if (pos) {
        for (auto& x : a) x = -x;
        b = -b;
      }
      ZVector normal = primitive_integer(a);
      if (seen.count(normal)) return;
      std::size_t k = 0;
      while (a[k] == 0) ++k;
      const Rational scale = Rational(normal[k]) / a[k];
      Facet f{normal, b * scale, {}};
      const QVector qn = to_rational(normal);
      for (std::size_t i = 0; i < n; ++i)
        if (dot(qn, points[i]) == f.offset) f.vertices.push_back(i);
      seen.emplace(std::move(normal), out.size());
      out.push_back(std::move(f));
      return;
    }
    for (std::size_t i = start; i + (d - depth) <= n; ++i) {
      pick[depth] = i;
      recurse(i + 1, depth + 1);
    }
  };
  recurse(0, 0);
  std::sort(out.begin(), out.end(), [](const Facet& x, const Facet& y) { return x.vertices < y.vertices; });
  return out;
}

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool is_subset(const VertexSet& small, const VertexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

VertexSet all_indices(std::size_t n) {
  VertexSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

// Points whose carrier face (intersection of the facets through them) is a
// single point.
VertexSet carrier_singletons(const std::vector<QVector>& points, std::size_t dim) {
  const auto fs = supporting_facets(points, dim);
  VertexSet out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    VertexSet carrier = all_indices(points.size());
    for (const auto& f : fs)
      if (std::binary_search(f.vertices.begin(), f.vertices.end(), i)) carrier = intersect(carrier, f.vertices);
    if (carrier.size() == 1) out.push_back(i);
  }
  return out;
}

}  // namespace

VertexSet hull_vertices(const std::vector<QVector>& points, std::size_t dim) {
  std::vector<QVector> distinct;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::find(distinct.begin(), distinct.end(), points[i]) == distinct.end()) {
      distinct.push_back(points[i]);
      origin.push_back(i);
    }
  if (affine_dimension(distinct, all_indices(distinct.size())) != static_cast<int>(dim))
    throw PolytopeError(PolytopeError::Kind::NotFullDimensional, std::nullopt, "hull_vertices: points do not span");
  VertexSet out;
  for (auto i : carrier_singletons(distinct, dim)) out.push_back(origin[i]);
  return out;
}

int affine_dimension(const std::vector<QVector>& points, const VertexSet& subset) {
  if (subset.empty()) return -1;
  const std::size_t d = points[subset.front()].size();
  QMatrix diffs(d, subset.size() - 1);
  for (std::size_t k = 1; k < subset.size(); ++k)
    for (std::size_t c = 0; c < d; ++c) diffs(c, k - 1) = points[subset[k]][c] - points[subset.front()][c];
  return static_cast<int>(rank(diffs));
}

Polytope validate(std::vector<QVector> vertices, std::size_t dim, std::string name) {
  using Kind = PolytopeError::Kind;
  if (vertices.empty()) throw PolytopeError(Kind::Empty, std::nullopt, "vertex list is empty");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].size() != dim) {
      std::ostringstream os;
      os << "point " << i << " has " << vertices[i].size() << " coordinates, expected " << dim;
      throw PolytopeError(Kind::DimensionMismatch, i, os.str());
    }
  for (std::size_t i = 1; i < vertices.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (vertices[i] == vertices[j]) {
        std::ostringstream os;
        os << "point " << i << " duplicates point " << j;
        throw PolytopeError(Kind::Duplicate, i, os.str());
      }
  const int adim = affine_dimension(vertices, all_indices(vertices.size()));
  if (adim != static_cast<int>(dim)) {
    std::ostringstream os;
    os << "hull not full-dimensional: affine dimension " << adim << " < " << dim;
    throw PolytopeError(Kind::NotFullDimensional, std::nullopt, os.str());
  }
  // A point is a vertex iff the smallest face containing it is the point itself.
  const VertexSet extreme = carrier_singletons(vertices, dim);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!std::binary_search(extreme.begin(), extreme.end(), i)) {
      std::ostringstream os;
      os << "point " << i << " is not extreme";
      throw PolytopeError(Kind::NotExtreme, i, os.str());
    }
  return Polytope(dim, std::move(vertices), std::move(name));
}

std::vector<Facet> facets(const Polytope& p) { return supporting_facets(p.vertices(), p.dim()); }

FaceLattice::FaceLattice(int dim, std::vector<std::vector<Face>> levels,
                         std::vector<std::vector<std::vector<std::size_t>>> below)
    : dim_(dim) {
  if (levels.size() != static_cast<std::size_t>(dim + 2) || below.size() != levels.size())
    throw std::invalid_argument("FaceLattice: level count must be dim + 2");
  // Sort each level lexicographically and remap cover lists.
  std::vector<std::vector<std::size_t>> new_index(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::vector<std::size_t> order(levels[k].size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return levels[k][a].vertices < levels[k][b].vertices;
    });
    new_index[k].resize(order.size());
    std::vector<Face> sorted;
    sorted.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      new_index[k][order[i]] = i;
      sorted.push_back(std::move(levels[k][order[i]]));
    }
    levels_.push_back(std::move(sorted));
  }
  below_.resize(levels_.size());
  above_.resize(levels_.size());
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    below_[k].resize(levels_[k].size());
    above_[k].resize(levels_[k].size());
  }
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (below[k].size() != levels_[k].size()) throw std::invalid_argument("FaceLattice: cover list size mismatch");
    for (std::size_t i = 0; i < below[k].size(); ++i) {
      auto& dst = below_[k][new_index[k][i]];
      for (auto e : below[k][i]) {
        if (k == 0 || e >= levels_[k - 1].size()) throw std::invalid_argument("FaceLattice: cover index out of range");
        dst.push_back(new_index[k - 1][e]);
      }
      std::sort(dst.begin(), dst.end());
    }
  }
  for (std::size_t k = 1; k < levels_.size(); ++k)
    for (std::size_t i = 0; i < below_[k].size(); ++i)
      for (auto e : below_[k][i]) above_[k - 1][e].push_back(i);
}

std::optional<std::size_t> FaceLattice::find(int face_dim, const VertexSet& vertices) const {
  if (face_dim < -1 || face_dim > dim_) return std::nullopt;
  const auto& lvl = faces(face_dim);
  auto it = std::lower_bound(lvl.begin(), lvl.end(), vertices,
                             [](const Face& f, const VertexSet& v) { return f.vertices < v; });
  if (it == lvl.end() || it->vertices != vertices) return std::nullopt;
  return static_cast<std::size_t>(it - lvl.begin());
}

std::vector<std::size_t> FaceLattice::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& l : levels_) f.push_back(l.size());
  return f;
}

std::vector<CoveringPair> FaceLattice::covering() const {
  std::vector<CoveringPair> out;
  for (int j = 0; j <= dim_; ++j) {
    auto part = covering_pairs(*this, j);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::size_t FaceLattice::total_faces() const {
  std::size_t n = 0;
  for (const auto& l : levels_) n += l.size();
  return n;
}

FaceLattice face_lattice(const Polytope& p) {
  const int d = static_cast<int>(p.dim());
  const VertexSet top = all_indices(p.num_vertices());
  std::set<VertexSet> closure{top};
  std::vector<VertexSet> frontier{top};
  const auto fs = facets(p);
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (const auto& g : frontier)
      for (const auto& f : fs) {
        VertexSet s = intersect(g, f.vertices);
        if (closure.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  closure.insert(VertexSet{});

  std::vector<std::vector<Face>> levels(static_cast<std::size_t>(d + 2));
  for (const auto& s : closure) {
    const int fd = affine_dimension(p.vertices(), s);
    levels[static_cast<std::size_t>(fd + 1)].push_back(Face{s, fd});
  }
  std::vector<std::vector<std::vector<std::size_t>>> below(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    below[k].resize(levels[k].size());
    if (k == 0) continue;
    for (std::size_t i = 0; i < levels[k].size(); ++i)
      for (std::size_t e = 0; e < levels[k - 1].size(); ++e)
        if (is_subset(levels[k - 1][e].vertices, levels[k][i].vertices)) below[k][i].push_back(e);
  }
  return FaceLattice(d, std::move(levels), std::move(below));
}

std::vector<CoveringPair> covering_pairs(const FaceLattice& lattice, int j) {
  if (j < 0 || j > lattice.dim()) throw std::out_of_range("covering_pairs: dimension out of range");
  std::vector<CoveringPair> out;
  for (std::size_t i = 0; i < lattice.count(j); ++i) {
    const FaceRef upper{j, i};
    for (auto e : lattice.below(upper)) out.push_back({FaceRef{j - 1, e}, upper});
  }
  return out;
}

std::optional<std::string> check_lattice(const FaceLattice& lattice) {
  const int d = lattice.dim();
  if (d < -1) return "negative rank";
  if (lattice.count(-1) != 1) return "lattice must have a unique bottom face";
  if (lattice.count(d) != 1) return "lattice must have a unique top face";
  for (int k = -1; k <= d; ++k)
    for (std::size_t i = 0; i < lattice.count(k); ++i) {
      const FaceRef r{k, i};
      if (k >= 0 && lattice.below(r).empty()) {
        std::ostringstream os;
        os << "face " << format_vertex_set(lattice.face(r).vertices) << " of rank " << k << " covers nothing";
        return os.str();
      }
      if (k < d && lattice.above(r).empty()) {
        std::ostringstream os;
        os << "face " << format_vertex_set(lattice.face(r).vertices) << " of rank " << k << " is not covered";
        return os.str();
      }
    }
  // Diamond property: each rank-2 interval has exactly two middle elements.
  for (int k = 1; k <= d; ++k)
    for (std::size_t g = 0; g < lattice.count(k); ++g) {
      std::map<std::size_t, int> middle;
      for (auto f : lattice.below({k, g}))
        for (auto e : lattice.below({k - 1, f})) ++middle[e];
      for (const auto& [e, c] : middle)
        if (c != 2) {
          std::ostringstream os;
          os << "diamond property fails on interval [" << format_vertex_set(lattice.face({k - 2, e}).vertices) << ", "
             << format_vertex_set(lattice.face({k, g}).vertices) << "]: " << c << " middle faces";
          return os.str();
        }
    }
  return std::nullopt;
}

long long euler_characteristic_sum(const std::vector<std::size_t>& f_vector) {
  long long s = 0;
  for (std::size_t k = 0; k < f_vector.size(); ++k) {
    const int j = static_cast<int>(k) - 1;
    s += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(f_vector[k]);
  }
  return s;
}

std::string format_vertex_set(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace polyk
