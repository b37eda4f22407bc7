#ifndef POLYK_POLYTOPE_HPP
#define POLYK_POLYTOPE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyk/exact_linalg.hpp"

namespace polyk {

using VertexSet = std::vector<std::size_t>;  // sorted, duplicate-free

/// Validation failure for a vertex list. `index` names the offending point
/// when the failure is attributable to one.
class PolytopeError : public std::runtime_error {
 public:
  enum class Kind { Empty, DimensionMismatch, Duplicate, NotExtreme, NotFullDimensional };

  PolytopeError(Kind kind, std::optional<std::size_t> index, const std::string& what)
      : std::runtime_error(what), kind_(kind), index_(index) {}

  Kind kind() const { return kind_; }
  std::optional<std::size_t> index() const { return index_; }

 private:
  Kind kind_;
  std::optional<std::size_t> index_;
};

/// Full-dimensional convex polytope in V-representation with rational
/// vertices. Only obtainable through `validate`.
class Polytope {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<QVector>& vertices() const { return vertices_; }
  const QVector& vertex(std::size_t i) const { return vertices_[i]; }
  std::size_t num_vertices() const { return vertices_.size(); }
  const std::string& name() const { return name_; }

  friend Polytope validate(std::vector<QVector> vertices, std::size_t dim, std::string name);

 private:
  Polytope(std::size_t dim, std::vector<QVector> vertices, std::string name)
      : dim_(dim), vertices_(std::move(vertices)), name_(std::move(name)) {}

  std::size_t dim_;
  std::vector<QVector> vertices_;
  std::string name_;
};

/// Checks that the points are pairwise distinct, all extreme, and affinely
/// span R^dim. Throws PolytopeError on the first violation.
Polytope validate(std::vector<QVector> vertices, std::size_t dim, std::string name = {});

/// Indices of the extreme points of a finite point set in R^dim (first
/// occurrence kept for repeated points). The set must affinely span R^dim.
VertexSet hull_vertices(const std::vector<QVector>& points, std::size_t dim);

/// Supporting hyperplane <normal, x> <= offset with a primitive integer
/// normal, together with the vertices it contains.
struct Facet {
  ZVector normal;
  Rational offset;
  VertexSet vertices;
};

/// Complete, duplicate-free facet list ordered by vertex set. Empty for d = 0.
std::vector<Facet> facets(const Polytope& p);

/// Affine dimension of a point subset; -1 for the empty set.
int affine_dimension(const std::vector<QVector>& points, const VertexSet& subset);

struct Face {
  VertexSet vertices;
  int dim = -1;
};

/// Position of a face: its dimension and index within that dimension.
struct FaceRef {
  int dim = -1;
  std::size_t index = 0;
  friend bool operator==(const FaceRef&, const FaceRef&) = default;
  friend auto operator<=>(const FaceRef&, const FaceRef&) = default;
};

struct CoveringPair {
  FaceRef lower;
  FaceRef upper;
  friend bool operator==(const CoveringPair&, const CoveringPair&) = default;
};

/**
 * Graded lattice of faces, including the empty face (dim -1) and the top
 * face. Faces of each dimension are ordered lexicographically by vertex set;
 * covering relations are stored both downwards and upwards.
 */
class FaceLattice {
 public:
  FaceLattice() = default;

  /// `levels[k]` holds the faces of dimension k - 1. `below[k][i]` lists the
  /// indices in level k - 1 covered by face i of level k. Faces within a level
  /// are sorted here and the cover lists renumbered accordingly.
  FaceLattice(int dim, std::vector<std::vector<Face>> levels,
              std::vector<std::vector<std::vector<std::size_t>>> below);

  int dim() const { return dim_; }
  std::size_t count(int face_dim) const { return levels_.at(static_cast<std::size_t>(face_dim + 1)).size(); }
  const std::vector<Face>& faces(int face_dim) const { return levels_.at(static_cast<std::size_t>(face_dim + 1)); }
  const Face& face(FaceRef r) const { return faces(r.dim).at(r.index); }
  const std::vector<std::size_t>& below(FaceRef r) const {
    return below_.at(static_cast<std::size_t>(r.dim + 1)).at(r.index);
  }
  const std::vector<std::size_t>& above(FaceRef r) const {
    return above_.at(static_cast<std::size_t>(r.dim + 1)).at(r.index);
  }
  /// Index of the face with exactly this vertex set, if present.
  std::optional<std::size_t> find(int face_dim, const VertexSet& vertices) const;

  /// (f_{-1}, f_0, ..., f_d)
  std::vector<std::size_t> f_vector() const;
  std::vector<CoveringPair> covering() const;
  std::size_t total_faces() const;

 private:
  int dim_ = -1;
  std::vector<std::vector<Face>> levels_;
  std::vector<std::vector<std::vector<std::size_t>>> below_;
  std::vector<std::vector<std::vector<std::size_t>>> above_;
};

FaceLattice face_lattice(const Polytope& p);

/// Covering pairs with dim E = j - 1, dim F = j, for 0 <= j <= d.
std::vector<CoveringPair> covering_pairs(const FaceLattice& lattice, int j);

/// Verifies unique bottom and top, gradedness and the diamond property.
/// Returns a description of the first violation, or nullopt.
std::optional<std::string> check_lattice(const FaceLattice& lattice);

/// Sum over j = -1..d of (-1)^j f_j.
long long euler_characteristic_sum(const std::vector<std::size_t>& f_vector);

std::string format_vertex_set(const VertexSet& s);

}  // namespace polyk

#endif  // POLYK_POLYTOPE_HPP
