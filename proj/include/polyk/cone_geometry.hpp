#ifndef POLYK_CONE_GEOMETRY_HPP
#define POLYK_CONE_GEOMETRY_HPP

#include <stdexcept>
#include <vector>

#include "polyk/exact_linalg.hpp"
#include "polyk/polytope.hpp"

namespace polyk {

/// Raised when a cone construction meets a configuration that valid
/// polytope input cannot produce (non-solid cone, degenerate edge ray).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * The cone R+ (1 x P) in R^{d+1}. `generators` are the lifted vertices
 * (1, v_i) in vertex order; `dual_generators` are the primitive inward facet
 * normals, i.e. the extreme rays of the dual cone.
 */
struct LiftedCone {
  std::size_t ambient_dim = 0;
  std::vector<QVector> generators;
  std::vector<ZVector> dual_generators;
};

LiftedCone lift(const Polytope& p);

/// Generators of {y : <y, g> >= 0 for all g}. The input must span its
/// ambient space; the output is the sorted list of primitive facet normals.
std::vector<ZVector> dual_cone(const std::vector<QVector>& generators);

/// Dual of cone(generators) taken inside W = column span of `span_basis`,
/// using the ambient inner product. The generators must span W.
std::vector<ZVector> dual_cone_in_span(const std::vector<QVector>& generators, const QMatrix& span_basis);

/// Per-face cone data.
///  - span_basis: lifted vertices of F forming a basis of Span(Omega_F),
///    chosen greedily in vertex order (dim F + 1 columns).
///  - dual_face_gens: generators of the dual face Omega_F^perp cap Omega^*.
///  - dual_span_basis: basis of the span of the dual face.
///  - circledast_gens: generators of the dual of the dual face inside its span.
struct FaceConeData {
  Face face;
  QMatrix span_basis;
  std::vector<ZVector> dual_face_gens;
  QMatrix dual_span_basis;
  std::vector<ZVector> circledast_gens;
};

FaceConeData face_cone_data(const LiftedCone& cone, const Face& face);

/// Cone data for every face of the lattice, indexed like the lattice levels.
class ConeAtlas {
 public:
  ConeAtlas(const LiftedCone& cone, const FaceLattice& lattice);
  const FaceConeData& at(FaceRef r) const { return data_.at(static_cast<std::size_t>(r.dim + 1)).at(r.index); }
  const LiftedCone& cone() const { return cone_; }

 private:
  LiftedCone cone_;
  std::vector<std::vector<FaceConeData>> data_;
};

struct EdgeRay {
  Face lower;
  Face upper;
  ZVector direction;
};

/// Primitive generator of the one-dimensional cone
/// (dual face of `upper`)^perp cap (circledast cone of `lower`).
EdgeRay edge_ray(const LiftedCone& cone, const FaceConeData& lower, const FaceConeData& upper);
EdgeRay edge_ray(const LiftedCone& cone, const Face& lower, const Face& upper);

/// Independent construction: barycentre of the lifted vertices of `upper`
/// minus its orthogonal projection onto Span(Omega_lower).
QVector edge_ray_crosscheck(const LiftedCone& cone, const Face& lower, const Face& upper);

/// True when a = t * b for some rational t > 0.
bool is_positive_multiple(const QVector& a, const QVector& b);

/// Lifted vertices (1, v) of the face, in vertex order.
std::vector<QVector> lifted_vertices(const LiftedCone& cone, const Face& face);

}  // namespace polyk

#endif  // POLYK_CONE_GEOMETRY_HPP
