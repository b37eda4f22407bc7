#ifndef POLYK_CELLULAR_HPP
#define POLYK_CELLULAR_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "polyk/cone_geometry.hpp"
#include "polyk/exact_linalg.hpp"
#include "polyk/polytope.hpp"

namespace polyk {

/// Raised when the assembled boundary maps fail d o d = 0 or a sign
/// determinant degenerates.
class ComplexError : public std::runtime_error {
 public:
  ComplexError(const std::string& what, int j, std::string lower, std::string upper)
      : std::runtime_error(what), j_(j), lower_(std::move(lower)), upper_(std::move(upper)) {}
  int degree() const { return j_; }
  const std::string& lower() const { return lower_; }
  const std::string& upper() const { return upper_; }

 private:
  int j_;
  std::string lower_;
  std::string upper_;
};

/**
 * Orientation choice for every face: A_F is a basis of Span(Omega_F) made of
 * lifted vertices of F (greedy, vertex order). A flipped face has its first
 * basis column negated.
 */
class Trivialization {
 public:
  Trivialization() = default;
  explicit Trivialization(std::vector<std::vector<QMatrix>> bases) : bases_(std::move(bases)) {}

  const QMatrix& basis(FaceRef r) const { return bases_.at(static_cast<std::size_t>(r.dim + 1)).at(r.index); }

  /// Copy with the orientation of one face reversed. The empty face has no
  /// basis to flip.
  Trivialization flipped(FaceRef r) const;

 private:
  std::vector<std::vector<QMatrix>> bases_;
};

Trivialization trivialize(const FaceLattice& lattice, const LiftedCone& cone);

/// [E:F] = sign det((e, A_E)^{-1} A_F). Never zero for valid input.
int incidence_sign(const Trivialization& triv, const EdgeRay& ray, FaceRef lower, FaceRef upper);

/**
 * Augmented cellular chain complex. boundary[j] is D_j with rows indexed by
 * the (j-1)-faces and columns by the j-faces, j = 0..d; D_0 is the
 * augmentation row.
 */
struct ChainComplex {
  int dim = -1;
  std::vector<ZMatrix> boundary;
  std::vector<std::vector<Face>> faces;  // faces[j + 1] in lattice order

  const ZMatrix& D(int j) const { return boundary.at(static_cast<std::size_t>(j)); }
  ZMatrix& D(int j) { return boundary.at(static_cast<std::size_t>(j)); }
  std::size_t count(int face_dim) const { return faces.at(static_cast<std::size_t>(face_dim + 1)).size(); }
};

ZMatrix boundary_matrix(const Trivialization& triv, const FaceLattice& lattice, const ConeAtlas& atlas, int j);
ZMatrix boundary_matrix(const Trivialization& triv, const FaceLattice& lattice, const LiftedCone& cone, int j);

/// Assembles all D_j without checking d o d = 0.
ChainComplex assemble_complex(const Trivialization& triv, const FaceLattice& lattice, const ConeAtlas& atlas);

/// Throws ComplexError naming (j, E, F) for the first nonzero entry of
/// D_{j-1} D_j.
void verify_complex(const ChainComplex& complex);

ChainComplex build_complex(const Trivialization& triv, const FaceLattice& lattice, const LiftedCone& cone);
ChainComplex build_complex(const Trivialization& triv, const FaceLattice& lattice, const ConeAtlas& atlas);

/// Finitely generated abelian group: Z^free_rank + sum of Z/t.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, divisibility order

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

struct HomologyGroup {
  int degree = 0;
  AbelianGroup group;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyResult {
  bool augmented = true;
  std::vector<HomologyGroup> groups;  // ascending degree

  const AbelianGroup& at(int degree) const;
  bool vanishes() const;
  friend bool operator==(const HomologyResult&, const HomologyResult&) = default;
};

/// Homology ker D_j / (ker D_j cap im D_{j+1}) in every degree. With
/// augmented = false the augmentation row is dropped and degree -1 omitted.
/// For a genuine complex this is ordinary homology.
HomologyResult homology(const ChainComplex& complex, bool augmented);

}  // namespace polyk

#endif  // POLYK_CELLULAR_HPP
