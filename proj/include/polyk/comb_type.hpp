#ifndef POLYK_COMB_TYPE_HPP
#define POLYK_COMB_TYPE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyk/cellular.hpp"
#include "polyk/polytope.hpp"

namespace polyk {

class IncidenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |D_j| for j = 0..d; every entry is 0 or 1.
struct UnsignedIncidence {
  std::vector<ZMatrix> matrices;
};

UnsignedIncidence strip_signs(const ChainComplex& complex);

/// Rebuilds the face lattice from unsigned incidences alone. Atoms are the
/// columns of |D_0|; each face is labelled by the atoms below it. Throws
/// IncidenceError if the result is not a graded lattice with the diamond
/// property.
FaceLattice lattice_from_incidence(const UnsignedIncidence& incidence);

/// All faces strictly below each face (transitive closure of covering),
/// indexed like the lattice levels.
std::vector<std::vector<std::vector<FaceRef>>> order_below(const FaceLattice& lattice);

/// Either a rank-preserving bijection (map[k][i] = image index of face i of
/// dimension k - 1) or a reason why none exists.
struct LatticeIso {
  bool isomorphic = false;
  std::vector<std::vector<std::size_t>> map;
  std::string certificate;

  std::size_t image(FaceRef r) const { return map.at(static_cast<std::size_t>(r.dim + 1)).at(r.index); }
};

LatticeIso is_isomorphic(const FaceLattice& a, const FaceLattice& b);

/// Checks that `iso` is a rank-preserving bijection mapping covering pairs
/// onto covering pairs in both directions.
bool verify_isomorphism(const FaceLattice& a, const FaceLattice& b, const LatticeIso& iso);

/// Looks for face signs s with D_b[iso E, iso F] = s_E s_F D_a[E, F] on every
/// covering pair. Returns the signs (indexed like the levels) if they exist.
std::optional<std::vector<std::vector<int>>> signed_equivalence(const ChainComplex& a, const ChainComplex& b,
                                                                const LatticeIso& iso);

}  // namespace polyk

#endif  // POLYK_COMB_TYPE_HPP
