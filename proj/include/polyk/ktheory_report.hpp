#ifndef POLYK_KTHEORY_REPORT_HPP
#define POLYK_KTHEORY_REPORT_HPP

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polyk/cellular.hpp"
#include "polyk/polytope.hpp"

namespace polyk {

/**
 * First page of the spectral sequence of the ideal filtration of the
 * Wiener-Hopf algebra. Entries are 2-periodic in q, so q is stored mod 2:
 * E1[p, odd] = Z^{f_{p-2}} and E1[p, even] = 0 for p = 1..d+2. The d1
 * differential leaving column p is the cellular map D_{p-2} (zero for p = 1).
 */
struct E1Page {
  int dim = -1;
  std::map<std::pair<int, int>, AbelianGroup> entries;  // (p, q mod 2)
  std::map<int, ZMatrix> d1;                            // p -> D_{p-2}, p >= 2

  const AbelianGroup& at(int p, int q) const;
  int min_p() const { return 1; }
  int max_p() const { return dim + 2; }
};

E1Page e1_page(const FaceLattice& lattice, const ChainComplex& complex);

/// K_0 and K_1, assembled from E2 = E-infinity. When more than one nonzero
/// E2 group lands in the same parity the extension is not determined and
/// `extension_resolved` is false; the groups then list the associated graded.
struct KGroups {
  std::array<AbelianGroup, 2> K;
  bool extension_resolved = true;
};

struct KReport {
  std::string name;
  std::vector<std::size_t> f_vector;
  HomologyResult augmented_homology;
  HomologyResult reduced_homology;
  std::map<int, AbelianGroup> e2;           // p -> E2[p, odd] of A_Omega
  std::map<int, AbelianGroup> e2_quotient;  // p -> E2[p, odd] of A_Omega / K
  KGroups k_algebra;                        // K_*(A_Omega)
  KGroups k_quotient;                       // K_*(A_Omega / K)
  bool e2_vanishes = false;
  bool quotient_is_z_in_degree_zero = false;
  std::vector<std::string> falsifications;  // every nonvanishing E2 entry, verbatim
  std::vector<std::string> conclusions;
};

KReport k_report(const std::string& name, const FaceLattice& lattice, const ChainComplex& complex);
KReport k_report(const Polytope& p, const FaceLattice& lattice, const ChainComplex& complex);

}  // namespace polyk

#endif  // POLYK_KTHEORY_REPORT_HPP
