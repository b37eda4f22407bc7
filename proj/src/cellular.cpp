#include "polyk/cellular.hpp"

#include <sstream>

namespace polyk {

namespace {

// Z-basis of the integer kernel: trailing columns of V in U M V = D.
ZMatrix integer_kernel(const ZMatrix& m) {
  const SNFResult snf = smith_normal_form(m);
  std::size_t r = 0;
  while (r < snf.diagonal.size() && snf.diagonal[r] != 0) ++r;
  ZMatrix k(m.cols(), m.cols() - r);
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = r; j < m.cols(); ++j) k(i, j - r) = snf.V(i, j);
  return k;
}

ZMatrix to_integer(const QMatrix& q) {
  ZMatrix z(q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (q(i, j).get_den() != 1) throw LinalgError("homology: non-integral lattice coordinates");
      z(i, j) = q(i, j).get_num();
    }
  return z;
}

AbelianGroup subquotient(const ZMatrix& out, const ZMatrix& in) {
  const ZMatrix kernel = integer_kernel(out);
  AbelianGroup g;
  if (kernel.cols() == 0) return g;
  // im(in) cap ker(out) is generated by in * ker(out * in).
  const ZMatrix gens = in * integer_kernel(out * in);
  const ZMatrix coords = to_integer(coords_in_basis(to_rational(kernel), to_rational(gens)));
  const SNFResult snf = smith_normal_form(coords);
  std::size_t r = 0;
  for (const auto& x : snf.diagonal) {
    if (x == 0) break;
    ++r;
    if (x > 1) g.torsion.push_back(x);
  }
  g.free_rank = kernel.cols() - r;
  return g;
}

}  // namespace

Trivialization Trivialization::flipped(FaceRef r) const {
  Trivialization t = *this;
  QMatrix& a = t.bases_.at(static_cast<std::size_t>(r.dim + 1)).at(r.index);
  if (a.cols() == 0) throw std::invalid_argument("Trivialization::flipped: the empty face has no orientation to flip");
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, 0) = -a(i, 0);
  return t;
}

Trivialization trivialize(const FaceLattice& lattice, const LiftedCone& cone) {
  std::vector<std::vector<QMatrix>> bases;
  for (int k = -1; k <= lattice.dim(); ++k) {
    std::vector<QMatrix> level;
    for (const auto& f : lattice.faces(k)) {
      const auto lifted = lifted_vertices(cone, f);
      const QMatrix all = QMatrix::from_columns(lifted, cone.ambient_dim);
      std::vector<QVector> picked;
      for (auto c : greedy_independent_columns(all)) picked.push_back(lifted[c]);
      level.push_back(QMatrix::from_columns(picked, cone.ambient_dim));
    }
    bases.push_back(std::move(level));
  }
  return Trivialization(std::move(bases));
}

int incidence_sign(const Trivialization& triv, const EdgeRay& ray, FaceRef lower, FaceRef upper) {
  const QMatrix& a_lower = triv.basis(lower);
  const QMatrix& a_upper = triv.basis(upper);
  const QMatrix e = QMatrix::from_columns({to_rational(ray.direction)}, a_upper.rows());
  const int s = det_sign(coords_in_basis(hcat(e, a_lower), a_upper));
  if (s == 0)
    throw ComplexError("incidence_sign: degenerate determinant", upper.dim, format_vertex_set(ray.lower.vertices),
                       format_vertex_set(ray.upper.vertices));
  return s;
}

ZMatrix boundary_matrix(const Trivialization& triv, const FaceLattice& lattice, const ConeAtlas& atlas, int j) {
  if (j < 0 || j > lattice.dim()) throw std::out_of_range("boundary_matrix: dimension out of range");
  ZMatrix d(lattice.count(j - 1), lattice.count(j));
  for (const auto& [lower, upper] : covering_pairs(lattice, j)) {
    const EdgeRay ray = edge_ray(atlas.cone(), atlas.at(lower), atlas.at(upper));
    d(lower.index, upper.index) = incidence_sign(triv, ray, lower, upper);
  }
  return d;
}

ZMatrix boundary_matrix(const Trivialization& triv, const FaceLattice& lattice, const LiftedCone& cone, int j) {
  return boundary_matrix(triv, lattice, ConeAtlas(cone, lattice), j);
}

ChainComplex assemble_complex(const Trivialization& triv, const FaceLattice& lattice, const ConeAtlas& atlas) {
  ChainComplex c;
  c.dim = lattice.dim();
  for (int k = -1; k <= lattice.dim(); ++k) c.faces.push_back(lattice.faces(k));
  for (int j = 0; j <= lattice.dim(); ++j) c.boundary.push_back(boundary_matrix(triv, lattice, atlas, j));
  return c;
}

void verify_complex(const ChainComplex& complex) {
  for (int j = 1; j <= complex.dim; ++j) {
    const ZMatrix prod = complex.D(j - 1) * complex.D(j);
    for (std::size_t r = 0; r < prod.rows(); ++r)
      for (std::size_t c = 0; c < prod.cols(); ++c)
        if (prod(r, c) != 0) {
          const auto& lower = complex.faces.at(static_cast<std::size_t>(j - 1)).at(r).vertices;
          const auto& upper = complex.faces.at(static_cast<std::size_t>(j + 1)).at(c).vertices;
          std::ostringstream os;
          os << "boundary of boundary is nonzero: (D_" << j - 1 << " D_" << j << ")[" << format_vertex_set(lower)
             << ", " << format_vertex_set(upper) << "] = " << prod(r, c) << " at j = " << j;
          throw ComplexError(os.str(), j, format_vertex_set(lower), format_vertex_set(upper));
        }
  }
}

ChainComplex build_complex(const Trivialization& triv, const FaceLattice& lattice, const ConeAtlas& atlas) {
  ChainComplex c = assemble_complex(triv, lattice, atlas);
  verify_complex(c);
  return c;
}

ChainComplex build_complex(const Trivialization& triv, const FaceLattice& lattice, const LiftedCone& cone) {
  return build_complex(triv, lattice, ConeAtlas(cone, lattice));
}

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

const AbelianGroup& HomologyResult::at(int degree) const {
  for (const auto& g : groups)
    if (g.degree == degree) return g.group;
  throw std::out_of_range("HomologyResult::at: degree not present");
}

bool HomologyResult::vanishes() const {
  for (const auto& g : groups)
    if (!g.group.is_zero()) return false;
  return true;
}

HomologyResult homology(const ChainComplex& complex, bool augmented) {
  HomologyResult h;
  h.augmented = augmented;
  const int d = complex.dim;
  const int lowest = augmented ? -1 : 0;
  for (int j = lowest; j <= d; ++j) {
    const std::size_t fj = complex.count(j);
    // Outgoing map C_j -> C_{j-1}; zero at the bottom of the (reduced) complex.
    ZMatrix out = (j >= 0 && (augmented || j > 0)) ? complex.D(j) : ZMatrix(0, fj);
    ZMatrix in = j < d ? complex.D(j + 1) : ZMatrix(fj, 0);
    h.groups.push_back({j, subquotient(out, in)});
  }
  return h;
}

}  // namespace polyk
