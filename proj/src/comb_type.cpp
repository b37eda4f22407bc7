#include "polyk/comb_type.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace polyk {

namespace {

std::string format_counts(const std::vector<std::size_t>& f, std::size_t from, std::size_t to) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = from; k < to; ++k) os << (k > from ? "," : "") << f[k];
  os << ')';
  return os.str();
}

// Flattened indexing over all faces of a lattice.
struct Flat {
  std::vector<std::size_t> offset;
  std::size_t total = 0;

  explicit Flat(const FaceLattice& l) {
    for (int k = -1; k <= l.dim(); ++k) {
      offset.push_back(total);
      total += l.count(k);
    }
  }
  std::size_t id(FaceRef r) const { return offset[static_cast<std::size_t>(r.dim + 1)] + r.index; }
};

// up[x][y] is true when face y lies weakly above face x.
std::vector<std::vector<char>> up_sets(const FaceLattice& l, const Flat& flat) {
  std::vector<std::vector<char>> up(flat.total, std::vector<char>(flat.total, 0));
  for (int k = l.dim(); k >= -1; --k)
    for (std::size_t i = 0; i < l.count(k); ++i) {
      const FaceRef r{k, i};
      auto& row = up[flat.id(r)];
      row[flat.id(r)] = 1;
      for (auto a : l.above(r)) {
        const auto& other = up[flat.id({k + 1, a})];
        for (std::size_t y = 0; y < flat.total; ++y) row[y] = row[y] || other[y];
      }
    }
  return up;
}

// Rank of the least common upper bound of two atoms.
std::vector<std::vector<int>> atom_join_ranks(const FaceLattice& l) {
  const Flat flat(l);
  const auto up = up_sets(l, flat);
  std::vector<int> rank_of(flat.total);
  for (int k = -1; k <= l.dim(); ++k)
    for (std::size_t i = 0; i < l.count(k); ++i) rank_of[flat.id({k, i})] = k;
  const std::size_t n = l.dim() >= 0 ? l.count(0) : 0;
  std::vector<std::vector<int>> jr(n, std::vector<int>(n, std::numeric_limits<int>::max()));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const auto& a = up[flat.id({0, u})];
      const auto& b = up[flat.id({0, v})];
      for (std::size_t y = 0; y < flat.total; ++y)
        if (a[y] && b[y]) jr[u][v] = std::min(jr[u][v], rank_of[y]);
    }
  return jr;
}

std::vector<std::pair<std::size_t, std::size_t>> degree_profile(const FaceLattice& l, int k) {
  std::vector<std::pair<std::size_t, std::size_t>> p;
  for (std::size_t i = 0; i < l.count(k); ++i) p.emplace_back(l.below({k, i}).size(), l.above({k, i}).size());
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

UnsignedIncidence strip_signs(const ChainComplex& complex) {
  UnsignedIncidence u;
  for (const auto& d : complex.boundary) {
    ZMatrix a(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) a(i, j) = abs(d(i, j));
    u.matrices.push_back(std::move(a));
  }
  return u;
}

FaceLattice lattice_from_incidence(const UnsignedIncidence& incidence) {
  const auto& ms = incidence.matrices;
  if (ms.empty()) throw IncidenceError("lattice_from_incidence: no matrices");
  if (ms[0].rows() != 1) throw IncidenceError("lattice_from_incidence: |D_0| must have exactly one row");
  for (std::size_t j = 0; j < ms.size(); ++j) {
    if (j > 0 && ms[j].rows() != ms[j - 1].cols()) {
      std::ostringstream os;
      os << "lattice_from_incidence: |D_" << j << "| has " << ms[j].rows() << " rows, expected " << ms[j - 1].cols();
      throw IncidenceError(os.str());
    }
    for (const auto& x : ms[j].entries())
      if (x != 0 && x != 1) throw IncidenceError("lattice_from_incidence: entries must be 0 or 1");
  }
  const int d = static_cast<int>(ms.size()) - 1;
  std::vector<std::vector<Face>> levels{{Face{{}, -1}}};
  std::vector<std::vector<std::vector<std::size_t>>> below{{{}}};
  for (int j = 0; j <= d; ++j) {
    const ZMatrix& m = ms[static_cast<std::size_t>(j)];
    const auto& prev = levels.back();
    std::vector<Face> level;
    std::vector<std::vector<std::size_t>> cover;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::vector<std::size_t> covered;
      std::set<std::size_t> atoms;
      for (std::size_t r = 0; r < m.rows(); ++r)
        if (m(r, c) == 1) {
          covered.push_back(r);
          atoms.insert(prev[r].vertices.begin(), prev[r].vertices.end());
        }
      if (j == 0) atoms = {c};
      level.push_back(Face{{atoms.begin(), atoms.end()}, j});
      cover.push_back(std::move(covered));
    }
    std::set<VertexSet> distinct;
    for (const auto& f : level)
      if (!distinct.insert(f.vertices).second)
        throw IncidenceError("lattice_from_incidence: two faces of rank " + std::to_string(j) +
                             " share the atom set " + format_vertex_set(f.vertices));
    levels.push_back(std::move(level));
    below.push_back(std::move(cover));
  }
  FaceLattice lattice(d, std::move(levels), std::move(below));
  if (auto err = check_lattice(lattice)) throw IncidenceError("lattice_from_incidence: " + *err);
  return lattice;
}

std::vector<std::vector<std::vector<FaceRef>>> order_below(const FaceLattice& lattice) {
  std::vector<std::vector<std::vector<FaceRef>>> out;
  for (int k = -1; k <= lattice.dim(); ++k) {
    std::vector<std::vector<FaceRef>> level;
    for (std::size_t i = 0; i < lattice.count(k); ++i) {
      std::set<FaceRef> all;
      for (auto e : lattice.below({k, i})) {
        all.insert({k - 1, e});
        const auto& deeper = out[static_cast<std::size_t>(k)][e];
        all.insert(deeper.begin(), deeper.end());
      }
      level.emplace_back(all.begin(), all.end());
    }
    out.push_back(std::move(level));
  }
  return out;
}

bool verify_isomorphism(const FaceLattice& a, const FaceLattice& b, const LatticeIso& iso) {
  if (!iso.isomorphic || a.dim() != b.dim() || iso.map.size() != static_cast<std::size_t>(a.dim() + 2)) return false;
  std::vector<std::vector<std::size_t>> inverse;
  for (int k = -1; k <= a.dim(); ++k) {
    const auto& m = iso.map[static_cast<std::size_t>(k + 1)];
    if (m.size() != a.count(k) || m.size() != b.count(k)) return false;
    std::vector<std::size_t> inv(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] >= m.size() || inv[m[i]] != m.size()) return false;
      inv[m[i]] = i;
    }
    inverse.push_back(std::move(inv));
  }
  for (int k = 0; k <= a.dim(); ++k) {
    for (std::size_t i = 0; i < a.count(k); ++i) {
      std::vector<std::size_t> img;
      for (auto e : a.below({k, i})) img.push_back(iso.map[static_cast<std::size_t>(k)][e]);
      std::sort(img.begin(), img.end());
      if (img != b.below({k, iso.map[static_cast<std::size_t>(k + 1)][i]})) return false;
    }
    for (std::size_t i = 0; i < b.count(k); ++i) {
      std::vector<std::size_t> pre;
      for (auto e : b.below({k, i})) pre.push_back(inverse[static_cast<std::size_t>(k)][e]);
      std::sort(pre.begin(), pre.end());
      if (pre != a.below({k, inverse[static_cast<std::size_t>(k + 1)][i]})) return false;
    }
  }
  return true;
}

LatticeIso is_isomorphic(const FaceLattice& a, const FaceLattice& b) {
  LatticeIso result;
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "rank mismatch: dimension " << a.dim() << " vs " << b.dim();
    result.certificate = os.str();
    return result;
  }
  const int d = a.dim();
  const auto fa = a.f_vector();
  const auto fb = b.f_vector();
  if (fa != fb) {
    // Proper faces only: f_0 .. f_{d-1}.
    result.certificate = "f-vector mismatch " + format_counts(fa, 1, fa.size() - 1) + " != " +
                         format_counts(fb, 1, fb.size() - 1);
    return result;
  }
  for (int k = -1; k <= d; ++k)
    if (degree_profile(a, k) != degree_profile(b, k)) {
      result.certificate = "cover-degree profile mismatch at rank " + std::to_string(k);
      return result;
    }

  const auto jra = atom_join_ranks(a);
  const auto jrb = atom_join_ranks(b);
  std::vector<FaceRef> order;
  for (int k = -1; k <= d; ++k)
    for (std::size_t i = 0; i < a.count(k); ++i) order.push_back({k, i});
  std::vector<std::vector<std::size_t>> map(static_cast<std::size_t>(d + 2));
  std::vector<std::vector<char>> used(static_cast<std::size_t>(d + 2));
  for (int k = -1; k <= d; ++k) {
    map[static_cast<std::size_t>(k + 1)].assign(a.count(k), 0);
    used[static_cast<std::size_t>(k + 1)].assign(b.count(k), 0);
  }

  std::function<bool(std::size_t)> assign = [&](std::size_t pos) -> bool {
    if (pos == order.size()) return true;
    const FaceRef f = order[pos];
    const auto lvl = static_cast<std::size_t>(f.dim + 1);
    std::vector<std::size_t> image_below;
    if (f.dim >= 0) {
      for (auto e : a.below(f)) image_below.push_back(map[lvl - 1][e]);
      std::sort(image_below.begin(), image_below.end());
    }
    for (std::size_t g = 0; g < b.count(f.dim); ++g) {
      if (used[lvl][g]) continue;
      const FaceRef gr{f.dim, g};
      if (a.above(f).size() != b.above(gr).size()) continue;
      if (f.dim >= 0 && image_below != b.below(gr)) continue;
      if (f.dim == 0) {
        bool ok = true;
        for (std::size_t u = 0; u < f.index && ok; ++u) ok = jra[u][f.index] == jrb[map[lvl][u]][g];
        if (!ok) continue;
      }
      map[lvl][f.index] = g;
      used[lvl][g] = 1;
      if (assign(pos + 1)) return true;
      used[lvl][g] = 0;
    }
    return false;
  };

  if (!assign(0)) {
    result.certificate = "exhausted search: no cover-preserving bijection exists";
    return result;
  }
  result.isomorphic = true;
  result.map = std::move(map);
  if (!verify_isomorphism(a, b, result)) {
    result.isomorphic = false;
    result.certificate = "internal: constructed bijection failed verification";
  }
  return result;
}

std::optional<std::vector<std::vector<int>>> signed_equivalence(const ChainComplex& a, const ChainComplex& b,
                                                                const LatticeIso& iso) {
  if (!iso.isomorphic || a.dim != b.dim) return std::nullopt;
  const int d = a.dim;
  std::vector<std::vector<int>> sign;
  for (int k = -1; k <= d; ++k) sign.emplace_back(a.count(k), 0);
  auto s = [&](FaceRef r) -> int& { return sign[static_cast<std::size_t>(r.dim + 1)][r.index]; };

  // Propagate along covering pairs (nonzero entries) from the empty face.
  s({-1, 0}) = 1;
  std::deque<FaceRef> queue{{-1, 0}};
  while (!queue.empty()) {
    const FaceRef r = queue.front();
    queue.pop_front();
    auto relate = [&](FaceRef lower, FaceRef upper, FaceRef other) -> bool {
      const int j = upper.dim;
      const Integer& va = a.D(j)(lower.index, upper.index);
      const Integer& vb = b.D(j)(iso.image(lower), iso.image(upper));
      if (va == 0 || vb == 0) return va == vb;
      const int need = s(r) * ((va == vb) ? 1 : -1);
      if (s(other) == 0) {
        s(other) = need;
        queue.push_back(other);
        return true;
      }
      return s(other) == need;
    };
    if (r.dim + 1 <= d)
      for (std::size_t c = 0; c < a.count(r.dim + 1); ++c)
        if (a.D(r.dim + 1)(r.index, c) != 0 && !relate(r, {r.dim + 1, c}, {r.dim + 1, c})) return std::nullopt;
    if (r.dim >= 0)
      for (std::size_t e = 0; e < a.count(r.dim - 1); ++e)
        if (a.D(r.dim)(e, r.index) != 0 && !relate({r.dim - 1, e}, r, {r.dim - 1, e})) return std::nullopt;
  }
  // Full entrywise check, zeros included.
  for (int j = 0; j <= d; ++j)
    for (std::size_t e = 0; e < a.count(j - 1); ++e)
      for (std::size_t f = 0; f < a.count(j); ++f) {
        const Integer expect = a.D(j)(e, f) * s({j - 1, e}) * s({j, f});
        if (b.D(j)(iso.image({j - 1, e}), iso.image({j, f})) != expect) return std::nullopt;
      }
  return sign;
}

}  // namespace polyk
