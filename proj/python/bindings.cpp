#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "polyk/io.hpp"

namespace py = pybind11;
using namespace polyk;

namespace {

// Coordinates arrive as ints, strings or fractions.Fraction; str() of each is
// an exact "p" or "p/q".
Polytope to_polytope(const std::vector<std::vector<py::object>>& vertices, std::size_t dim, const std::string& name) {
  std::vector<QVector> v;
  for (const auto& row : vertices) {
    QVector q;
    for (const auto& x : row) {
      if (py::isinstance<py::float_>(x)) throw InputError("floating-point coordinates are not accepted");
      q.push_back(parse_rational(py::str(x)));
    }
    v.push_back(std::move(q));
  }
  return validate(std::move(v), dim, name);
}

py::int_ to_py(const Integer& z) { return py::int_(py::str(z.get_str())); }

py::list matrix_to_py(const ZMatrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(to_py(m(r, c)));
    rows.append(row);
  }
  return rows;
}

py::dict group_to_py(const AbelianGroup& g) {
  py::list torsion;
  for (const auto& t : g.torsion) torsion.append(to_py(t));
  py::dict d;
  d["free_rank"] = g.free_rank;
  d["torsion"] = torsion;
  d["text"] = g.to_string();
  return d;
}

using Vertices = std::vector<std::vector<py::object>>;

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact face lattices, cellular complexes and K-theory reports for rational polytopes";
  m.attr("__version__") = kToolVersion;

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PolytopeError>(m, "PolytopeError", PyExc_ValueError);
  py::register_exception<ComplexError>(m, "ComplexError", PyExc_RuntimeError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_RuntimeError);

  m.def(
      "validate",
      [](const Vertices& vertices, std::size_t dim) {
        to_polytope(vertices, dim, "");
        return true;
      },
      py::arg("vertices"), py::arg("dim"));

  m.def(
      "f_vector", [](const Vertices& vertices, std::size_t dim) { return face_lattice(to_polytope(vertices, dim, "")).f_vector(); },
      py::arg("vertices"), py::arg("dim"));

  m.def(
      "boundary_matrices",
      [](const Vertices& vertices, std::size_t dim) {
        const Analysis a = analyze(to_polytope(vertices, dim, ""));
        py::list out;
        for (const auto& d : a.complex.boundary) out.append(matrix_to_py(d));
        return out;
      },
      py::arg("vertices"), py::arg("dim"));

  m.def(
      "homology",
      [](const Vertices& vertices, std::size_t dim, bool augmented) {
        const Analysis a = analyze(to_polytope(vertices, dim, ""));
        const HomologyResult h = augmented ? a.report.augmented_homology : a.report.reduced_homology;
        py::dict out;
        for (const auto& g : h.groups) out[py::int_(g.degree)] = group_to_py(g.group);
        return out;
      },
      py::arg("vertices"), py::arg("dim"), py::arg("augmented") = true);

  m.def(
      "report_json",
      [](const Vertices& vertices, std::size_t dim, const std::string& name) {
        return report_json(analyze(to_polytope(vertices, dim, name)), ReportSections{}.resolved()).dump(2);
      },
      py::arg("vertices"), py::arg("dim"), py::arg("name") = "polytope");

  m.def(
      "report_file",
      [](const std::string& path) { return report_json(analyze(load_polytope(path)), ReportSections{}.resolved()).dump(2); },
      py::arg("path"));

  m.def(
      "compare",
      [](const Vertices& a, std::size_t dim_a, const Vertices& b, std::size_t dim_b) {
        const FaceLattice la = face_lattice(to_polytope(a, dim_a, ""));
        const FaceLattice lb = face_lattice(to_polytope(b, dim_b, ""));
        const LatticeIso iso = is_isomorphic(la, lb);
        return py::make_tuple(iso.isomorphic, iso.isomorphic ? render_isomorphism(la, lb, iso) : iso.certificate);
      },
      py::arg("a"), py::arg("dim_a"), py::arg("b"), py::arg("dim_b"));
}
