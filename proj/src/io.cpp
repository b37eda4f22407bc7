#include "polyk/io.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>

namespace polyk {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::string line_context(const std::string& text, const std::string& needle) {
  const auto pos = text.find(needle);
  if (pos == std::string::npos) return {};
  return "line " + std::to_string(line_of_offset(text, pos)) + ": ";
}

std::string join_counts(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^(-?[0-9]+)(/([0-9]+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw InputError("malformed rational \"" + text + "\"");
  const Integer num(m[1].str());
  Integer den = 1;
  if (m[3].matched) den = Integer(m[3].str());
  if (den == 0) throw InputError("malformed rational \"" + text + "\": zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

PolytopeFile parse_polytope_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("line " + std::to_string(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0)) +
                     ": JSON parse error: " + e.what());
  }
  if (!doc.is_object()) throw InputError("polytope document must be a JSON object");
  PolytopeFile file;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("field \"name\" must be a string");
    file.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 0)
    throw InputError("field \"dim\" must be a nonnegative integer");
  file.dim = doc["dim"].get<std::size_t>();
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw InputError("field \"vertices\" must be an array of coordinate arrays");
  std::size_t vi = 0;
  for (const auto& row : doc["vertices"]) {
    if (!row.is_array()) throw InputError("vertex " + std::to_string(vi) + " is not an array");
    if (row.size() != file.dim)
      throw InputError(line_context(text, row.dump()) + "vertex " + std::to_string(vi) + " has " +
                       std::to_string(row.size()) + " coordinates, expected " + std::to_string(file.dim));
    QVector v;
    for (const auto& x : row) {
      if (x.is_number_integer()) {
        v.emplace_back(Integer(x.dump()));
      } else if (x.is_string()) {
        const auto s = x.get<std::string>();
        try {
          v.push_back(parse_rational(s));
        } catch (const InputError& e) {
          throw InputError(line_context(text, "\"" + s + "\"") + "vertex " + std::to_string(vi) + ": " + e.what());
        }
      } else if (x.is_number_float()) {
        throw InputError("vertex " + std::to_string(vi) + ": floating-point coordinate " + x.dump() +
                         " is not accepted; write it as \"p/q\"");
      } else {
        throw InputError("vertex " + std::to_string(vi) + ": coordinate must be an integer or a \"p/q\" string");
      }
    }
    file.vertices.push_back(std::move(v));
    ++vi;
  }
  return file;
}

PolytopeFile read_polytope_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_polytope_file(ss.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Polytope load_polytope(const std::filesystem::path& path) {
  PolytopeFile f = read_polytope_file(path);
  std::string name = f.name.empty() ? path.stem().string() : f.name;
  return validate(std::move(f.vertices), f.dim, std::move(name));
}

Analysis analyze(const Polytope& p, const PipelineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  LiftedCone cone = lift(p);
  FaceLattice lattice = face_lattice(p);
  if (auto err = check_lattice(lattice)) throw GeometryError("face lattice invariant violated: " + *err);
  const ConeAtlas atlas(cone, lattice);
  if (options.crosscheck_edge_rays)
    for (const auto& [lower, upper] : lattice.covering()) {
      const EdgeRay ray = edge_ray(cone, atlas.at(lower), atlas.at(upper));
      const QVector bary = edge_ray_crosscheck(cone, lattice.face(lower), lattice.face(upper));
      if (!is_positive_multiple(bary, to_rational(ray.direction)))
        throw GeometryError("edge ray cross-check mismatch for " + format_vertex_set(lattice.face(lower).vertices) +
                            " < " + format_vertex_set(lattice.face(upper).vertices));
    }
  const Trivialization triv = trivialize(lattice, cone);
  ChainComplex complex = assemble_complex(triv, lattice, atlas);
  if (options.inject_sign_flip && complex.dim >= 1) {
    ZMatrix& d1 = complex.D(1);
    for (std::size_t i = 0; i < d1.entries().size(); ++i)
      if (d1(i / d1.cols(), i % d1.cols()) != 0) {
        d1(i / d1.cols(), i % d1.cols()) *= -1;
        break;
      }
  }
  verify_complex(complex);
  KReport report = k_report(p, lattice, complex);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return Analysis{p, std::move(cone), std::move(lattice), std::move(complex), std::move(report), seconds};
}

ReportSections ReportSections::resolved() const {
  ReportSections s = *this;
  if (!faces && !boundary && !homology && !ktheory) s.faces = s.boundary = s.homology = s.ktheory = true;
  return s;
}

ordered_json group_to_json(const AbelianGroup& g) {
  ordered_json j;
  j["free_rank"] = g.free_rank;
  ordered_json torsion = ordered_json::array();
  for (const auto& t : g.torsion) torsion.push_back(t.get_str());
  j["torsion"] = torsion;
  j["text"] = g.to_string();
  return j;
}

AbelianGroup group_from_json(const json& j) {
  AbelianGroup g;
  g.free_rank = j.at("free_rank").get<std::size_t>();
  for (const auto& t : j.at("torsion")) g.torsion.emplace_back(t.get<std::string>());
  return g;
}

namespace {

ordered_json homology_json(const HomologyResult& h) {
  ordered_json arr = ordered_json::array();
  for (const auto& g : h.groups) arr.push_back({{"degree", g.degree}, {"group", group_to_json(g.group)}});
  return arr;
}

HomologyResult homology_from_json(const json& arr, bool augmented) {
  HomologyResult h;
  h.augmented = augmented;
  for (const auto& g : arr) h.groups.push_back({g.at("degree").get<int>(), group_from_json(g.at("group"))});
  return h;
}

ordered_json kgroups_json(const KGroups& k) {
  return {{"K0", group_to_json(k.K[0])}, {"K1", group_to_json(k.K[1])}, {"extension_resolved", k.extension_resolved}};
}

ordered_json vertex_sets_json(const std::vector<Face>& faces) {
  ordered_json arr = ordered_json::array();
  for (const auto& f : faces) arr.push_back(f.vertices);
  return arr;
}

}  // namespace

ordered_json report_json(const Analysis& a, const ReportSections& requested) {
  const ReportSections sections = requested.resolved();
  const Polytope& p = a.polytope;
  ordered_json doc;
  doc["tool"] = "polyk";
  doc["version"] = kToolVersion;
  ordered_json verts = ordered_json::array();
  for (const auto& v : p.vertices()) {
    ordered_json row = ordered_json::array();
    for (const auto& x : v) row.push_back(format_rational(x));
    verts.push_back(row);
  }
  doc["input"] = {{"name", p.name()}, {"dim", p.dim()}, {"vertices", verts}};
  doc["f_vector"] = a.lattice.f_vector();

  if (sections.faces) {
    ordered_json faces = ordered_json::array();
    for (int k = -1; k <= a.lattice.dim(); ++k)
      faces.push_back({{"dim", k}, {"vertex_sets", vertex_sets_json(a.lattice.faces(k))}});
    doc["faces"] = faces;
  }
  if (sections.boundary) {
    ordered_json maps = ordered_json::array();
    for (int j = 0; j <= a.complex.dim; ++j) {
      const ZMatrix& d = a.complex.D(j);
      ordered_json rows = ordered_json::array();
      for (std::size_t r = 0; r < d.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < d.cols(); ++c) row.push_back(d(r, c).get_si());
        rows.push_back(row);
      }
      maps.push_back({{"j", j},
                      {"row_faces", vertex_sets_json(a.complex.faces[static_cast<std::size_t>(j)])},
                      {"col_faces", vertex_sets_json(a.complex.faces[static_cast<std::size_t>(j + 1)])},
                      {"matrix", rows}});
    }
    doc["boundary"] = maps;
  }
  if (sections.homology) {
    doc["homology"] = {{"augmented", homology_json(a.report.augmented_homology)},
                       {"reduced", homology_json(a.report.reduced_homology)}};
  }
  if (sections.ktheory) {
    const E1Page page = e1_page(a.lattice, a.complex);
    ordered_json e1 = ordered_json::array();
    for (int p1 = page.min_p(); p1 <= page.max_p(); ++p1)
      e1.push_back({{"p", p1}, {"q_odd", group_to_json(page.at(p1, 1))}, {"q_even", group_to_json(page.at(p1, 0))}});
    ordered_json e2 = ordered_json::array();
    for (const auto& [p1, g] : a.report.e2) e2.push_back({{"p", p1}, {"q_odd", group_to_json(g)}});
    ordered_json e2q = ordered_json::array();
    for (const auto& [p1, g] : a.report.e2_quotient) e2q.push_back({{"p", p1}, {"q_odd", group_to_json(g)}});
    doc["ktheory"] = {{"e1", e1},
                      {"e2", e2},
                      {"e2_quotient", e2q},
                      {"e2_vanishes", a.report.e2_vanishes},
                      {"K_A_Omega", kgroups_json(a.report.k_algebra)},
                      {"K_A_Omega_mod_compacts", kgroups_json(a.report.k_quotient)},
                      {"falsifications", a.report.falsifications},
                      {"conclusions", a.report.conclusions}};
  }
  if (sections.timing) doc["timing"] = {{"seconds", a.seconds}};
  return doc;
}

std::string report_text(const Analysis& a, const ReportSections& requested) {
  const ReportSections sections = requested.resolved();
  const Polytope& p = a.polytope;
  std::ostringstream os;
  os << "polytope: " << p.name() << " (dim " << p.dim() << ", " << p.num_vertices() << " vertices)\n";
  os << "f-vector (f_-1, ..., f_d): " << join_counts(a.lattice.f_vector()) << "\n";
  if (sections.faces) {
    os << "\nfaces\n";
    for (int k = -1; k <= a.lattice.dim(); ++k) {
      os << "  dim " << k << ":";
      for (const auto& f : a.lattice.faces(k)) os << ' ' << format_vertex_set(f.vertices);
      os << "\n";
    }
  }
  if (sections.boundary) {
    os << "\nboundary matrices (rows: (j-1)-faces, columns: j-faces)\n";
    for (int j = 0; j <= a.complex.dim; ++j) {
      const ZMatrix& d = a.complex.D(j);
      const auto& rows = a.complex.faces[static_cast<std::size_t>(j)];
      const auto& cols = a.complex.faces[static_cast<std::size_t>(j + 1)];
      std::size_t w = 2;
      for (const auto& f : cols) w = std::max(w, format_vertex_set(f.vertices).size());
      std::size_t lw = 0;
      for (const auto& f : rows) lw = std::max(lw, format_vertex_set(f.vertices).size());
      os << "D_" << j << " (" << d.rows() << "x" << d.cols() << ")\n";
      os << "  " << std::string(lw, ' ');
      for (const auto& f : cols) os << ' ' << pad(format_vertex_set(f.vertices), w);
      os << "\n";
      for (std::size_t r = 0; r < d.rows(); ++r) {
        const auto label = format_vertex_set(rows[r].vertices);
        os << "  " << label << std::string(lw - label.size(), ' ');
        for (std::size_t c = 0; c < d.cols(); ++c) os << ' ' << pad(d(r, c).get_str(), w);
        os << "\n";
      }
    }
  }
  if (sections.homology) {
    os << "\nhomology\n  augmented:";
    for (const auto& g : a.report.augmented_homology.groups) os << "  H_" << g.degree << " = " << g.group.to_string();
    os << "\n  reduced:  ";
    for (const auto& g : a.report.reduced_homology.groups) os << "  H_" << g.degree << " = " << g.group.to_string();
    os << "\n";
  }
  if (sections.ktheory) {
    const E1Page page = e1_page(a.lattice, a.complex);
    os << "\nK-theory\n  E1 (q odd):";
    for (int p1 = page.min_p(); p1 <= page.max_p(); ++p1) os << "  p=" << p1 << ": " << page.at(p1, 1).to_string();
    os << "\n  E1 (q even): 0 in every column\n  E2 (q odd):";
    for (const auto& [p1, g] : a.report.e2) os << "  p=" << p1 << ": " << g.to_string();
    os << "\n";
    const auto& ka = a.report.k_algebra;
    const auto& kq = a.report.k_quotient;
    os << "  K_0(A_Omega) = " << ka.K[0].to_string() << ", K_1(A_Omega) = " << ka.K[1].to_string() << "\n";
    os << "  K_0(A_Omega/K) = " << kq.K[0].to_string() << ", K_1(A_Omega/K) = " << kq.K[1].to_string() << "\n";
    for (const auto& f : a.report.falsifications) os << "  UNEXPECTED: " << f << "\n";
    for (const auto& c : a.report.conclusions) os << "  - " << c << "\n";
  }
  if (sections.timing) os << "\ntime: " << std::fixed << std::setprecision(3) << a.seconds << " s\n";
  return os.str();
}

ParsedReport parse_report_json(const std::string& text) {
  const json doc = json::parse(text);
  ParsedReport r;
  r.name = doc.at("input").at("name").get<std::string>();
  r.f_vector = doc.at("f_vector").get<std::vector<std::size_t>>();
  if (doc.contains("homology")) {
    r.augmented = homology_from_json(doc["homology"].at("augmented"), true);
    r.reduced = homology_from_json(doc["homology"].at("reduced"), false);
  }
  if (doc.contains("ktheory")) {
    const auto& k = doc["ktheory"];
    r.k_algebra = {group_from_json(k.at("K_A_Omega").at("K0")), group_from_json(k.at("K_A_Omega").at("K1"))};
    r.k_quotient = {group_from_json(k.at("K_A_Omega_mod_compacts").at("K0")),
                    group_from_json(k.at("K_A_Omega_mod_compacts").at("K1"))};
  }
  return r;
}

std::string render_isomorphism(const FaceLattice& a, const FaceLattice& b, const LatticeIso& iso) {
  std::ostringstream os;
  if (!iso.isomorphic) {
    os << "not isomorphic: " << iso.certificate << "\n";
    return os.str();
  }
  os << "isomorphic: " << a.total_faces() << "-face bijection\n";
  for (int k = -1; k <= a.dim(); ++k)
    for (std::size_t i = 0; i < a.count(k); ++i)
      os << "  dim " << k << ": " << format_vertex_set(a.face({k, i}).vertices) << " -> "
         << format_vertex_set(b.face({k, iso.image({k, i})}).vertices) << "\n";
  return os.str();
}

}  // namespace polyk
