#ifndef POLYK_IO_HPP
#define POLYK_IO_HPP

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "polyk/cellular.hpp"
#include "polyk/comb_type.hpp"
#include "polyk/cone_geometry.hpp"
#include "polyk/ktheory_report.hpp"
#include "polyk/polytope.hpp"

namespace polyk {

inline constexpr const char* kToolVersion = "1.0.0";

/// Unreadable file or malformed polytope document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "n" or "p/q" (q > 0) exactly. Throws InputError otherwise.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

/**
 * Polytope document:
 *   { "name": "square", "dim": 2, "vertices": [[0, 0], [1, "1/2"], ...] }
 * Coordinates are JSON integers or "p/q" strings; floats are rejected.
 */
struct PolytopeFile {
  std::string name;
  std::size_t dim = 0;
  std::vector<QVector> vertices;
};

PolytopeFile parse_polytope_file(const std::string& text);
PolytopeFile read_polytope_file(const std::filesystem::path& path);
Polytope load_polytope(const std::filesystem::path& path);

/// Everything the report pipeline computes for one polytope.
struct Analysis {
  Polytope polytope;
  LiftedCone cone;
  FaceLattice lattice;
  ChainComplex complex;
  KReport report;
  double seconds = 0.0;
};

struct PipelineOptions {
  bool crosscheck_edge_rays = true;
  /// Testing aid: flip the sign of the first nonzero entry of D_1 before
  /// d o d = 0 is verified.
  bool inject_sign_flip = false;
};

/// lift -> face_lattice -> trivialize -> build_complex -> homology ->
/// k_report. Internal invariant violations surface as GeometryError or
/// ComplexError.
Analysis analyze(const Polytope& p, const PipelineOptions& options = {});

struct ReportSections {
  bool faces = false;
  bool boundary = false;
  bool homology = false;
  bool ktheory = false;
  bool timing = false;

  /// No section requested means all of them (timing excluded).
  ReportSections resolved() const;
};

nlohmann::ordered_json group_to_json(const AbelianGroup& g);
AbelianGroup group_from_json(const nlohmann::json& j);

nlohmann::ordered_json report_json(const Analysis& a, const ReportSections& sections);
std::string report_text(const Analysis& a, const ReportSections& sections);

/// Group descriptors recovered from a machine-readable report.
struct ParsedReport {
  std::string name;
  std::vector<std::size_t> f_vector;
  HomologyResult augmented;
  HomologyResult reduced;
  std::array<AbelianGroup, 2> k_algebra;
  std::array<AbelianGroup, 2> k_quotient;
};

ParsedReport parse_report_json(const std::string& text);

std::string render_isomorphism(const FaceLattice& a, const FaceLattice& b, const LatticeIso& iso);

}  // namespace polyk

#endif  // POLYK_IO_HPP
