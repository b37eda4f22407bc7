// polyk: face lattices, cellular complexes and K-theory reports for rational
// convex polytopes.
//
// Exit codes: 0 success, 1 input error, 2 internal invariant violation,
// 3 non-isomorphic comparison.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "polyk/io.hpp"

namespace fs = std::filesystem;
using namespace polyk;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInternalError = 2;
constexpr int kNotIsomorphic = 3;

// Runs `body`, mapping exception families onto the exit-code contract.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const PolytopeError& e) {
    std::cerr << "invalid polytope: " << e.what() << "\n";
    return kInputError;
  } catch (const ComplexError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kInternalError;
  } catch (const GeometryError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kInternalError;
  } catch (const LinalgError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kInternalError;
  }
}

int cmd_validate(const std::string& path) {
  return guarded([&] {
    const Polytope p = load_polytope(path);
    std::cout << "valid: " << p.name() << " (dim " << p.dim() << ", " << p.num_vertices() << " vertices)\n";
    return kOk;
  });
}

int cmd_report(const std::string& path, const ReportSections& sections, bool as_json, const PipelineOptions& opts) {
  return guarded([&] {
    const Analysis a = analyze(load_polytope(path), opts);
    if (as_json)
      std::cout << report_json(a, sections).dump(2) << "\n";
    else
      std::cout << report_text(a, sections);
    return kOk;
  });
}

int cmd_compare(const std::string& path_a, const std::string& path_b) {
  return guarded([&] {
    const FaceLattice a = face_lattice(load_polytope(path_a));
    const FaceLattice b = face_lattice(load_polytope(path_b));
    const LatticeIso iso = is_isomorphic(a, b);
    std::cout << render_isomorphism(a, b, iso);
    return iso.isomorphic ? kOk : kNotIsomorphic;
  });
}

int cmd_corpus(const std::string& dir, bool as_json, const ReportSections& sections) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  if (ec) {
    std::cerr << "input error: cannot list " << dir << ": " << ec.message() << "\n";
    return kInputError;
  }
  std::sort(files.begin(), files.end());
  int worst = kOk;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    std::string error;
    const int code = guarded([&] {
      const Analysis a = analyze(load_polytope(f));
      if (as_json) {
        auto doc = report_json(a, sections);
        all.push_back({{"file", f.filename().string()}, {"exit_code", 0}, {"report", doc}});
      } else {
        const auto& r = a.report;
        std::cout << f.filename().string() << ": f-vector";
        for (auto x : r.f_vector) std::cout << ' ' << x;
        std::cout << "; E2 " << (r.e2_vanishes ? "= 0" : "!= 0") << "; K_1(A_Omega/K) = " << r.k_quotient.K[1].to_string()
                  << "\n";
      }
      return kOk;
    });
    if (code != kOk) {
      if (as_json) all.push_back({{"file", f.filename().string()}, {"exit_code", code}});
      else std::cout << f.filename().string() << ": failed with exit code " << code << "\n";
    }
    worst = std::max(worst, code);
  }
  if (as_json) std::cout << all.dump(2) << "\n";
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Face lattices, cellular complexes and K-theory of Wiener-Hopf algebras over rational polytopes"};
  app.set_version_flag("--version", std::string("polyk ") + kToolVersion);
  app.require_subcommand(1);

  std::string path, path_b, dir;
  ReportSections sections;
  bool as_json = false;
  PipelineOptions opts;

  auto* validate_cmd = app.add_subcommand("validate", "Check that a polytope file is well formed and in convex position");
  validate_cmd->add_option("FILE", path, "polytope file")->required();

  auto* report_cmd = app.add_subcommand("report", "Run the full pipeline and print a report");
  report_cmd->add_option("FILE", path, "polytope file")->required();
  report_cmd->add_flag("--faces", sections.faces, "face lattice");
  report_cmd->add_flag("--boundary", sections.boundary, "signed boundary matrices");
  report_cmd->add_flag("--homology", sections.homology, "augmented and reduced homology");
  report_cmd->add_flag("--ktheory", sections.ktheory, "E1/E2 pages and K-groups");
  report_cmd->add_flag("--timing", sections.timing, "include wall-clock time");
  report_cmd->add_flag("--json", as_json, "machine-readable output");
  report_cmd->add_flag("--inject-sign-flip", opts.inject_sign_flip, "testing aid: corrupt one incidence sign")
      ->group("");

  auto* compare_cmd = app.add_subcommand("compare", "Decide whether two polytopes have the same combinatorial type");
  compare_cmd->add_option("FILE_A", path, "first polytope file")->required();
  compare_cmd->add_option("FILE_B", path_b, "second polytope file")->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "Report on every *.json polytope file in a directory");
  corpus_cmd->add_option("DIR", dir, "corpus directory")->required();
  corpus_cmd->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*validate_cmd) return cmd_validate(path);
  if (*report_cmd) return cmd_report(path, sections, as_json, opts);
  if (*compare_cmd) return cmd_compare(path, path_b);
  if (*corpus_cmd) return cmd_corpus(dir, as_json, ReportSections{});
  return kInputError;
}
