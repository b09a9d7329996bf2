// Command-line front end over the library: diagram presets, budgeted
// builds of the five complexes, verification suites, re-rendering of
// exported artifacts, and the on-disk enumeration cache.  Every run is
// deterministic given its flags and the model version; the worker count
// changes wall time only, never bytes.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <haken/io.hpp>

namespace {

using namespace haken;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCacheMismatch = 3;
constexpr int kExitVerifyFail = 4;

struct Options {
  int p = 0;
  int q = 0;
  int max_weight = 6;
  int radius = 3;
  int workers = 1;
  std::string kind;
  std::vector<std::string> suites;
  std::string out;
  std::string format = "json";
  std::string cache_dir;
  std::string base;
  std::string side = "V";
  std::string preset;
  std::string input;
};

// Suite names are often written with the real symbol; accept both.
std::string normalized_suite(std::string name) {
  const std::string geq = "\xE2\x89\xA5";
  for (size_t at = name.find(geq); at != std::string::npos; at = name.find(geq))
    name.replace(at, geq.size(), ">=");
  return name;
}

HeegaardDiagram load_diagram(const Options& o) {
  if (!o.preset.empty()) return read_diagram_file(o.preset);
  if (o.p == 0 || o.q == 0) throw std::invalid_argument("need --p and --q, or --preset");
  return build_diagram(o.p, o.q);
}

std::string stamped_name(const HeegaardDiagram& d, const std::string& stem, int max_weight,
                         const std::string& ext) {
  return stem + "-p" + std::to_string(d.p) + "-q" + std::to_string(d.q) + "-w" +
         std::to_string(max_weight) + "." + ext;
}

ComplexGraph build_kind(const HeegaardDiagram& d, const Options& o) {
  const Handlebody side = o.side == "W" ? Handlebody::W : Handlebody::V;
  if (o.kind == "disk-complex")
    return build_disk_complex(d, side, o.max_weight, false, o.workers);
  if (o.kind == "primitive-complex")
    return build_primitive_complex(d, side, o.max_weight, o.workers);
  if (o.kind == "pprime") return build_pprime_complex(d, o.max_weight, -1, o.workers);
  if (o.kind == "sphere-complex") return build_sphere_complex(d, o.max_weight, o.workers);
  if (o.kind == "dual-tree") {
    const auto prim = enumerate_primitive_disks(d, Handlebody::V, o.max_weight, o.workers);
    if (prim.empty()) throw std::invalid_argument("no primitive disks at this budget");
    DiskClass base = detail::lightest(prim, 1).front();
    if (!o.base.empty()) {
      const auto it = std::find_if(prim.begin(), prim.end(),
                                   [&](const DiskClass& x) { return x.key == o.base; });
      if (it == prim.end())
        throw std::invalid_argument("--base is not a primitive disk at this budget");
      base = *it;
    }
    return build_dual_tree(d, base, o.max_weight, o.workers);
  }
  throw std::invalid_argument("unknown kind " + o.kind);
}

int run_build(const Options& o) {
  if (!o.cache_dir.empty()) install_disk_cache(o.cache_dir);
  const HeegaardDiagram d = load_diagram(o);
  if (o.kind == "diagram") {
    const std::string out = o.out.empty() ? stamped_name(d, "diagram", o.max_weight, "txt") : o.out;
    write_diagram_file(d, out);
    std::cout << out << "\n";
    return kExitOk;
  }
  const ComplexGraph g = build_kind(d, o);
  const nlohmann::json j = graph_to_json(g);
  const std::string out =
      o.out.empty() ? stamped_name(d, kind_name(g.kind), o.max_weight, o.format) : o.out;
  if (o.format == "dot")
    write_text_file(out, graph_json_to_dot(j));
  else
    write_json_file(out, j);
  std::cout << out << "\n";
  return kExitOk;
}

int run_verify(const Options& o) {
  if (!o.cache_dir.empty()) install_disk_cache(o.cache_dir);
  const HeegaardDiagram d = load_diagram(o);
  nlohmann::json reports = nlohmann::json::array();
  bool failed = false;
  for (const std::string& raw : o.suites) {
    const VerifierReport r = verify(d, normalized_suite(raw), o.max_weight, o.radius, o.workers);
    failed |= r.failed();
    for (const PropertyResult& p : r.properties)
      std::cout << r.suite << " / " << p.name << ": " << verdict_name(p.verdict) << "\n";
    reports.push_back(report_to_json(r));
  }
  const std::string out =
      o.out.empty() ? stamped_name(d, "verify", o.max_weight, "json") : o.out;
  nlohmann::json top;
  top["budget"] = budget_to_json(detail::budget_of(d, o.max_weight));
  top["overall"] = failed ? "fail" : "pass";
  top["reports"] = std::move(reports);
  write_json_file(out, top);
  if (failed) {
    std::cout << "certificates: " << out << "\n";
    return kExitVerifyFail;
  }
  std::cout << out << "\n";
  return kExitOk;
}

int run_export(const Options& o) {
  std::ifstream in(o.input);
  if (!in) throw std::invalid_argument("cannot read " + o.input);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("artifact is not valid json: " + o.input);
  }
  const std::string out =
      o.out.empty() ? std::filesystem::path(o.input).stem().string() + "-export." + o.format
                    : o.out;
  if (o.format == "dot")
    write_text_file(out, graph_json_to_dot(j));
  else
    write_json_file(out, j);
  std::cout << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haken spheres and primitive disks of genus-2 lens space splittings, "
               "explored at bounded weight"};
  app.require_subcommand(1);

  Options o;
  if (const char* env = std::getenv("HAKEN_CACHE_DIR")) o.cache_dir = env;

  const auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--p", o.p, "Lens space parameter p");
    cmd->add_option("--q", o.q, "Lens space parameter q");
    cmd->add_option("--preset", o.preset, "Diagram preset file instead of --p/--q");
    cmd->add_option("--max-weight", o.max_weight, "Weight budget for disk enumeration")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--out", o.out, "Output path (stamped default)");
    cmd->add_option("--cache-dir", o.cache_dir, "Disk-set cache directory (env HAKEN_CACHE_DIR)");
    cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1, 64));
  };

  CLI::App* build = app.add_subcommand("build", "Construct a diagram or complex and write it out");
  build
      ->add_option("kind", o.kind,
                   "diagram, disk-complex, primitive-complex, pprime, dual-tree, sphere-complex")
      ->required();
  add_common(build);
  build->add_option("--format", o.format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  build->add_option("--side", o.side, "Handlebody for disk complexes")
      ->check(CLI::IsMember({"V", "W"}));
  build->add_option("--base", o.base, "Base primitive disk key for dual-tree");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run verification suites on a diagram");
  add_common(verify_cmd);
  verify_cmd->add_option("--suite", o.suites, "Suite name (repeatable)")->required();
  verify_cmd->add_option("--radius", o.radius, "Neighborhood radius for separation checks")
      ->check(CLI::Range(0, 32));

  CLI::App* export_cmd = app.add_subcommand("export", "Re-render an exported artifact");
  export_cmd->add_option("input", o.input, "Artifact file from build or verify")->required();
  export_cmd->add_option("--format", o.format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  export_cmd->add_option("--out", o.out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) return run_build(o);
    if (verify_cmd->parsed()) return run_verify(o);
    return run_export(o);
  } catch (const CacheMismatch& e) {
    std::cerr << "cache mismatch: " << e.what() << "\n";
    return kExitCacheMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
