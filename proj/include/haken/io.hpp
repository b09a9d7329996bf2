#pragma once

// Serialization: JSON and DOT exports of complexes and verifier reports,
// the structured-text diagram preset format, and the on-disk enumeration
// cache.  Exports are deterministic: object keys serialize sorted, vertex
// order is the canonical key order, and files carry budget stamps, never
// timestamps.  Cached and cold runs produce identical bytes.

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include <haken/complexes.hpp>

namespace haken {

// Raised when an on-disk artifact disagrees with this build's surface
// model or its own stamps.
struct CacheMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline nlohmann::json budget_to_json(const Budget& b) {
  return {{"p", b.p},
          {"q", b.q},
          {"max_weight", b.max_weight},
          {"model_version", b.model_version}};
}

inline nlohmann::json disk_to_json(const DiskClass& disk) {
  return {{"side", side_name(disk.side)},
          {"weights", disk.boundary.w},
          {"homology", disk.homology},
          {"word_self", f2_class_string(disk.word_self)},
          {"word_other", f2_class_string(disk.word_other)},
          {"key", disk.key}};
}

inline nlohmann::json pair_to_json(const DualPair& pair) {
  return {{"key", pair.key},
          {"v_disk", disk_to_json(pair.v_disk)},
          {"w_disk", disk_to_json(pair.w_disk)}};
}

inline nlohmann::json graph_to_json(const ComplexGraph& g) {
  nlohmann::json out;
  out["kind"] = kind_name(g.kind);
  out["budget"] = budget_to_json(g.budget);
  if (!g.base_key.empty()) out["base"] = g.base_key;
  nlohmann::json vertices = nlohmann::json::array();
  for (const GraphVertex& v : g.vertices) {
    nlohmann::json jv;
    jv["key"] = v.key;
    if (v.disk) jv["disk"] = disk_to_json(*v.disk);
    if (v.pair) jv["pair"] = pair_to_json(*v.pair);
    vertices.push_back(std::move(jv));
  }
  out["vertices"] = std::move(vertices);
  out["edges"] = g.edges;
  out["witnesses"] = g.witnesses;
  out["two_simplices"] = g.two_simplices;
  return out;
}

inline nlohmann::json report_to_json(const VerifierReport& r) {
  nlohmann::json props = nlohmann::json::array();
  for (const PropertyResult& p : r.properties)
    props.push_back({{"name", p.name},
                     {"verdict", verdict_name(p.verdict)},
                     {"details", p.details},
                     {"certificates", p.certificates}});
  return {{"suite", r.suite},
          {"budget", budget_to_json(r.budget)},
          {"overall", r.failed() ? "fail" : "pass"},
          {"properties", std::move(props)}};
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

// DOT rendering straight off the JSON form, so exported artifacts can be
// re-rendered without rebuilding any complex.
inline std::string graph_json_to_dot(const nlohmann::json& j) {
  if (!j.contains("kind") || !j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("artifact is not a complex export");
  const auto& budget = j.at("budget");
  std::ostringstream os;
  os << "graph \"" << detail::dot_escape(j.at("kind").get<std::string>()) << " p"
     << budget.at("p").get<int>() << " q" << budget.at("q").get<int>() << " w"
     << budget.at("max_weight").get<int>() << "\" {\n";
  os << "  node [shape=box];\n";
  const auto& vertices = j.at("vertices");
  for (size_t i = 0; i < vertices.size(); ++i)
    os << "  v" << i << " [label=\""
       << detail::dot_escape(vertices[i].at("key").get<std::string>()) << "\"];\n";
  for (const auto& e : j.at("edges"))
    os << "  v" << e[0].get<int>() << " -- v" << e[1].get<int>() << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string graph_to_dot(const ComplexGraph& g) { return graph_json_to_dot(graph_to_json(g)); }

// ====== Diagram preset files ======

namespace detail {

inline std::array<int, 4> crossing_table(const NormalCurve& c) {
  return homology_coords(single_component(trace(c.w)));
}

}  // namespace detail

// Structured text: a header with the slope and model version, then each of
// the four curves with its nine weights and its signed crossing counts
// against the four handle edges.
inline void write_diagram_file(const HeegaardDiagram& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "haken-diagram\n";
  out << "model-version " << kModelVersion << "\n";
  out << "p " << d.p << "\n";
  out << "q " << d.q << "\n";
  const std::pair<const char*, const NormalCurve*> curves[4] = {
      {"alpha1", &d.alpha1}, {"alpha2", &d.alpha2}, {"beta1", &d.beta1}, {"beta2", &d.beta2}};
  for (const auto& [name, curve] : curves) {
    out << "curve " << name << "\n";
    out << "weights";
    for (int w : curve->w) out << ' ' << w;
    out << "\n";
    out << "crossings";
    for (int x : detail::crossing_table(*curve)) out << ' ' << x;
    out << "\n";
  }
}

// Reads a preset, rebuilds the diagram from its slope, and demands that
// every stored weight vector and crossing table matches the rebuilt one.
inline HeegaardDiagram read_diagram_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  std::string tag;
  in >> tag;
  if (tag != "haken-diagram") throw std::invalid_argument("not a diagram preset file");
  std::string field, version;
  in >> field >> version;
  if (field != "model-version") throw std::invalid_argument("missing model-version");
  if (version != kModelVersion)
    throw CacheMismatch("preset model " + version + " does not match " + kModelVersion);
  int p = 0, q = 0;
  in >> field >> p;
  if (field != "p") throw std::invalid_argument("missing p");
  in >> field >> q;
  if (field != "q") throw std::invalid_argument("missing q");
  const HeegaardDiagram d = build_diagram(p, q);
  const std::pair<std::string, const NormalCurve*> curves[4] = {
      {"alpha1", &d.alpha1}, {"alpha2", &d.alpha2}, {"beta1", &d.beta1}, {"beta2", &d.beta2}};
  for (const auto& [name, curve] : curves) {
    std::string word;
    in >> field >> word;
    if (field != "curve" || word != name)
      throw std::invalid_argument("expected curve " + name);
    in >> field;
    if (field != "weights") throw std::invalid_argument("missing weights for " + name);
    Weights w = kZeroWeights;
    for (int& x : w) in >> x;
    in >> field;
    if (field != "crossings") throw std::invalid_argument("missing crossings for " + name);
    std::array<int, 4> crossings{};
    for (int& x : crossings) in >> x;
    if (!in) throw std::invalid_argument("truncated preset file");
    if (w != curve->w || crossings != detail::crossing_table(*curve))
      throw CacheMismatch("preset curve " + name + " does not match the generator");
  }
  return d;
}

// ====== Disk-set cache ======

// Cache files are content-addressed: every parameter that determines the
// enumeration result, including the model version, is part of the name.
inline std::string disk_cache_name(int p, int q, Handlebody side, int max_weight) {
  std::ostringstream os;
  os << "disks-p" << p << "-q" << q << "-" << side_name(side) << "-w" << max_weight << "-"
     << kModelVersion << ".json";
  return os.str();
}

namespace detail {

// Reads one cache file back into disk classes.  Every stored weight vector
// is re-validated through try_disk, so a loaded set is identical to what a
// cold enumeration would have produced or the load refuses.
inline std::optional<std::vector<DiskClass>> load_disk_cache(const HeegaardDiagram& d,
                                                             Handlebody side, int max_weight,
                                                             const std::filesystem::path& file) {
  if (!std::filesystem::exists(file)) return std::nullopt;
  std::ifstream in(file);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    throw CacheMismatch("unreadable cache file " + file.string());
  }
  if (j.value("p", -1) != d.p || j.value("q", -1) != d.q ||
      j.value("side", "") != side_name(side) || j.value("max_weight", -1) != max_weight ||
      j.value("model_version", "") != kModelVersion)
    throw CacheMismatch("cache stamps disagree with " + file.string());
  std::vector<DiskClass> disks;
  for (const auto& row : j.at("weights")) {
    Weights w = kZeroWeights;
    for (size_t i = 0; i < w.size(); ++i) w[i] = row.at(i).get<int>();
    std::optional<DiskClass> disk = try_disk(d, side, w);
    if (!disk) throw CacheMismatch("cache entry is not a disk in " + file.string());
    disks.push_back(std::move(*disk));
  }
  std::sort(disks.begin(), disks.end(),
            [](const DiskClass& a, const DiskClass& b) { return a.key < b.key; });
  return disks;
}

inline void store_disk_cache(const HeegaardDiagram& d, Handlebody side, int max_weight,
                             const std::vector<DiskClass>& disks,
                             const std::filesystem::path& file) {
  if (const std::filesystem::path parent = file.parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  nlohmann::json j;
  j["p"] = d.p;
  j["q"] = d.q;
  j["side"] = side_name(side);
  j["max_weight"] = max_weight;
  j["model_version"] = kModelVersion;
  nlohmann::json rows = nlohmann::json::array();
  for (const DiskClass& disk : disks) rows.push_back(disk.boundary.w);
  j["weights"] = std::move(rows);
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

}  // namespace detail

// Routes every enumeration through the cache directory: memo misses are
// satisfied from storage when a valid file exists, and fresh enumerations
// are written back for the next process.
inline void install_disk_cache(std::filesystem::path cache_dir) {
  detail::disk_set_provider() = [cache_dir](const HeegaardDiagram& d, Handlebody side,
                                            int max_weight) {
    return detail::load_disk_cache(d, side, max_weight,
                                   cache_dir / disk_cache_name(d.p, d.q, side, max_weight));
  };
  detail::disk_set_observer() = [cache_dir](const HeegaardDiagram& d, Handlebody side,
                                            int max_weight, const std::vector<DiskClass>& disks) {
    detail::store_disk_cache(d, side, max_weight, disks,
                             cache_dir / disk_cache_name(d.p, d.q, side, max_weight));
  };
}

inline void uninstall_disk_cache() {
  detail::disk_set_provider() = nullptr;
  detail::disk_set_observer() = nullptr;
}

// One-shot cached enumeration against an explicit directory.
inline const std::vector<DiskClass>& cached_enumerate(const HeegaardDiagram& d, Handlebody side,
                                                      int max_weight,
                                                      const std::filesystem::path& cache_dir,
                                                      int workers = 1) {
  if (cache_dir.empty()) return enumerate_disks(d, side, max_weight, workers);
  const std::filesystem::path file = cache_dir / disk_cache_name(d.p, d.q, side, max_weight);
  if (std::optional<std::vector<DiskClass>> stored =
          detail::load_disk_cache(d, side, max_weight, file)) {
    seed_disk_set(d, side, max_weight, std::move(*stored));
    return enumerate_disks(d, side, max_weight, workers);
  }
  const std::vector<DiskClass>& disks = enumerate_disks(d, side, max_weight, workers);
  detail::store_disk_cache(d, side, max_weight, disks, file);
  return disks;
}

inline std::string sphere_cache_name(int p, int q, int max_weight) {
  std::ostringstream os;
  os << "sphere-p" << p << "-q" << q << "-w" << max_weight << "-" << kModelVersion << ".json";
  return os.str();
}

namespace detail {

// Reads a stored sphere complex back.  Only the disk weight vectors and the
// incidence lists are stored; disks are re-derived through try_disk and the
// builder re-proves every vertex and edge before accepting the graph, so a
// loaded complex is identical to a cold rebuild or the load refuses.
inline std::optional<ComplexGraph> load_sphere_cache(const HeegaardDiagram& d, int max_weight,
                                                     const std::filesystem::path& file) {
  if (!std::filesystem::exists(file)) return std::nullopt;
  std::ifstream in(file);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    throw CacheMismatch("unreadable cache file " + file.string());
  }
  if (j.value("p", -1) != d.p || j.value("q", -1) != d.q ||
      j.value("max_weight", -1) != max_weight || j.value("model_version", "") != kModelVersion)
    throw CacheMismatch("cache stamps disagree with " + file.string());
  ComplexGraph g;
  g.kind = ComplexKind::Sphere;
  g.budget = Budget{d.p, d.q, max_weight, kModelVersion};
  for (const auto& row : j.at("vertices")) {
    Weights wv = kZeroWeights, ww = kZeroWeights;
    for (size_t i = 0; i < wv.size(); ++i) wv[i] = row.at("v").at(i).get<int>();
    for (size_t i = 0; i < ww.size(); ++i) ww[i] = row.at("w").at(i).get<int>();
    std::optional<DiskClass> v = try_disk(d, Handlebody::V, wv);
    std::optional<DiskClass> w = try_disk(d, Handlebody::W, ww);
    if (!v || !w) throw CacheMismatch("cache entry is not a disk pair in " + file.string());
    GraphVertex gv;
    gv.key = v->key + "|" + w->key;
    gv.pair = DualPair{std::move(*v), std::move(*w), gv.key};
    g.vertices.push_back(std::move(gv));
  }
  for (const auto& row : j.at("edges"))
    g.edges.emplace_back(row.at(0).get<int>(), row.at(1).get<int>());
  for (const auto& row : j.at("witnesses"))
    g.witnesses.push_back(row.get<std::vector<std::string>>());
  return g;
}

inline void store_sphere_cache(const HeegaardDiagram& d, int max_weight, const ComplexGraph& g,
                               const std::filesystem::path& file) {
  if (const std::filesystem::path parent = file.parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  nlohmann::json j;
  j["p"] = d.p;
  j["q"] = d.q;
  j["max_weight"] = max_weight;
  j["model_version"] = kModelVersion;
  nlohmann::json verts = nlohmann::json::array();
  for (const GraphVertex& v : g.vertices) {
    nlohmann::json row;
    row["v"] = v.pair->v_disk.boundary.w;
    row["w"] = v.pair->w_disk.boundary.w;
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  j["edges"] = g.edges;
  j["witnesses"] = g.witnesses;
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

}  // namespace detail

// Routes sphere complex construction through the cache directory, like
// install_disk_cache does for enumerations.
inline void install_sphere_cache(std::filesystem::path cache_dir) {
  detail::sphere_set_provider() = [cache_dir](const HeegaardDiagram& d, int max_weight) {
    return detail::load_sphere_cache(d, max_weight,
                                     cache_dir / sphere_cache_name(d.p, d.q, max_weight));
  };
  detail::sphere_set_observer() = [cache_dir](const HeegaardDiagram& d, int max_weight,
                                              const ComplexGraph& g) {
    detail::store_sphere_cache(d, max_weight, g,
                               cache_dir / sphere_cache_name(d.p, d.q, max_weight));
  };
}

inline void uninstall_sphere_cache() {
  detail::sphere_set_provider() = nullptr;
  detail::sphere_set_observer() = nullptr;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

inline void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace haken
