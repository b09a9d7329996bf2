// Budgeted complexes over a fixed diagram: builder invariants, cycle search
// and forest analysis on model graphs, the sphere complex with its V-side
// projection, and the named verification suites at small pinned budgets.

#include <haken/complexes.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace haken;

namespace {

ComplexGraph synthetic(int n, std::vector<std::pair<int, int>> edges) {
  // Single-digit labels keep the vertex vector sorted by key.
  REQUIRE(n <= 10);
  ComplexGraph g;
  for (int i = 0; i < n; ++i)
    g.vertices.push_back({"v" + std::to_string(i), std::nullopt, std::nullopt});
  g.edges = std::move(edges);
  detail::finish_edges(g);
  return g;
}

std::set<std::vector<int>> cycle_set(const ComplexGraph& g, int max_len) {
  const auto cycles = find_cycles(g, max_len);
  return {cycles.begin(), cycles.end()};
}

std::set<std::pair<std::string, std::string>> edge_keys(const ComplexGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [u, v] : g.edges) out.insert({g.vertices[u].key, g.vertices[v].key});
  return out;
}

const DiskClass& disk_by_key(const std::vector<DiskClass>& disks, const std::string& key) {
  for (const DiskClass& d : disks)
    if (d.key == key) return d;
  FAIL("no disk with key " + key);
  return disks.front();
}

}  // namespace

TEST_CASE("cycle search on model graphs is exact") {
  const ComplexGraph path = synthetic(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(find_cycles(path, 6).empty());
  CHECK(is_forest(path));
  CHECK(component_count(path) == 1);
  CHECK_THROWS_AS(find_cycles(path, 2), std::invalid_argument);

  const ComplexGraph forest = synthetic(5, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(is_forest(forest));
  CHECK(component_count(forest) == 2);

  const ComplexGraph triangle = synthetic(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(cycle_set(triangle, 3) == std::set<std::vector<int>>{{0, 1, 2}});
  CHECK(cycle_set(triangle, 6) == std::set<std::vector<int>>{{0, 1, 2}});
  CHECK_FALSE(is_forest(triangle));

  const ComplexGraph diamond = synthetic(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(cycle_set(diamond, 3) == std::set<std::vector<int>>{{0, 1, 2}, {1, 2, 3}});
  CHECK(cycle_set(diamond, 4) ==
        std::set<std::vector<int>>{{0, 1, 2}, {1, 2, 3}, {0, 1, 3, 2}});

  const ComplexGraph k4 = synthetic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(find_cycles(k4, 3).size() == 4);
  CHECK(find_cycles(k4, 4).size() == 7);

  const ComplexGraph bowtie = synthetic(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(cycle_set(bowtie, 6) == std::set<std::vector<int>>{{0, 1, 2}, {2, 3, 4}});
}

TEST_CASE("edge cycle census on a model graph") {
  const ComplexGraph diamond = synthetic(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  const auto cycles = find_cycles(diamond, 4);
  const auto census = edge_cycle_census(diamond, cycles);
  REQUIRE(census.size() == diamond.edges.size());
  for (const auto& [edge, ids] : census) CHECK(ids.size() == 2);
}

TEST_CASE("hop neighborhoods") {
  const ComplexGraph path = synthetic(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(neighborhood(path, 0, 0) == std::set<int>{0});
  CHECK(neighborhood(path, 0, 2) == std::set<int>{0, 1, 2});
  CHECK(neighborhood(path, 2, 1) == std::set<int>{1, 2, 3});
  CHECK(neighborhood(path, 0, 9) == std::set<int>{0, 1, 2, 3, 4});
}

TEST_CASE("disk complex structure at a small budget") {
  const HeegaardDiagram d = build_diagram(3, 1);
  const ComplexGraph g = build_disk_complex(d, Handlebody::V, 3);
  CHECK(g.kind == ComplexKind::DiskComplex);
  CHECK(g.budget.p == 3);
  CHECK(g.budget.q == 1);
  CHECK(g.budget.max_weight == 3);
  CHECK(g.budget.model_version == kModelVersion);
  REQUIRE(!g.vertices.empty());

  const int n = static_cast<int>(g.vertices.size());
  for (int i = 0; i + 1 < n; ++i) CHECK(g.vertices[i].key < g.vertices[i + 1].key);
  for (const GraphVertex& v : g.vertices) {
    REQUIRE(v.disk.has_value());
    CHECK(v.disk->key == v.key);
    CHECK_FALSE(v.pair.has_value());
  }

  std::set<std::pair<int, int>> expected;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (cached_intersection(*g.vertices[i].disk, *g.vertices[j].disk) == 0)
        expected.insert({i, j});
  CHECK(std::set<std::pair<int, int>>(g.edges.begin(), g.edges.end()) == expected);

  // Every pairwise-adjacent triple is listed, and none extends to four
  // pairwise-disjoint disks: the complex is two dimensional.
  std::set<std::array<int, 3>> triples;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (expected.count({i, j}) && expected.count({i, k}) && expected.count({j, k}))
          triples.insert({i, j, k});
  CHECK(std::set<std::array<int, 3>>(g.two_simplices.begin(), g.two_simplices.end()) == triples);
  REQUIRE(!triples.empty());
  for (const auto& t : g.two_simplices)
    for (int other = 0; other < n; ++other) {
      if (other == t[0] || other == t[1] || other == t[2]) continue;
      const bool clique = expected.count({std::min(other, t[0]), std::max(other, t[0])}) &&
                          expected.count({std::min(other, t[1]), std::max(other, t[1])}) &&
                          expected.count({std::min(other, t[2]), std::max(other, t[2])});
      CHECK_FALSE(clique);
    }
}

TEST_CASE("budget growth induces subgraphs") {
  const HeegaardDiagram d = build_diagram(3, 1);
  const ComplexGraph small = build_disk_complex(d, Handlebody::V, 3);
  const ComplexGraph big = build_disk_complex(d, Handlebody::V, 5);
  REQUIRE(small.vertices.size() < big.vertices.size());
  const auto small_edges = edge_keys(small);
  const auto big_edges = edge_keys(big);
  for (const GraphVertex& v : small.vertices) CHECK(big.vertex_index(v.key) >= 0);
  for (size_t i = 0; i < small.vertices.size(); ++i)
    for (size_t j = i + 1; j < small.vertices.size(); ++j) {
      const auto key = std::make_pair(small.vertices[i].key, small.vertices[j].key);
      CHECK(small_edges.count(key) == big_edges.count(key));
    }
}

TEST_CASE("primitive complex is the full subcomplex on primitive disks") {
  const HeegaardDiagram d = build_diagram(3, 1);
  const ComplexGraph all = build_disk_complex(d, Handlebody::V, 4);
  const ComplexGraph prim = build_primitive_complex(d, Handlebody::V, 4);
  CHECK(prim.kind == ComplexKind::PrimitiveComplex);
  REQUIRE(!prim.vertices.empty());
  CHECK(prim.vertices.size() < all.vertices.size());
  for (const GraphVertex& v : prim.vertices) {
    CHECK(is_primitive_disk(d, *v.disk));
    CHECK(all.vertex_index(v.key) >= 0);
  }
  const auto all_edges = edge_keys(all);
  const auto prim_edges = edge_keys(prim);
  for (size_t i = 0; i < prim.vertices.size(); ++i)
    for (size_t j = i + 1; j < prim.vertices.size(); ++j) {
      const auto key = std::make_pair(prim.vertices[i].key, prim.vertices[j].key);
      CHECK(prim_edges.count(key) == all_edges.count(key));
    }
}

TEST_CASE("cycles of length four or more never swallow a triangle") {
  const HeegaardDiagram d = build_diagram(3, 1);
  const ComplexGraph g = build_disk_complex(d, Handlebody::V, 3);
  const auto cycles = find_cycles(g, 6);
  for (const auto& cyc : cycles) {
    if (cyc.size() < 4) continue;
    std::set<std::pair<int, int>> on_cycle;
    for (size_t i = 0; i < cyc.size(); ++i) {
      const int u = cyc[i], v = cyc[(i + 1) % cyc.size()];
      on_cycle.insert({std::min(u, v), std::max(u, v)});
    }
    for (const auto& t : g.two_simplices) {
      const int inside = static_cast<int>(on_cycle.count({t[0], t[1]})) +
                         static_cast<int>(on_cycle.count({t[0], t[2]})) +
                         static_cast<int>(on_cycle.count({t[1], t[2]}));
      CHECK(inside <= 2);
    }
  }
}

TEST_CASE("common-dual subcomplex coincides with the primitive complex for q = 1") {
  const HeegaardDiagram d = build_diagram(3, 1);
  const ComplexGraph prim = build_primitive_complex(d, Handlebody::V, 4);
  const ComplexGraph pp = build_pprime_complex(d, 4);
  CHECK(pp.kind == ComplexKind::PPrime);
  REQUIRE(pp.vertices.size() == prim.vertices.size());
  CHECK(pp.edges == prim.edges);
  CHECK(pp.two_simplices == prim.two_simplices);
  REQUIRE(!pp.edges.empty());
  REQUIRE(!pp.two_simplices.empty());

  const auto& w_disks = enumerate_disks(d, Handlebody::W, 10);
  REQUIRE(pp.witnesses.size() == pp.edges.size());
  for (size_t e = 0; e < pp.edges.size(); ++e) {
    REQUIRE(!pp.witnesses[e].empty());
    const DiskClass& witness = disk_by_key(w_disks, pp.witnesses[e].front());
    CHECK(cached_intersection(witness, *pp.vertices[pp.edges[e].first].disk) == 1);
    CHECK(cached_intersection(witness, *pp.vertices[pp.edges[e].second].disk) == 1);
    CHECK(is_primitive_disk(d, witness));
  }
}

TEST_CASE("common-dual subcomplex thins out for q = 2") {
  const HeegaardDiagram d = build_diagram(5, 2);
  const ComplexGraph prim = build_primitive_complex(d, Handlebody::V, 4);
  const ComplexGraph pp = build_pprime_complex(d, 4);
  REQUIRE(pp.vertices.size() == prim.vertices.size());
  CHECK(pp.edges.size() < prim.edges.size());
  for (const auto& e : pp.edges) CHECK(std::binary_search(prim.edges.begin(), prim.edges.end(), e));
  CHECK(pp.two_simplices.empty());
  CHECK(is_forest(pp));

  const ComplexGraph pp72 = build_pprime_complex(build_diagram(7, 2), 4);
  CHECK(pp72.two_simplices.empty());
  CHECK(is_forest(pp72));
}

TEST_CASE("sphere complex vertices and edges are exactly the dual pairs") {
  const HeegaardDiagram d = build_diagram(3, 1);
  const ComplexGraph g = build_sphere_complex(d, 4);
  CHECK(g.kind == ComplexKind::Sphere);
  CHECK(g.two_simplices.empty());

  std::set<std::string> expected_keys;
  for (const DiskClass& disk : enumerate_primitive_disks(d, Handlebody::V, 4))
    for (const DiskClass& dual : dual_disks(d, disk, 4))
      expected_keys.insert(disk.key + "|" + dual.key);
  std::set<std::string> got_keys;
  for (const GraphVertex& v : g.vertices) {
    REQUIRE(v.pair.has_value());
    CHECK(v.pair->key == v.key);
    CHECK(cached_intersection(v.pair->v_disk, v.pair->w_disk) == 1);
    got_keys.insert(v.key);
  }
  CHECK(got_keys == expected_keys);
  REQUIRE(g.vertices.size() == expected_keys.size());

  const int n = static_cast<int>(g.vertices.size());
  std::set<std::pair<int, int>> expected_edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const DualPair& a = *g.vertices[i].pair;
      const DualPair& b = *g.vertices[j].pair;
      const bool share_v = a.v_disk.key == b.v_disk.key;
      const bool share_w = a.w_disk.key == b.w_disk.key;
      if (share_v && cached_intersection(a.w_disk, b.w_disk) == 0) expected_edges.insert({i, j});
      if (share_w && cached_intersection(a.v_disk, b.v_disk) == 0) expected_edges.insert({i, j});
    }
  CHECK(std::set<std::pair<int, int>>(g.edges.begin(), g.edges.end()) == expected_edges);
  REQUIRE(!g.edges.empty());

  REQUIRE(g.witnesses.size() == g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const DualPair& a = *g.vertices[g.edges[e].first].pair;
    const DualPair& b = *g.vertices[g.edges[e].second].pair;
    REQUIRE(g.witnesses[e].size() == 1);
    const std::string& shared = g.witnesses[e].front();
    CHECK((shared == a.v_disk.key || shared == a.w_disk.key));
    CHECK((shared == b.v_disk.key || shared == b.w_disk.key));
  }
}

TEST_CASE("sphere projection to the V side") {
  const HeegaardDiagram d = build_diagram(3, 1);
  const ComplexGraph g = build_sphere_complex(d, 4);
  const PhiResult phi = phi_V(g);
  REQUIRE(phi.vertex_map.size() == g.vertices.size());

  std::set<std::string> v_keys;
  for (const GraphVertex& v : g.vertices) v_keys.insert(v.pair->v_disk.key);
  REQUIRE(phi.graph.vertices.size() == v_keys.size());
  for (size_t i = 0; i < g.vertices.size(); ++i)
    CHECK(phi.graph.vertices[phi.vertex_map[i]].key == g.vertices[i].pair->v_disk.key);

  for (const auto& [u, v] : g.edges) {
    const int a = phi.vertex_map[u], b = phi.vertex_map[v];
    if (a == b) {
      CHECK(g.vertices[u].pair->v_disk.key == g.vertices[v].pair->v_disk.key);
    } else {
      const auto& adj = phi.graph.adj[a];
      CHECK(std::binary_search(adj.begin(), adj.end(), b));
    }
  }

  // Image edges are primitive pairs with the shared dual as witness, so the
  // projection lands inside the common-dual subcomplex at the same budget.
  const ComplexGraph pp = build_pprime_complex(d, 4);
  const auto pp_edges = edge_keys(pp);
  for (const auto& [a, b] : edge_keys(phi.graph)) CHECK(pp_edges.count({a, b}) == 1);

  CHECK_THROWS_AS(phi_V(build_disk_complex(d, Handlebody::V, 3)), std::invalid_argument);
}

TEST_CASE("seed square in the order-two lens space") {
  const HeegaardDiagram d = build_diagram(2, 1);
  const auto& prim = enumerate_primitive_disks(d, Handlebody::V, 3);
  const DiskClass* first = nullptr;
  const DiskClass* second = nullptr;
  for (size_t i = 0; i < prim.size() && !first; ++i)
    for (size_t j = i + 1; j < prim.size() && !first; ++j)
      if (cached_intersection(prim[i], prim[j]) == 0) {
        first = &prim[i];
        second = &prim[j];
      }
  REQUIRE(first != nullptr);
  const auto duals = common_duals(d, *first, *second, 8);
  REQUIRE(duals.size() == 2);

  const ComplexGraph g = build_sphere_complex(d, 8);
  const std::set<std::string> corner_keys = {
      first->key + "|" + duals[0].key, first->key + "|" + duals[1].key,
      second->key + "|" + duals[0].key, second->key + "|" + duals[1].key};
  std::vector<int> corners;
  for (const std::string& key : corner_keys) {
    const int idx = g.vertex_index(key);
    REQUIRE(idx >= 0);
    corners.push_back(idx);
  }
  int square_edges = 0;
  for (size_t i = 0; i < corners.size(); ++i)
    for (size_t j = i + 1; j < corners.size(); ++j) {
      const auto& adj = g.adj[corners[i]];
      if (std::binary_search(adj.begin(), adj.end(), corners[j])) ++square_edges;
    }
  CHECK(square_edges == 4);

  bool found = false;
  for (const auto& cyc : find_cycles(g, 4)) {
    std::set<std::string> keys;
    for (int v : cyc) keys.insert(g.vertices[v].key);
    if (keys == corner_keys) found = true;
  }
  CHECK(found);
}

TEST_CASE("dual trees collect the duals of a fixed disk") {
  const HeegaardDiagram d = build_diagram(3, 1);
  const DiskClass base =
      detail::lightest(enumerate_primitive_disks(d, Handlebody::V, 4), 1).front();
  const ComplexGraph tree = build_dual_tree(d, base, 4);
  CHECK(tree.kind == ComplexKind::DualTree);
  CHECK(tree.base_key == base.key);
  const auto duals = dual_disks(d, base, 4);
  REQUIRE(tree.vertices.size() == duals.size());
  for (size_t i = 0; i < duals.size(); ++i) {
    CHECK(tree.vertices[i].key == duals[i].key);
    CHECK(cached_intersection(*tree.vertices[i].disk, base) == 1);
  }
  CHECK(is_forest(tree));
}

TEST_CASE("exactly the primitive disks acquire duals") {
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{3, 1}, {5, 2}}) {
    const HeegaardDiagram d = build_diagram(p, q);
    for (const DiskClass& disk : enumerate_primitive_disks(d, Handlebody::V, 4))
      CHECK_FALSE(dual_disks(d, disk, 6).empty());
    for (const DiskClass& disk : enumerate_disks(d, Handlebody::V, 3)) {
      if (is_primitive_disk(d, disk)) continue;
      int once = 0;
      for (const DiskClass& cand : enumerate_disks(d, Handlebody::W, 8)) {
        if (std::abs(homology_pairing(disk.homology, cand.homology)) != 1) continue;
        if (cached_intersection(disk, cand) == 1) ++once;
      }
      CHECK(once == 0);
    }
  }
}

TEST_CASE("every primitive disk gains pair partners under a budget bump") {
  for (const auto& [p, q] : std::vector<std::pair<int, int>>{{3, 1}, {5, 2}}) {
    const HeegaardDiagram d = build_diagram(p, q);
    const auto& partners = enumerate_primitive_disks(d, Handlebody::V, 5);
    for (const DiskClass& disk : enumerate_primitive_disks(d, Handlebody::V, 3)) {
      int disjoint = 0;
      for (const DiskClass& other : partners)
        if (other.key != disk.key && cached_intersection(disk, other) == 0) ++disjoint;
      CHECK(disjoint >= 2);
    }
  }
}

TEST_CASE("verification suites pass at pinned budgets") {
  const HeegaardDiagram d21 = build_diagram(2, 1);
  const HeegaardDiagram d31 = build_diagram(3, 1);
  const HeegaardDiagram d41 = build_diagram(4, 1);
  const HeegaardDiagram d52 = build_diagram(5, 2);

  const VerifierReport squares = verify(d21, "L21-4-cycles", 8);
  CHECK_FALSE(squares.failed());
  REQUIRE(squares.properties.size() == 3);
  CHECK(squares.properties[0].name == "edge-in-unique-cycle");
  CHECK(squares.properties[0].verdict == Verdict::EvidencePass);
  CHECK(squares.properties[1].name == "at-most-one-cycle-per-edge");
  CHECK(squares.properties[1].verdict == Verdict::EvidencePass);
  CHECK(squares.properties[2].name == "cycle-pattern");
  CHECK(squares.properties[2].verdict == Verdict::ConclusivePass);

  const VerifierReport hexagons = verify(d31, "L31-6-cycles", 10);
  CHECK_FALSE(hexagons.failed());
  // Below the calibrated cap the census tier cannot close its cycles.
  CHECK_THROWS_AS(verify(d21, "L21-4-cycles", 6), std::invalid_argument);
  CHECK_THROWS_AS(verify(d31, "L31-6-cycles", 8), std::invalid_argument);

  CHECK_FALSE(verify(d21, "no-3-cycles", 4).failed());
  CHECK_FALSE(verify(d52, "no-3-cycles", 6).failed());
  CHECK_FALSE(verify(d41, "forest-p>=4", 6).failed());
  CHECK_FALSE(verify(d52, "disconnection-q>=2", 6).failed());
  CHECK_FALSE(verify(d21, "lemma2-counts", 4).failed());
  CHECK_FALSE(verify(d31, "lemma2-counts", 4).failed());
  CHECK_FALSE(verify(d52, "lemma2-counts", 4).failed());
  CHECK_FALSE(verify(d31, "lemma5-tree", 4).failed());

  const VerifierReport triples = verify(d31, "lemma3-triples", 6);
  CHECK_FALSE(triples.failed());
  REQUIRE(triples.properties.size() == 3);
  CHECK(triples.properties[0].name == "triples-exist");
  CHECK(triples.properties[0].verdict == Verdict::ConclusivePass);
  CHECK(triples.properties[2].name == "pair-triple-ceilings");
  const VerifierReport no_triples = verify(d41, "lemma3-triples", 4);
  CHECK_FALSE(no_triples.failed());
  REQUIRE(no_triples.properties.size() == 1);
  CHECK(no_triples.properties[0].name == "triples-absent");

  for (const PropertyResult& p : squares.properties) CHECK(p.certificates.empty());
  CHECK(squares.budget.p == 2);
  CHECK(squares.budget.max_weight == 8);
  CHECK(squares.budget.model_version == kModelVersion);
}

TEST_CASE("suites gate on the preset and reject unknown names") {
  const HeegaardDiagram d21 = build_diagram(2, 1);
  const HeegaardDiagram d31 = build_diagram(3, 1);
  const HeegaardDiagram d52 = build_diagram(5, 2);
  CHECK_THROWS_AS(verify(d31, "L21-4-cycles", 8), std::invalid_argument);
  CHECK_THROWS_AS(verify(d21, "L31-6-cycles", 10), std::invalid_argument);
  CHECK_THROWS_AS(verify(d52, "forest-p>=4", 4), std::invalid_argument);
  CHECK_THROWS_AS(verify(d21, "forest-p>=4", 4), std::invalid_argument);
  CHECK_THROWS_AS(verify(d31, "disconnection-q>=2", 4), std::invalid_argument);
  CHECK_THROWS_AS(verify(d31, "no-such-suite", 4), std::invalid_argument);
  CHECK(verify_suite_names().size() == 8);
}

TEST_CASE("kind and verdict names") {
  CHECK(std::string(kind_name(ComplexKind::DiskComplex)) == "disk-complex");
  CHECK(std::string(kind_name(ComplexKind::PrimitiveComplex)) == "primitive-complex");
  CHECK(std::string(kind_name(ComplexKind::PPrime)) == "pprime");
  CHECK(std::string(kind_name(ComplexKind::DualTree)) == "dual-tree");
  CHECK(std::string(kind_name(ComplexKind::Sphere)) == "sphere-complex");
  CHECK(std::string(verdict_name(Verdict::ConclusivePass)) == "conclusive-pass");
  CHECK(std::string(verdict_name(Verdict::EvidencePass)) == "evidence-pass");
  CHECK(std::string(verdict_name(Verdict::Fail)) == "fail");
}
