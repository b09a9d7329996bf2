#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "haken/arrangement.hpp"

using namespace haken;

namespace {

Weights weights_of(std::initializer_list<std::pair<EdgeId, int>> entries) {
  Weights w = kZeroWeights;
  for (auto [e, v] : entries) w[e] = v;
  return w;
}

const Weights kLoopX = weights_of({{kEdgeA, 1}, {kEdgeE1, 1}});
const Weights kLoopY = weights_of({{kEdgeB, 1}, {kEdgeE1, 1}, {kEdgeE2, 1}});
const Weights kLoopZ = weights_of({{kEdgeC, 1}, {kEdgeE4, 1}, {kEdgeE5, 1}});
const Weights kLoopW = weights_of({{kEdgeD, 1}, {kEdgeE5, 1}});
const Weights kVertexLink = {2, 2, 2, 2, 2, 2, 2, 2, 2};

// The vertical curve of the standard (p, q) gluing: q strands over a, p over b.
Weights beta1(int p, int q) {
  return weights_of({{kEdgeA, q}, {kEdgeB, p}, {kEdgeE1, p - q}, {kEdgeE2, p}});
}

NormalCurve curve_of(const Weights& w) { return NormalCurve::from_weights(w); }

std::string key_of(const Weights& w) {
  const Trace t = trace(w);
  REQUIRE(t.components.size() == 1);
  return curve_key(t.components[0]);
}

}  // namespace

TEST_CASE("drawing reproduces the trace") {
  for (const Weights& w : {kLoopX, kLoopY, kLoopZ, kLoopW, beta1(5, 2), kVertexLink}) {
    const Drawing d = make_drawing(w);
    const Trace t = trace(w);
    REQUIRE(d.curve[0].size() == t.components.size());
    REQUIRE(d.curve[1].empty());
    for (size_t c = 0; c < t.components.size(); ++c) {
      CHECK(detail::drawing_word(d, 0, c) == surface_word(t.components[c]));
      CHECK(d.curve[0][c].size() == t.components[c].steps.size());
    }
    // A lone multicurve has no crossings at all.
    const Layout lay = detail::analyze(d);
    CHECK(lay.count() == 0);
  }
}

TEST_CASE("dual basis loops intersect like handles") {
  CHECK(intersection_number(kLoopX, kLoopY) == 1);
  CHECK(intersection_number(kLoopZ, kLoopW) == 1);
  CHECK(intersection_number(kLoopX, kLoopZ) == 0);
  CHECK(intersection_number(kLoopX, kLoopW) == 0);
  CHECK(intersection_number(kLoopY, kLoopZ) == 0);
  CHECK(intersection_number(kLoopY, kLoopW) == 0);
  // Symmetry of the pairing.
  CHECK(intersection_number(kLoopY, kLoopX) == 1);
  CHECK(intersection_number(kLoopW, kLoopZ) == 1);
}

TEST_CASE("a curve is disjoint from a parallel copy of itself") {
  for (const Weights& w : {kLoopX, kLoopY, kLoopZ, kLoopW, beta1(2, 1), beta1(5, 2)})
    CHECK(intersection_number(w, w) == 0);
}

TEST_CASE("null-homotopic clutter is removable") {
  // The vertex link bounds, so it can be pushed off anything.  The isotopy
  // reroutes the drawn curve, so compare classes rather than literal words.
  for (const Weights& w : {kLoopX, kLoopY, kLoopZ, kLoopW, beta1(5, 2)}) {
    Drawing d = make_drawing(w, kVertexLink);
    const Layout lay = make_minimal(d);
    CHECK(lay.count() == 0);
    CHECK(curve_key_from_word(detail::drawing_word(d, 0, 0)) == key_of(w));
  }
}

TEST_CASE("vertical gluing curves hit the meridian p times") {
  const int cases[][2] = {{2, 1}, {3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}, {7, 3}};
  for (const auto& pq : cases) {
    const int p = pq[0], q = pq[1];
    const Weights b = beta1(p, q);
    REQUIRE(is_connected_curve(b));
    CHECK(intersection_number(kLoopX, b) == p);
    CHECK(intersection_number(b, kLoopX) == p);
    CHECK(intersection_number(kLoopZ, b) == 0);
    CHECK(intersection_number(kLoopW, b) == 0);
  }
}

TEST_CASE("homology pairing matrix of the dual basis") {
  const Weights loops[4] = {kLoopX, kLoopY, kLoopZ, kLoopW};
  long J[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Drawing d = make_drawing(loops[i], loops[j]);
      J[i][j] = make_minimal(d).algebraic();
    }
  std::ostringstream dump;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) dump << J[i][j] << ' ';
    dump << '\n';
  }
  INFO(dump.str());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(J[i][j] == -J[j][i]);
  const long mag[4][4] = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(J[i][j]) == mag[i][j]);
  // Frozen signs of the two symplectic blocks.
  CHECK(J[0][1] == 1);
  CHECK(J[2][3] == 1);
}

TEST_CASE("algebraic pairing through homology matches minimal drawings") {
  // <u, v> = coords(u)^T J coords(v) with the frozen J above.
  const long J[4][4] = {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}};
  const Weights curves[] = {kLoopX, kLoopY, kLoopZ, kLoopW, beta1(2, 1), beta1(5, 2), beta1(7, 3)};
  for (const Weights& u : curves)
    for (const Weights& v : curves) {
      const auto cu = homology_coords(trace(u).components[0]);
      const auto cv = homology_coords(trace(v).components[0]);
      long alg = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) alg += cu[i] * J[i][j] * cv[j];
      Drawing d = make_drawing(u, v);
      const Layout lay = make_minimal(d);
      CHECK(lay.algebraic() == alg);
      CHECK(lay.count() >= std::abs(alg));
    }
}

TEST_CASE("twists along a disjoint curve do nothing") {
  const NormalCurve x = curve_of(kLoopX);
  const NormalCurve z = curve_of(kLoopZ);
  CHECK(dehn_twist(x, z, 3) == x);
  CHECK(dehn_twist(z, x, -2) == z);
}

TEST_CASE("opposite twists cancel") {
  const NormalCurve x = curve_of(kLoopX);
  const NormalCurve y = curve_of(kLoopY);
  const NormalCurve z = curve_of(kLoopZ);
  const NormalCurve w = curve_of(kLoopW);
  for (int k : {1, 2}) {
    CHECK(dehn_twist(dehn_twist(x, y, k), y, -k) == x);
    CHECK(dehn_twist(dehn_twist(y, x, k), x, -k) == y);
    CHECK(dehn_twist(dehn_twist(z, w, k), w, -k) == z);
  }
  const NormalCurve b = curve_of(beta1(3, 1));
  CHECK(dehn_twist(dehn_twist(b, x, 1), x, -1) == b);
}

TEST_CASE("twist powers compose") {
  const NormalCurve x = curve_of(kLoopX);
  const NormalCurve y = curve_of(kLoopY);
  CHECK(dehn_twist(x, y, 2) == dehn_twist(dehn_twist(x, y, 1), y, 1));
  CHECK(dehn_twist(x, y, -2) == dehn_twist(dehn_twist(x, y, -1), y, -1));
  const NormalCurve b = curve_of(beta1(2, 1));
  CHECK(dehn_twist(b, x, 2) == dehn_twist(dehn_twist(b, x, 1), x, 1));
}

TEST_CASE("twist powers scale intersection quadratically") {
  // i(T_t^n(c), c) = |n| i(c, t)^2 once |n| >= 2.
  const NormalCurve x = curve_of(kLoopX);
  const NormalCurve y = curve_of(kLoopY);
  const NormalCurve w = curve_of(kLoopW);
  const NormalCurve z = curve_of(kLoopZ);
  for (int n : {2, -2, 3}) {
    CHECK(intersection_number(dehn_twist(x, y, n), x) == std::abs(n));
    CHECK(intersection_number(dehn_twist(w, z, n), w) == std::abs(n));
  }
  // i(beta1(2,1), x) = 2, so the images meet beta1 in 4|n| points.
  const NormalCurve b = curve_of(beta1(2, 1));
  for (int n : {2, -2}) CHECK(intersection_number(dehn_twist(b, x, n), b) == 4 * std::abs(n));
}

TEST_CASE("twists act on mod-2 homology as transvections") {
  const NormalCurve x = curve_of(kLoopX);
  const NormalCurve y = curve_of(kLoopY);
  const NormalCurve b = curve_of(beta1(5, 2));
  struct Case {
    NormalCurve c, t;
    int k;
  } cases[] = {{x, y, 1}, {y, x, 1}, {b, x, 1}, {b, x, 2}, {x, y, -1}};
  for (const auto& cs : cases) {
    const NormalCurve img = dehn_twist(cs.c, cs.t, cs.k);
    const int flips = intersection_number(cs.c, cs.t) * std::abs(cs.k);
    const uint8_t want = flips % 2 ? homology_class_mod2(cs.c.w) ^ homology_class_mod2(cs.t.w)
                                   : homology_class_mod2(cs.c.w);
    CHECK(homology_class_mod2(img.w) == want);
  }
}

TEST_CASE("neighborhood boundary of a handle pair is the waist curve") {
  const NormalCurve eq1 = neighborhood_boundary(curve_of(kLoopX), curve_of(kLoopY));
  const NormalCurve eq2 = neighborhood_boundary(curve_of(kLoopZ), curve_of(kLoopW));
  REQUIRE(is_connected_curve(eq1.w));
  REQUIRE(is_connected_curve(eq2.w));
  CHECK(is_separating(eq1.w));
  CHECK(is_separating(eq2.w));
  // Both bound off the same handle, and the surface relator identifies the
  // two commutators, so the waist curves are isotopic.
  CHECK(key_of(eq1.w) == curve_key_from_word({1, 2, -1, -2}));
  CHECK(key_of(eq2.w) == curve_key_from_word({3, 4, -3, -4}));
  CHECK(key_of(eq1.w) == key_of(eq2.w));
  // The two weight vectors differ (they sit on opposite sides of the
  // vertex), which is exactly why identity lives in the word key.
  CHECK(eq1.w != eq2.w);
  // The waist misses all four basis loops.
  for (const Weights& w : {kLoopX, kLoopY, kLoopZ, kLoopW})
    CHECK(intersection_number(eq1.w, w) == 0);
}

TEST_CASE("neighborhood boundary is natural under the pair order") {
  const NormalCurve a = neighborhood_boundary(curve_of(kLoopX), curve_of(kLoopY));
  const NormalCurve b = neighborhood_boundary(curve_of(kLoopY), curve_of(kLoopX));
  CHECK(a == b);
}

TEST_CASE("surgery at cancelling crossings reduces intersection") {
  // The waist curve meets a cross-handle curve twice, with opposite signs.
  const NormalCurve eq = neighborhood_boundary(curve_of(kLoopX), curve_of(kLoopY));
  const Weights cross = weights_of({{kEdgeA, 1},
                                    {kEdgeC, 1},
                                    {kEdgeE1, 1},
                                    {kEdgeE2, 2},
                                    {kEdgeE3, 2},
                                    {kEdgeE4, 1},
                                    {kEdgeE5, 1}});
  REQUIRE(is_connected_curve(cross));
  const NormalCurve cc = curve_of(cross);
  REQUIRE(intersection_number(eq, cc) == 2);

  const auto res = surgery_resolutions(eq, cc);
  REQUIRE(!res.empty());
  for (const NormalCurve& r : res) {
    CHECK(is_connected_curve(r.w));
    CHECK(is_essential_curve(trace(r.w).components[0]));
    CHECK(intersection_number(r, cc) < 2);
  }
  // Determinism: same call, same answer.
  CHECK(surgery_resolutions(eq, cc) == res);
}
