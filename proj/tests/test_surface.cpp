#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "haken/normal_curve.hpp"
#include "haken/triangulation.hpp"

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

Weights add(const Weights& a, const Weights& b) {
  Weights out;
  for (int i = 0; i < 9; ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

TEST_CASE("triangulation is coherently oriented and one-vertexed") {
  const Triangulation& tri = surface();
  for (EdgeId e = 0; e < kNumEdges; ++e) {
    const SideRef plus = tri.occ[e][0];
    const SideRef minus = tri.occ[e][1];
    REQUIRE(kSides[plus.tri][plus.k].edge == e);
    REQUIRE(kSides[plus.tri][plus.k].dir == +1);
    REQUIRE(kSides[minus.tri][minus.k].edge == e);
    REQUIRE(kSides[minus.tri][minus.k].dir == -1);
    REQUIRE(tri.partner(plus) == minus);
    REQUIRE(tri.partner(minus) == plus);
  }
  // The link visits all 18 corners, crossing each edge end exactly once.
  std::set<std::pair<int, int>> ends;
  for (int i = 0; i < kNumCorners; ++i) ends.insert({tri.link_slot[i].edge, tri.link_slot[i].end});
  REQUIRE(ends.size() == kNumCorners);
}

TEST_CASE("admissibility") {
  CHECK(admissible(kZeroWeights));
  CHECK(admissible(kVertexLink));
  CHECK(admissible(kLoopX));
  CHECK(admissible(kLoopY));
  CHECK(admissible(kLoopZ));
  CHECK(admissible(kLoopW));

  CHECK_FALSE(admissible(weights_of({{kEdgeA, 1}})));  // odd triangle sum
  CHECK_THROWS_AS(require_admissible(weights_of({{kEdgeA, 1}})), std::invalid_argument);
  // weight 4 on e1 against weights 1,1 on a,b breaks the triangle inequality
  CHECK_FALSE(admissible(weights_of({{kEdgeA, 1}, {kEdgeB, 1}, {kEdgeE1, 4}})));
  CHECK_THROWS_AS(require_admissible(weights_of({{kEdgeA, 1}, {kEdgeB, 1}, {kEdgeE1, 4}})),
                  std::invalid_argument);
  Weights neg = kZeroWeights;
  neg[kEdgeC] = -2;
  CHECK_FALSE(admissible(neg));
}

TEST_CASE("vertex link traces to a single component through every corner") {
  for (TriId t = 0; t < kNumTriangles; ++t)
    for (int k = 0; k < 3; ++k) CHECK(corner_count(kVertexLink, t, k) == 1);
  Trace tr = trace(kVertexLink);
  REQUIRE(tr.components.size() == 1);
  CHECK(tr.components[0].steps.size() == 18);
  CHECK(tr.components[0].weights == kVertexLink);
}

TEST_CASE("the four dual loops trace as single curves") {
  for (const Weights& w : {kLoopX, kLoopY, kLoopZ, kLoopW}) {
    CAPTURE(w);
    Trace tr = trace(w);
    REQUIRE(tr.components.size() == 1);
    CHECK_FALSE(is_separating(w));
    // Each loop crosses every edge it meets coherently.
    const auto& c = tr.components[0];
    for (EdgeId e = 0; e < kNumEdges; ++e)
      CHECK(std::abs(c.signed_crossings[e]) == w[e]);
  }
  CHECK(trace(kLoopX).components[0].steps.size() == 2);
  CHECK(trace(kLoopY).components[0].steps.size() == 3);
}

TEST_CASE("dual loop crossing signs") {
  // Traced with the convention that the first crossing of the base edge is
  // positive, the a-dual loop crosses a and e1 once each, positively.
  const auto& c = trace(kLoopX).components[0];
  CHECK(c.signed_crossings == std::array<int, 9>{1, 0, 0, 0, 1, 0, 0, 0, 0});
  CHECK(homology_coords(c) == std::array<int, 4>{1, 0, 0, 0});
  const auto& cy = trace(kLoopY).components[0];
  CHECK(cy.signed_crossings == std::array<int, 9>{0, 1, 0, 0, 1, 1, 0, 0, 0});
  CHECK(homology_coords(cy) == std::array<int, 4>{0, 1, 0, 0});
}

TEST_CASE("sums of dual loops resolve as expected") {
  // x and y cross once, so the normal representative of their sum is a
  // single curve; x and z live in different handles and stay disjoint.
  CHECK(component_count(add(kLoopX, kLoopY)) == 1);
  CHECK(component_count(add(kLoopZ, kLoopW)) == 1);
  CHECK(component_count(add(kLoopX, kLoopZ)) == 2);
  CHECK(component_count(add(kLoopX, kLoopW)) == 2);
  CHECK(component_count(add(kLoopY, kLoopZ)) == 2);
}

TEST_CASE("mod-2 homology distinguishes the dual loops") {
  const uint8_t bx = homology_class_mod2(kLoopX);
  const uint8_t by = homology_class_mod2(kLoopY);
  const uint8_t bz = homology_class_mod2(kLoopZ);
  const uint8_t bw = homology_class_mod2(kLoopW);
  // The four classes are linearly independent over F_2.
  std::set<uint8_t> span;
  for (int m = 0; m < 16; ++m) {
    uint8_t v = 0;
    if (m & 1) v ^= bx;
    if (m & 2) v ^= by;
    if (m & 4) v ^= bz;
    if (m & 8) v ^= bw;
    span.insert(v);
  }
  CHECK(span.size() == 16);
  CHECK(homology_class_mod2(kZeroWeights) == 0);
  CHECK(homology_class_mod2(kVertexLink) == 0);
}

TEST_CASE("separating test is the mod-2 parity test") {
  CHECK(is_separating(kZeroWeights));
  CHECK(is_separating(kVertexLink));
  CHECK_FALSE(is_separating(kLoopX));
  CHECK(is_separating(add(kLoopX, kLoopX)));
  // Admissibility ties the diagonal parities to the handle parities, so the
  // two formulations of the test agree on every admissible vector.
  Weights w;
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    for (int i = 0; i < 9; ++i) {
      w[i] = c % 3;
      c /= 3;
    }
    if (!admissible(w)) continue;
    CHECK(is_separating(w) == (homology_class_mod2(w) == 0));
  }
}

TEST_CASE("tracing partitions the crossing points") {
  // Component weights of any admissible vector add back up to the vector.
  Weights w;
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    for (int i = 0; i < 9; ++i) {
      w[i] = c % 3;
      c /= 3;
    }
    if (!admissible(w)) continue;
    Trace tr = trace(w);
    Weights sum = kZeroWeights;
    size_t steps = 0;
    for (const auto& comp : tr.components) {
      for (int i = 0; i < 9; ++i) sum[i] += comp.weights[i];
      steps += comp.steps.size();
      REQUIRE(comp.steps.size() == static_cast<size_t>(comp.total_weight()));
    }
    REQUIRE(sum == w);
    size_t total = 0;
    for (int x : w) total += x;
    REQUIRE(steps == total);
  }
}

TEST_CASE("normal curve factory validates") {
  NormalCurve c = NormalCurve::from_weights(kLoopX);
  CHECK(c.w == kLoopX);
  CHECK(c.total_weight() == 2);
  CHECK_FALSE(c.empty());
  CHECK(NormalCurve::from_weights(kZeroWeights).empty());
  CHECK_THROWS_AS(NormalCurve::from_weights(weights_of({{kEdgeA, 1}})), std::invalid_argument);
}
