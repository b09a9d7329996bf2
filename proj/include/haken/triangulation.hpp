#pragma once

// Fixed one-vertex triangulation of the closed orientable genus-2 surface.
//
// The surface is an octagon with boundary word  a b a' b' c d c' d'
// (primes are inverses), fan-triangulated from the base corner by the
// diagonals e1..e5.  After identification there is a single vertex, nine
// edges and six triangles (Euler characteristic 1 - 9 + 6 = -2).
//
// All triangles are oriented counterclockwise in the octagon, and every
// edge occurs exactly once with each direction among triangle sides, so
// the orientation is coherent.

#include <array>
#include <stdexcept>
#include <string>

namespace haken {

using EdgeId = int;  // 0..8
using TriId = int;   // 0..5

inline constexpr int kNumEdges = 9;
inline constexpr int kNumTriangles = 6;
inline constexpr int kNumCorners = 18;  // 3 per triangle, all at the vertex

inline constexpr EdgeId kEdgeA = 0;
inline constexpr EdgeId kEdgeB = 1;
inline constexpr EdgeId kEdgeC = 2;
inline constexpr EdgeId kEdgeD = 3;
inline constexpr EdgeId kEdgeE1 = 4;
inline constexpr EdgeId kEdgeE2 = 5;
inline constexpr EdgeId kEdgeE3 = 6;
inline constexpr EdgeId kEdgeE4 = 7;
inline constexpr EdgeId kEdgeE5 = 8;

inline const char* edge_name(EdgeId e) {
  static const char* names[kNumEdges] = {"a", "b", "c", "d", "e1", "e2", "e3", "e4", "e5"};
  return names[e];
}

// One side slot of a triangle.  dir = +1 when the counterclockwise boundary
// traversal of the triangle runs along the edge's intrinsic direction.
struct Side {
  EdgeId edge;
  int dir;
};

// side_of[t][k]: the k-th side of triangle t in counterclockwise order.
inline constexpr std::array<std::array<Side, 3>, kNumTriangles> kSides = {{
    {{{kEdgeA, +1}, {kEdgeB, +1}, {kEdgeE1, -1}}},
    {{{kEdgeE1, +1}, {kEdgeA, -1}, {kEdgeE2, -1}}},
    {{{kEdgeE2, +1}, {kEdgeB, -1}, {kEdgeE3, -1}}},
    {{{kEdgeE3, +1}, {kEdgeC, +1}, {kEdgeE4, -1}}},
    {{{kEdgeE4, +1}, {kEdgeD, +1}, {kEdgeE5, -1}}},
    {{{kEdgeE5, +1}, {kEdgeC, -1}, {kEdgeD, -1}}},
}};

// A side occurrence, addressed as (triangle, side index).
struct SideRef {
  TriId tri = -1;
  int k = -1;
  bool operator==(const SideRef&) const = default;
};

// Corner id 3*t + k denotes the corner of triangle t between side k-1
// (arriving) and side k (leaving); it sits at the single vertex.
inline constexpr int corner_id(TriId t, int k) { return 3 * t + k; }
inline constexpr TriId corner_tri(int c) { return c / 3; }
inline constexpr int corner_k(int c) { return c % 3; }

// An edge end: 0 = intrinsic tail, 1 = intrinsic head.
struct EdgeEnd {
  EdgeId edge;
  int end;
  bool operator==(const EdgeEnd&) const = default;
};

struct Triangulation {
  // occ[e][0] = side occurrence with dir +1, occ[e][1] = with dir -1.
  std::array<std::array<SideRef, 2>, kNumEdges> occ;

  // Link of the vertex: cyclic sequence of the 18 corners, and the edge end
  // crossed between consecutive corners.  link_slot[i] is crossed when
  // walking from link_corner[i] to link_corner[(i+1) % 18].
  std::array<int, kNumCorners> link_corner;
  std::array<EdgeEnd, kNumCorners> link_slot;

  // Inverse lookup: position of each corner in the link cycle.
  std::array<int, kNumCorners> link_pos_of_corner;

  Triangulation() {
    for (auto& pair : occ) pair = {SideRef{}, SideRef{}};
    for (TriId t = 0; t < kNumTriangles; ++t)
      for (int k = 0; k < 3; ++k) {
        const Side s = kSides[t][k];
        SideRef& slot = occ[s.edge][s.dir > 0 ? 0 : 1];
        if (slot.tri != -1) throw std::logic_error("duplicate side occurrence");
        slot = {t, k};
      }
    for (EdgeId e = 0; e < kNumEdges; ++e)
      if (occ[e][0].tri == -1 || occ[e][1].tri == -1)
        throw std::logic_error("edge missing an occurrence");

    // Walk the link.  From corner (t,k), cross the end of edge side_of(t,k)
    // at that side's tail; on the partner occurrence that end is the head,
    // so we arrive at the corner after it.
    std::array<bool, kNumCorners> seen{};
    int c = corner_id(0, 0);
    for (int i = 0; i < kNumCorners; ++i) {
      if (seen[c]) throw std::logic_error("link walk revisits a corner early");
      seen[c] = true;
      link_corner[i] = c;
      link_pos_of_corner[c] = i;
      const TriId t = corner_tri(c);
      const int k = corner_k(c);
      const Side s = kSides[t][k];
      link_slot[i] = {s.edge, s.dir > 0 ? 0 : 1};
      const SideRef partner = occ[s.edge][s.dir > 0 ? 1 : 0];
      c = corner_id(partner.tri, (partner.k + 1) % 3);
    }
    if (c != link_corner[0]) throw std::logic_error("link walk does not close");
    for (bool b : seen)
      if (!b) throw std::logic_error("link walk misses a corner");
  }

  SideRef partner(SideRef s) const {
    const Side side = kSides[s.tri][s.k];
    const auto& both = occ[side.edge];
    return both[0] == s ? both[1] : both[0];
  }

  // Side-position <-> intrinsic edge index for a side occurrence carrying a
  // weight-w edge.  Positions run from the side's tail; intrinsic indices run
  // from the edge's tail.
  static int side_pos_to_index(Side s, int w, int pos) {
    return s.dir > 0 ? pos : w - 1 - pos;
  }
  static int index_to_side_pos(Side s, int w, int idx) {
    return s.dir > 0 ? idx : w - 1 - idx;
  }
};

inline const Triangulation& surface() {
  static const Triangulation tri;
  return tri;
}

}  // namespace haken
