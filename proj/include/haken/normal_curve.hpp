#pragma once

// Normal multicurves on the fixed genus-2 triangulation, stored as the
// nine-entry vector of edge weights.
//
// A weight vector is admissible when every triangle has even weight sum and
// satisfies the triangle inequality; an admissible vector determines a unique
// normal position, and tracing recovers its components together with their
// signed crossing sequences.  Weight vectors are positions, not isotopy
// classes: sliding a strand across the vertex changes the vector.  Isotopy
// classes are identified by the crossing word of the curve (see words.hpp),
// never by comparing vectors.

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "haken/triangulation.hpp"

namespace haken {

using Weights = std::array<int, 9>;

inline constexpr Weights kZeroWeights{};

// Weight of triangle t's side k under w.
inline int side_weight(const Weights& w, TriId t, int k) { return w[kSides[t][k].edge]; }

// Arcs of a normal curve cut off corners.  Corner k of triangle t lies
// between sides k-1 and k; the count of arcs there is determined by the
// side weights.
inline int corner_count(const Weights& w, TriId t, int k) {
  const int wk = side_weight(w, t, k);
  const int wprev = side_weight(w, t, (k + 2) % 3);
  const int wopp = side_weight(w, t, (k + 1) % 3);
  return (wprev + wk - wopp) / 2;
}

inline bool admissible(const Weights& w) {
  for (int x : w)
    if (x < 0) return false;
  for (TriId t = 0; t < kNumTriangles; ++t) {
    const int w0 = side_weight(w, t, 0), w1 = side_weight(w, t, 1), w2 = side_weight(w, t, 2);
    if ((w0 + w1 + w2) % 2 != 0) return false;
    if (w0 > w1 + w2 || w1 > w0 + w2 || w2 > w0 + w1) return false;
  }
  return true;
}

inline void require_admissible(const Weights& w) {
  for (int x : w)
    if (x < 0) throw std::invalid_argument("normal weights must be nonnegative");
  for (TriId t = 0; t < kNumTriangles; ++t) {
    const int w0 = side_weight(w, t, 0), w1 = side_weight(w, t, 1), w2 = side_weight(w, t, 2);
    std::ostringstream os;
    if ((w0 + w1 + w2) % 2 != 0) {
      os << "odd weight sum at triangle " << t;
      throw std::invalid_argument(os.str());
    }
    if (w0 > w1 + w2 || w1 > w0 + w2 || w2 > w0 + w1) {
      os << "triangle inequality fails at triangle " << t;
      throw std::invalid_argument(os.str());
    }
  }
}

// A point where the multicurve crosses an edge, by intrinsic index.
struct PointRef {
  EdgeId edge = -1;
  int index = -1;
  bool operator==(const PointRef&) const = default;
  auto operator<=>(const PointRef&) const = default;
};

// One step of a traced component: the crossing point, the triangle holding
// the arc to the next point, and the sign of the crossing (+1 when the walk
// passes from the dir- occurrence into the dir+ occurrence, i.e. onto the
// left side of the edge).
struct TraceStep {
  PointRef point;
  TriId arc_tri = -1;
  int crossing_sign = 0;
};

struct TracedComponent {
  Weights weights = kZeroWeights;
  std::array<int, 9> signed_crossings{};  // depends on traversal direction, fixed per trace
  std::vector<TraceStep> steps;           // cyclic
  int total_weight() const {
    int s = 0;
    for (int x : weights) s += x;
    return s;
  }
};

struct Trace {
  Weights total = kZeroWeights;
  std::vector<TracedComponent> components;
};

namespace detail {

// Arc partner of a point inside one triangle.  Point sits on side k of
// triangle t at side position p (from the side's tail); the arc it belongs to
// cuts off either the corner at the side's tail (k) or at its head (k+1).
inline std::pair<int, int> arc_partner(const Weights& w, TriId t, int k, int p) {
  const int n_tail = corner_count(w, t, k);
  if (p < n_tail) {
    // corner k, depth p: partner is the p-th point from the head of side k-1.
    const int kp = (k + 2) % 3;
    return {kp, side_weight(w, t, kp) - 1 - p};
  }
  // corner k+1, depth j counted from the head of side k.
  const int j = side_weight(w, t, k) - 1 - p;
  return {(k + 1) % 3, j};
}

inline int point_id(const Weights& w, PointRef p) {
  int base = 0;
  for (EdgeId e = 0; e < p.edge; ++e) base += w[e];
  return base + p.index;
}

}  // namespace detail

inline Trace trace(const Weights& w) {
  require_admissible(w);
  const Triangulation& tri = surface();
  Trace out;
  out.total = w;
  int total_points = 0;
  for (int x : w) total_points += x;
  std::vector<bool> seen(total_points, false);

  for (EdgeId e0 = 0; e0 < kNumEdges; ++e0) {
    for (int i0 = 0; i0 < w[e0]; ++i0) {
      if (seen[detail::point_id(w, {e0, i0})]) continue;
      TracedComponent comp;
      PointRef p{e0, i0};
      // Enter through the dir+ occurrence first: a positive crossing.
      SideRef cur = tri.occ[e0][0];
      while (true) {
        const int id = detail::point_id(w, p);
        if (seen[id]) break;
        seen[id] = true;
        comp.weights[p.edge] += 1;
        const Side s = kSides[cur.tri][cur.k];
        const int sign = s.dir > 0 ? +1 : -1;
        comp.signed_crossings[p.edge] += sign;
        comp.steps.push_back({p, cur.tri, sign});
        // Cross the arc inside cur.tri, then hop to the other occurrence.
        const int pos = Triangulation::index_to_side_pos(s, w[p.edge], p.index);
        const auto [k2, pos2] = detail::arc_partner(w, cur.tri, cur.k, pos);
        const Side s2 = kSides[cur.tri][k2];
        p = {s2.edge, Triangulation::side_pos_to_index(s2, w[s2.edge], pos2)};
        cur = tri.partner({cur.tri, k2});
      }
      out.components.push_back(std::move(comp));
    }
  }
  return out;
}

inline int component_count(const Weights& w) { return static_cast<int>(trace(w).components.size()); }

inline bool is_connected_curve(const Weights& w) {
  return admissible(w) && component_count(w) == 1;
}

// ====== Homology ======

// Crossing the edges a, b, c, d reads off the curve's class in the dual
// one-relator presentation of the fundamental group (the diagonals e1..e5 are
// interior to the octagon and contribute nothing).  Abelianizing, the net
// signed crossings with a, b, c, d are coordinates for first homology.
inline std::array<int, 4> homology_coords(const TracedComponent& c) {
  return {c.signed_crossings[kEdgeA], c.signed_crossings[kEdgeB], c.signed_crossings[kEdgeC],
          c.signed_crossings[kEdgeD]};
}

// Algebraic intersection pairing in the signed crossing coordinates: the
// (a, b) and (c, d) handle pairs are symplectic planes, with the loop dual
// to a crossing the loop dual to b positively once, likewise c against d.
inline long homology_pairing(const std::array<int, 4>& u, const std::array<int, 4>& v) {
  return static_cast<long>(u[0]) * v[1] - static_cast<long>(u[1]) * v[0] +
         static_cast<long>(u[2]) * v[3] - static_cast<long>(u[3]) * v[2];
}

// Mod-2 class of the whole multicurve: parities of the a, b, c, d weights.
inline uint8_t homology_class_mod2(const Weights& w) {
  return static_cast<uint8_t>((w[kEdgeA] & 1) | ((w[kEdgeB] & 1) << 1) | ((w[kEdgeC] & 1) << 2) |
                              ((w[kEdgeD] & 1) << 3));
}

// A multicurve is null-homologous mod 2 exactly when all weights are even;
// for a connected curve this is the separating test.  (Admissibility forces
// the diagonal parities from the a, b, c, d parities, so checking all nine
// entries agrees with checking the four homology bits.)
inline bool is_separating(const Weights& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x % 2 == 0; });
}

// A validated admissible multicurve position.
struct NormalCurve {
  Weights w = kZeroWeights;

  NormalCurve() = default;
  static NormalCurve from_weights(const Weights& raw) {
    require_admissible(raw);
    return NormalCurve{raw};
  }

  bool empty() const { return w == kZeroWeights; }
  int total_weight() const {
    int s = 0;
    for (int x : w) s += x;
    return s;
  }
  bool operator==(const NormalCurve&) const = default;
  auto operator<=>(const NormalCurve&) const = default;

 private:
  explicit NormalCurve(const Weights& ww) : w(ww) {}
};

}  // namespace haken
