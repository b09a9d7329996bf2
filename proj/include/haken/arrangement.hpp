#pragma once

// Transverse drawings of curve pairs on the triangulated surface.
//
// A drawing places each curve as a cyclic sequence of edge-crossing points
// with an explicit order of points along every edge; inside a triangle the
// connecting arcs are simple chords, so two arcs cross exactly when their
// endpoints interleave along the triangle boundary.  Arcs of one side never
// cross each other (each side stays an embedded multicurve); crossings
// happen only between the two sides, and the order of crossings along a
// chord is well defined because the disjoint chords crossing it cut off
// nested boundary intervals around its start.
//
// Minimal position comes from bigon removal.  Two crossings adjacent along
// both curves with opposite signs span a bigon exactly when the loop formed
// by the two arcs is null-homotopic, which Dehn's algorithm decides.  For
// connected curves nothing else can sit inside such a bigon, so sliding one
// arc across it is an isotopy and strictly reduces the crossing count; a
// drawing without such a pair is minimal.
//
// On top of the same machinery: Dehn twists (each crossing strand is
// rerouted into a spiral of parallel laps around the twisting curve, with
// exact rational heights keeping the laps disjoint), curve surgery at a
// pair of adjacent opposite crossings, and the boundary of a regular
// neighborhood of two curves meeting once.

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "haken/normal_curve.hpp"
#include "haken/words.hpp"

namespace haken {

struct Drawing {
  struct Node {
    int pt = -1;     // point id
    TriId tri = -1;  // triangle of the arc to the next node
  };
  std::vector<EdgeId> pt_edge;                    // point id -> edge
  std::array<std::vector<int>, kNumEdges> order;  // live point ids, tail to head
  // curve[side][component] = cyclic node sequence
  std::array<std::vector<std::vector<Node>>, 2> curve;

  int new_point(EdgeId e) {
    pt_edge.push_back(e);
    return static_cast<int>(pt_edge.size()) - 1;
  }
};

// One crossing between the two sides, with its location in both curves'
// cyclic crossing orders.
struct Crossing {
  int a_curve = -1, a_arc = -1, a_rank = -1, a_pos = -1;
  int b_curve = -1, b_arc = -1, b_rank = -1, b_pos = -1;
  int sign = 0;  // orientation of the frame (side-0 direction, side-1 direction)
};

struct Layout {
  std::vector<Crossing> crossings;
  // Per curve: crossing ids in cyclic order along the curve.
  std::array<std::vector<std::vector<int>>, 2> along;
  // Per curve and arc: crossing ids on the arc, ordered from the arc start.
  std::array<std::vector<std::vector<std::vector<int>>>, 2> on_arc;

  int count() const { return static_cast<int>(crossings.size()); }
  long algebraic() const {
    long s = 0;
    for (const auto& x : crossings) s += x.sign;
    return s;
  }
};

namespace detail {

// side index of edge e in triangle t, or -1.
inline int side_in_tri(TriId t, EdgeId e) {
  for (int k = 0; k < 3; ++k)
    if (kSides[t][k].edge == e) return k;
  return -1;
}

struct Ranks {
  std::vector<int> rank;  // point id -> position along its edge, -1 if dead
  explicit Ranks(const Drawing& d) : rank(d.pt_edge.size(), -1) {
    for (const auto& ord : d.order)
      for (size_t i = 0; i < ord.size(); ++i) rank[ord[i]] = static_cast<int>(i);
  }
};

// Boundary position of a point around a triangle: side index first, then
// the offset along the side measured from the side's tail.
inline long long boundary_coord(const Drawing& d, const Ranks& r, TriId t, int pt) {
  const EdgeId e = d.pt_edge[pt];
  const int k = side_in_tri(t, e);
  if (k < 0) throw std::logic_error("arc endpoint is not on its triangle");
  if (r.rank[pt] < 0) throw std::logic_error("arc endpoint is not a live point");
  const Side s = kSides[t][k];
  const long long n = static_cast<long long>(d.order[e].size());
  const long long pos = s.dir > 0 ? r.rank[pt] : n - 1 - r.rank[pt];
  const long long stride = static_cast<long long>(d.pt_edge.size()) + 2;
  return k * stride + pos;
}

// Strictly between lo and hi in cyclic order.
inline bool in_cyclic(long long x, long long lo, long long hi) {
  return lo < hi ? (lo < x && x < hi) : (x > lo || x < hi);
}

// Crossing sign of a curve with the edge at a node: +1 when the arc after
// the node lies in the edge's dir+ triangle (the walk lands on the edge's
// left side), matching the trace convention.
inline int edge_sign_at(const Drawing& d, const Drawing::Node& n) {
  return surface().occ[d.pt_edge[n.pt]][0].tri == n.tri ? +1 : -1;
}

inline Word drawing_word(const Drawing& d, int side, int comp) {
  Word w;
  for (const auto& n : d.curve[side][comp])
    if (d.pt_edge[n.pt] <= kEdgeD) w.push_back((d.pt_edge[n.pt] + 1) * edge_sign_at(d, n));
  return w;
}

// Computes every crossing of a drawing.  Throws if arcs of one side cross
// or a curve fails to stay transverse: the sides must remain embedded.
inline Layout analyze(const Drawing& d) {
  const Ranks ranks(d);

  struct ArcRef {
    int side, curve, idx;
    long long from, to;
  };
  std::array<std::vector<ArcRef>, kNumTriangles> arcs_in;
  for (int side = 0; side < 2; ++side)
    for (size_t c = 0; c < d.curve[side].size(); ++c) {
      const auto& nodes = d.curve[side][c];
      const size_t n = nodes.size();
      for (size_t i = 0; i < n; ++i) {
        const auto& from = nodes[i];
        const auto& to = nodes[(i + 1) % n];
        // Transversality: the arcs before and after a point must lie in the
        // two different triangles of its edge.
        if (n >= 2 && from.tri == nodes[(i + n - 1) % n].tri)
          throw std::logic_error("curve is tangent to an edge");
        arcs_in[from.tri].push_back({side, static_cast<int>(c), static_cast<int>(i),
                                     boundary_coord(d, ranks, from.tri, from.pt),
                                     boundary_coord(d, ranks, from.tri, to.pt)});
      }
    }

  Layout out;
  for (int side = 0; side < 2; ++side) {
    out.on_arc[side].resize(d.curve[side].size());
    out.along[side].resize(d.curve[side].size());
    for (size_t c = 0; c < d.curve[side].size(); ++c)
      out.on_arc[side][c].resize(d.curve[side][c].size());
  }

  for (TriId t = 0; t < kNumTriangles; ++t) {
    const auto& arcs = arcs_in[t];
    for (size_t i = 0; i < arcs.size(); ++i)
      for (size_t j = i + 1; j < arcs.size(); ++j) {
        const ArcRef& x = arcs[i];
        const ArcRef& y = arcs[j];
        const bool u_in = in_cyclic(y.from, x.from, x.to);
        const bool v_in = in_cyclic(y.to, x.from, x.to);
        if (u_in == v_in) continue;
        if (x.side == y.side) throw std::logic_error("arcs of one side cross");
        const ArcRef& a = x.side == 0 ? x : y;
        const ArcRef& b = x.side == 0 ? y : x;
        // The ccw boundary run from a.from to a.to lies right of the chord,
        // so a side-1 start there means a right-to-left crossing: sign +1.
        Crossing cr;
        cr.a_curve = a.curve;
        cr.a_arc = a.idx;
        cr.b_curve = b.curve;
        cr.b_arc = b.idx;
        cr.sign = in_cyclic(b.from, a.from, a.to) ? +1 : -1;
        out.crossings.push_back(cr);
        const int id = static_cast<int>(out.crossings.size()) - 1;
        out.on_arc[0][a.curve][a.idx].push_back(id);
        out.on_arc[1][b.curve][b.idx].push_back(id);
      }
  }

  // Order the crossings along every arc: among disjoint chords crossing the
  // arc, the one met first cuts off the innermost interval around the arc
  // start.
  for (int side = 0; side < 2; ++side)
    for (size_t c = 0; c < d.curve[side].size(); ++c) {
      const auto& nodes = d.curve[side][c];
      for (size_t i = 0; i < nodes.size(); ++i) {
        auto& list = out.on_arc[side][c][i];
        if (list.size() < 2) continue;
        const auto& n = nodes[i];
        const long long start = boundary_coord(d, ranks, n.tri, n.pt);
        auto interval = [&](int id) {
          const Crossing& cr = out.crossings[id];
          const int oc = side == 0 ? cr.b_curve : cr.a_curve;
          const int oi = side == 0 ? cr.b_arc : cr.a_arc;
          const auto& onodes = d.curve[1 - side][oc];
          long long f = boundary_coord(d, ranks, n.tri, onodes[oi].pt);
          long long g =
              boundary_coord(d, ranks, n.tri, onodes[(oi + 1) % onodes.size()].pt);
          if (!in_cyclic(start, f, g)) std::swap(f, g);
          return std::pair<long long, long long>{f, g};
        };
        std::sort(list.begin(), list.end(), [&](int u, int v) {
          const auto iu = interval(u);
          const auto iv = interval(v);
          return in_cyclic(iu.first, iv.first, iv.second) &&
                 in_cyclic(iu.second, iv.first, iv.second);
        });
      }
    }

  for (int side = 0; side < 2; ++side)
    for (size_t c = 0; c < d.curve[side].size(); ++c) {
      auto& seq = out.along[side][c];
      for (size_t i = 0; i < d.curve[side][c].size(); ++i) {
        const auto& list = out.on_arc[side][c][i];
        for (size_t rank = 0; rank < list.size(); ++rank) {
          Crossing& cr = out.crossings[list[rank]];
          if (side == 0) {
            cr.a_rank = static_cast<int>(rank);
            cr.a_pos = static_cast<int>(seq.size());
          } else {
            cr.b_rank = static_cast<int>(rank);
            cr.b_pos = static_cast<int>(seq.size());
          }
          seq.push_back(list[rank]);
        }
      }
    }
  return out;
}

// Node indices passed while travelling forward from one crossing to another:
// everything strictly after the start arc up to and including the node that
// starts the target arc.  Same-arc targets further along the arc give the
// empty walk; same-arc targets behind the start wrap the whole way around.
inline std::vector<int> nodes_between(const Drawing& d, const Layout& lay, int side,
                                      int comp, int pos_from, int pos_to) {
  const auto& seq = lay.along[side][comp];
  const Crossing& cf = lay.crossings[seq[pos_from]];
  const Crossing& ct = lay.crossings[seq[pos_to]];
  const int arc_f = side == 0 ? cf.a_arc : cf.b_arc;
  const int arc_t = side == 0 ? ct.a_arc : ct.b_arc;
  const int rank_f = side == 0 ? cf.a_rank : cf.b_rank;
  const int rank_t = side == 0 ? ct.a_rank : ct.b_rank;
  const int n = static_cast<int>(d.curve[side][comp].size());
  if (arc_f == arc_t && rank_t > rank_f) return {};
  std::vector<int> idx;
  int i = arc_f;
  do {
    i = (i + 1) % n;
    idx.push_back(i);
  } while (i != arc_t);
  return idx;
}

inline Word letters_between(const Drawing& d, const Layout& lay, int side, int comp,
                            int pos_from, int pos_to) {
  Word w;
  for (int idx : nodes_between(d, lay, side, comp, pos_from, pos_to)) {
    const auto& node = d.curve[side][comp][idx];
    if (d.pt_edge[node.pt] <= kEdgeD)
      w.push_back((d.pt_edge[node.pt] + 1) * edge_sign_at(d, node));
  }
  return w;
}

inline void erase_point(Drawing& d, int pt) {
  auto& ord = d.order[d.pt_edge[pt]];
  ord.erase(std::remove(ord.begin(), ord.end(), pt), ord.end());
}

// New point immediately next to `anchor` on its edge, on the tail side when
// `before` holds.
inline int insert_adjacent(Drawing& d, int anchor, bool before) {
  const EdgeId e = d.pt_edge[anchor];
  const int pt = d.new_point(e);
  auto& ord = d.order[e];
  const auto it = std::find(ord.begin(), ord.end(), anchor);
  if (it == ord.end()) throw std::logic_error("anchor point is dead");
  ord.insert(before ? it : it + 1, pt);
  return pt;
}

// Reroutes the side-0 curve at two crossings u, v, where v is the next
// crossing after u along side 1 and the side-1 arc between them carries no
// other crossing.  The result follows side 0 from one crossing to the other
// (from u when a_from_u), then returns along a parallel copy of the clean
// side-1 arc.  The copy sits on the side from which the side-0 path
// arrives, so the new cycle misses both old crossings.  Copy points are
// inserted into the drawing; the cycle references them together with the
// reused side-0 nodes (reported as indices in `kept`).
struct Reroute {
  std::vector<Drawing::Node> cycle;
  std::vector<int> kept;  // side-0 node indices reused by the cycle
};

inline Reroute reroute(Drawing& d, const Layout& lay, int u_id, int v_id,
                       bool a_from_u) {
  const Crossing& u = lay.crossings[u_id];
  const Crossing& v = lay.crossings[v_id];
  const Crossing& su = a_from_u ? u : v;
  const Crossing& sv = a_from_u ? v : u;
  const auto& nodesA = d.curve[0][0];
  const auto& nodesB = d.curve[1][0];
  const int nB = static_cast<int>(nodesB.size());
  const TriId tri_u = nodesA[u.a_arc].tri;
  const TriId tri_v = nodesA[v.a_arc].tri;
  const TriId tri_su = a_from_u ? tri_u : tri_v;

  Reroute rr;
  rr.kept = nodes_between(d, lay, 0, 0, su.a_pos, sv.a_pos);
  for (int idx : rr.kept) rr.cycle.push_back(nodesA[idx]);

  std::vector<int> rail = nodes_between(d, lay, 1, 0, u.b_pos, v.b_pos);
  // Travel direction of the return copy: from sv back to su.
  const bool forward = !a_from_u;
  if (!forward) std::reverse(rail.begin(), rail.end());
  // The copy lies on the side (relative to the side-1 orientation) from
  // which the side-0 path arrives at sv.
  const bool left = sv.sign > 0;

  for (size_t ri = 0; ri < rail.size(); ++ri) {
    const int bi = rail[ri];
    const int sigma = edge_sign_at(d, nodesB[bi]);
    // Left of the side-1 curve points to the edge tail exactly when the
    // curve lands on the edge's left side there.
    const bool before = left == (sigma > 0);
    const int np = insert_adjacent(d, nodesB[bi].pt, before);
    TriId tri;
    if (ri + 1 < rail.size())
      tri = forward ? nodesB[bi].tri : nodesB[(bi + nB - 1) % nB].tri;
    else
      tri = tri_su;  // final turn back onto the side-0 path
    rr.cycle.push_back({np, tri});
  }

  if (rail.empty() && !rr.kept.empty() && tri_u != tri_v)
    throw std::logic_error("empty return arc between crossings in different triangles");
  return rr;
}

// Removes one bigon between the two (connected) curves, if any exists.
inline bool remove_one_bigon(Drawing& d, const Layout& lay) {
  const auto& seqA = lay.along[0][0];
  const auto& seqB = lay.along[1][0];
  const int nA = static_cast<int>(seqA.size());
  const int nB = static_cast<int>(seqB.size());
  if (nA < 2) return false;

  for (int posA = 0; posA < nA; ++posA) {
    const int x_id = seqA[posA];
    const int y_id = seqA[(posA + 1) % nA];
    if (x_id == y_id) continue;
    const Crossing& x = lay.crossings[x_id];
    const Crossing& y = lay.crossings[y_id];
    if (x.sign == y.sign) continue;  // bigon corners have opposite signs
    for (const bool fwd : {true, false}) {
      if (fwd && seqB[(x.b_pos + 1) % nB] != y_id) continue;
      if (!fwd && seqB[(x.b_pos + nB - 1) % nB] != y_id) continue;
      // The loop along side 0 from x to y and back along side 1 must bound.
      const Word wa = letters_between(d, lay, 0, 0, posA, (posA + 1) % nA);
      Word wb = fwd ? letters_between(d, lay, 1, 0, x.b_pos, y.b_pos)
                    : inverse_word(letters_between(d, lay, 1, 0, y.b_pos, x.b_pos));
      Word loop = wa;
      const Word wbi = inverse_word(wb);
      loop.insert(loop.end(), wbi.begin(), wbi.end());
      if (!surface_word_is_trivial(loop)) continue;

      // Keep the complementary side-0 path (from y back to x) and reroute
      // it along the clean side-1 arc between the two crossings.
      const int u_id = fwd ? x_id : y_id;
      const int v_id = fwd ? y_id : x_id;
      const Reroute rr = reroute(d, lay, u_id, v_id, /*a_from_u=*/!fwd);
      if (rr.cycle.empty()) throw std::logic_error("bigon removal erased the curve");

      std::vector<bool> keep(d.curve[0][0].size(), false);
      for (int idx : rr.kept) keep[idx] = true;
      for (size_t i = 0; i < d.curve[0][0].size(); ++i)
        if (!keep[i]) erase_point(d, d.curve[0][0][i].pt);
      d.curve[0][0] = rr.cycle;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Builds the drawing of two multicurves: side 0 keeps its trace order along
// every edge, side 1 is laid out after it.  Any relative interleaving is a
// valid transverse position; minimal position is restored by bigon removal.
inline Drawing make_drawing(const Weights& wa, const Weights& wb) {
  Drawing d;
  for (int side = 0; side < 2; ++side) {
    const Weights& w = side == 0 ? wa : wb;
    const Trace t = trace(w);
    int total = 0;
    for (int x : w) total += x;
    std::vector<int> pt_of_index(total, -1);
    for (EdgeId e = 0; e < kNumEdges; ++e)
      for (int i = 0; i < w[e]; ++i) {
        const int pt = d.new_point(e);
        d.order[e].push_back(pt);
        pt_of_index[detail::point_id(w, {e, i})] = pt;
      }
    for (const auto& comp : t.components) {
      std::vector<Drawing::Node> nodes;
      nodes.reserve(comp.steps.size());
      for (const auto& step : comp.steps)
        nodes.push_back({pt_of_index[detail::point_id(w, step.point)], step.arc_tri});
      d.curve[side].push_back(std::move(nodes));
    }
  }
  return d;
}

inline Drawing make_drawing(const Weights& wa) { return make_drawing(wa, kZeroWeights); }

// Removes bigons until the two connected curves are in minimal position and
// returns the final layout.  A bigon-free position is minimal, and its
// count may legitimately exceed the algebraic number; matching the
// algebraic count is just a certificate that lets the loop stop early.
// One removal usually drops the two bigon corners, but the reroute
// replaces the corner chords end to end, so a strand crossing both
// replaced segments is swept out along with them: the drop is any positive
// even number.
inline Layout make_minimal(Drawing& d) {
  if (d.curve[0].size() != 1 || d.curve[1].size() != 1)
    throw std::invalid_argument("minimal position needs one connected curve per side");
  Layout lay = detail::analyze(d);
  const std::string key0 = curve_key_from_word(detail::drawing_word(d, 0, 0));
  for (;;) {
    if (std::abs(lay.algebraic()) == static_cast<long>(lay.count())) break;
    const int before = lay.count();
    if (!detail::remove_one_bigon(d, lay)) break;
    lay = detail::analyze(d);
    const int drop = before - lay.count();
    if (drop <= 0 || drop % 2 != 0)
      throw std::logic_error("bigon removal must drop a positive even count");
    if (curve_key_from_word(detail::drawing_word(d, 0, 0)) != key0)
      throw std::logic_error("bigon removal changed the curve class");
  }
  return lay;
}

// Geometric intersection number of two connected curves.
inline int intersection_number(const Weights& a, const Weights& b) {
  if (a == kZeroWeights || b == kZeroWeights) return 0;
  Drawing d = make_drawing(a, b);
  return make_minimal(d).count();
}

inline int intersection_number(const NormalCurve& a, const NormalCurve& b) {
  return intersection_number(a.w, b.w);
}

namespace detail {

// New drawing holding just one component, with the induced edge orders.
inline Drawing extract_component(const Drawing& d, int side, int comp) {
  Drawing out;
  std::vector<int> remap(d.pt_edge.size(), -1);
  std::vector<bool> used(d.pt_edge.size(), false);
  for (const auto& n : d.curve[side][comp]) used[n.pt] = true;
  for (EdgeId e = 0; e < kNumEdges; ++e)
    for (int pt : d.order[e])
      if (used[pt]) {
        remap[pt] = out.new_point(e);
        out.order[e].push_back(remap[pt]);
      }
  std::vector<Drawing::Node> nodes;
  nodes.reserve(d.curve[side][comp].size());
  for (const auto& n : d.curve[side][comp]) nodes.push_back({remap[n.pt], n.tri});
  out.curve[0].push_back(std::move(nodes));
  return out;
}

// Pushes one innermost returning arc of a solo curve across its edge.
inline bool remove_one_bounce(Drawing& d) {
  auto& nodes = d.curve[0][0];
  const int n = static_cast<int>(nodes.size());
  if (n < 2) {
    if (n == 1) throw std::logic_error("one-point cycle cannot be straightened");
    return false;
  }
  const Ranks r(d);
  bool saw_bounce = false;
  for (int i = 0; i < n; ++i) {
    const auto& p = nodes[i];
    const auto& q = nodes[(i + 1) % n];
    if (d.pt_edge[p.pt] != d.pt_edge[q.pt]) continue;
    saw_bounce = true;
    if (std::abs(r.rank[p.pt] - r.rank[q.pt]) != 1) continue;  // not innermost
    // The neighbouring arcs lie in the other triangle of the edge and merge
    // into one chord there.
    if (n > 2 && nodes[(i + n - 1) % n].tri != q.tri)
      throw std::logic_error("returning arc neighbours disagree");
    erase_point(d, p.pt);
    erase_point(d, q.pt);
    std::vector<Drawing::Node> rebuilt;
    rebuilt.reserve(n - 2);
    for (int j = 0; j < n; ++j)
      if (j != i && j != (i + 1) % n) rebuilt.push_back(nodes[j]);
    nodes = std::move(rebuilt);
    return true;
  }
  if (saw_bounce)
    throw std::logic_error("returning arcs without an innermost one");
  return false;
}

// Straightens a one-curve drawing into normal position and returns its
// weight vector (all zero when the curve shrinks away entirely).  The
// result is checked to trace back to the same isotopy class.
inline Weights normalize_closed_curve(Drawing& d) {
  if (d.curve[0].size() != 1 || !d.curve[1].empty())
    throw std::invalid_argument("straightening expects a single bare curve");
  analyze(d);  // validates embeddedness and transversality
  const Word before = drawing_word(d, 0, 0);
  while (remove_one_bounce(d)) {
  }
  Weights w = kZeroWeights;
  int total = 0;
  for (EdgeId e = 0; e < kNumEdges; ++e) {
    w[e] = static_cast<int>(d.order[e].size());
    total += w[e];
  }
  if (total == 0) {
    if (!surface_word_is_trivial(before))
      throw std::logic_error("essential curve straightened to nothing");
    return w;
  }
  require_admissible(w);
  const Trace t = trace(w);
  if (t.components.size() != 1)
    throw std::logic_error("straightened drawing is not a single curve");
  if (curve_key(t.components[0]) != curve_key_from_word(before))
    throw std::logic_error("straightening changed the curve class");
  return w;
}

}  // namespace detail

// Image of curve c under the k-th power of the Dehn twist along t, as a
// normal curve.  Positive k drags crossing strands along the traced
// direction of t; the two signs give the two inverse twists.
inline NormalCurve dehn_twist(const NormalCurve& c, const NormalCurve& t, int k) {
  if (k == 0 || c.empty() || t.empty()) return c;
  Drawing d = make_drawing(c.w, t.w);
  if (d.curve[0].size() != 1 || d.curve[1].size() != 1)
    throw std::invalid_argument("dehn twist needs connected curves");
  const Layout lay = make_minimal(d);
  if (lay.count() == 0) return c;

  const auto& nodesT = d.curve[1][0];
  const int M = static_cast<int>(nodesT.size());
  const long long KM = static_cast<long long>(std::abs(k)) * M;

  // Every crossing strand is rerouted into |k| laps around t.  In the band
  // around t the lap of crossing j passes column i at an exact rational
  // height; sorting the passes per column keeps the laps disjoint.
  struct Pass {
    long long num, den;  // signed height across the band, in (-1, 1)
    int j, m;
  };
  std::vector<std::vector<Pass>> per_column(M);
  for (int j = 0; j < lay.count(); ++j) {
    const Crossing& x = lay.crossings[j];
    const long long cnt = static_cast<long long>(lay.on_arc[1][0][x.b_arc].size());
    const long long rho = x.b_rank;
    for (long long m = 0; m < KM; ++m) {
      const int col = k > 0 ? static_cast<int>((x.b_arc + 1 + m) % M)
                            : static_cast<int>(((x.b_arc - m) % M + M) % M);
      const long long den = KM * (cnt + 1);
      const long long hn =
          k > 0 ? (m + 1) * (cnt + 1) - (rho + 1) : m * (cnt + 1) + (rho + 1);
      per_column[col].push_back({x.sign * (den - 2 * hn), den, j, static_cast<int>(m)});
    }
  }

  std::vector<std::vector<int>> pass_pt(lay.count(), std::vector<int>(KM, -1));
  for (int col = 0; col < M; ++col) {
    auto& passes = per_column[col];
    std::sort(passes.begin(), passes.end(), [](const Pass& a, const Pass& b) {
      const __int128 lhs = static_cast<__int128>(a.num) * b.den;
      const __int128 rhs = static_cast<__int128>(b.num) * a.den;
      if (lhs != rhs) return lhs < rhs;
      return a.j < b.j;  // parallel laps never meet; order them stably
    });
    const int sigma = detail::edge_sign_at(d, nodesT[col]);
    // Left of t (height > 0) points to the edge tail exactly when the curve
    // lands on the edge's left side.  Insert each side block outermost
    // first so every insertion stays adjacent to the anchor.
    auto insert_block = [&](bool left_side) {
      const bool before = left_side == (sigma > 0);
      std::vector<const Pass*> block;
      for (const auto& p : passes)
        if ((p.num >= 0) == left_side) block.push_back(&p);
      if (left_side) std::reverse(block.begin(), block.end());
      for (const Pass* p : block)
        pass_pt[p->j][p->m] = detail::insert_adjacent(d, nodesT[col].pt, before);
    };
    insert_block(true);
    insert_block(false);
  }

  std::vector<Drawing::Node> rebuilt;
  const auto& nodesC = d.curve[0][0];
  for (size_t i = 0; i < nodesC.size(); ++i) {
    rebuilt.push_back(nodesC[i]);
    for (int xid : lay.on_arc[0][0][i]) {
      const Crossing& x = lay.crossings[xid];
      for (long long m = 0; m < KM; ++m) {
        const int col = k > 0 ? static_cast<int>((x.b_arc + 1 + m) % M)
                              : static_cast<int>(((x.b_arc - m) % M + M) % M);
        TriId tri;
        if (m + 1 < KM)
          tri = k > 0 ? nodesT[col].tri : nodesT[(col + M - 1) % M].tri;
        else
          tri = nodesC[i].tri;  // exit turn in the crossing triangle
        rebuilt.push_back({pass_pt[xid][m], tri});
      }
    }
  }
  d.curve[0][0] = std::move(rebuilt);

  Drawing solo = detail::extract_component(d, 0, 0);
  const Weights w = detail::normalize_closed_curve(solo);
  if (w == kZeroWeights) throw std::logic_error("twist produced a trivial curve");
  return NormalCurve::from_weights(w);
}

// The curves obtained by resolving c1 along an arc of c2 between two
// adjacent crossings of opposite sign, over all such sites and both ways of
// keeping the c1 strand.  Each result is embedded, essential and meets c2
// fewer times than c1 does; results are deduplicated by isotopy class and
// ordered deterministically.
inline std::vector<NormalCurve> surgery_resolutions(const NormalCurve& c1,
                                                    const NormalCurve& c2) {
  Drawing base = make_drawing(c1.w, c2.w);
  if (base.curve[0].size() != 1 || base.curve[1].size() != 1)
    throw std::invalid_argument("surgery needs connected curves");
  const Layout lay = make_minimal(base);
  if (lay.count() < 2) throw std::invalid_argument("surgery needs curves meeting twice");

  std::vector<NormalCurve> out;
  std::set<std::string> seen;
  const auto& seqB = lay.along[1][0];
  const int nB = static_cast<int>(seqB.size());
  for (int pos = 0; pos < nB; ++pos) {
    const int u_id = seqB[pos];
    const int v_id = seqB[(pos + 1) % nB];
    if (u_id == v_id) continue;
    if (lay.crossings[u_id].sign == lay.crossings[v_id].sign) continue;
    for (const bool a_from_u : {true, false}) {
      Drawing d = base;
      const detail::Reroute rr = detail::reroute(d, lay, u_id, v_id, a_from_u);
      if (rr.cycle.size() < 2) continue;  // degenerate scrap, never a disk boundary
      d.curve[0][0] = rr.cycle;
      Drawing solo = detail::extract_component(d, 0, 0);
      const Weights w = detail::normalize_closed_curve(solo);
      if (w == kZeroWeights) continue;
      const Trace t = trace(w);
      if (!is_essential_curve(t.components[0])) continue;
      if (intersection_number(w, c2.w) >= lay.count()) continue;
      const std::string key = curve_key(t.components[0]);
      if (!seen.insert(key).second) continue;
      out.push_back(NormalCurve::from_weights(w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Boundary of a regular neighborhood of the union of two curves meeting
// exactly once: the four parallel copies rejoined around the crossing.  The
// result is a single separating curve disjoint from both inputs.
inline NormalCurve neighborhood_boundary(const NormalCurve& c1, const NormalCurve& c2) {
  Drawing d = make_drawing(c1.w, c2.w);
  if (d.curve[0].size() != 1 || d.curve[1].size() != 1)
    throw std::invalid_argument("neighborhood boundary needs connected curves");
  const Layout lay = make_minimal(d);
  if (lay.count() != 1)
    throw std::invalid_argument("neighborhood boundary needs curves meeting once");
  const Crossing& x = lay.crossings[0];
  const TriId T = d.curve[0][0][x.a_arc].tri;

  // A parallel copy of one side, cut at the arc carrying the crossing; it
  // runs from just after the crossing around to just before it.
  auto copy_path = [&](int side, int arc_cut, bool left) {
    const auto& nodes = d.curve[side][0];
    const int n = static_cast<int>(nodes.size());
    std::vector<Drawing::Node> path;
    path.reserve(n);
    for (int s = 1; s <= n; ++s) {
      const auto& orig = nodes[(arc_cut + s) % n];
      const int sigma = detail::edge_sign_at(d, orig);
      const bool before = left == (sigma > 0);
      path.push_back({detail::insert_adjacent(d, orig.pt, before), orig.tri});
    }
    path.back().tri = T;  // its last arc turns inside the crossing triangle
    return path;
  };
  const auto l1 = copy_path(0, x.a_arc, true);
  const auto r1 = copy_path(0, x.a_arc, false);
  const auto l2 = copy_path(1, x.b_arc, true);
  const auto r2 = copy_path(1, x.b_arc, false);

  auto reversed_path = [&](const std::vector<Drawing::Node>& p) {
    std::vector<Drawing::Node> out;
    out.reserve(p.size());
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
      out.push_back({p[i].pt, i > 0 ? p[i - 1].tri : T});
    return out;
  };

  // Rounding the four corners of the crossing joins the copies into one
  // cycle; which copy ends meet depends on the crossing sign.
  std::vector<Drawing::Node> eq;
  auto append = [&](const std::vector<Drawing::Node>& p) {
    eq.insert(eq.end(), p.begin(), p.end());
  };
  if (x.sign > 0) {
    append(l1);
    append(l2);
    append(reversed_path(r1));
    append(reversed_path(r2));
  } else {
    append(r1);
    append(r2);
    append(reversed_path(l1));
    append(reversed_path(l2));
  }
  d.curve[0] = {eq};
  d.curve[1].clear();

  Drawing solo = detail::extract_component(d, 0, 0);
  const Weights w = detail::normalize_closed_curve(solo);
  if (w == kZeroWeights) throw std::logic_error("neighborhood boundary vanished");
  const Trace t = trace(w);
  if (!is_essential_curve(t.components[0]))
    throw std::logic_error("neighborhood boundary is not essential");
  if (!is_separating(w)) throw std::logic_error("neighborhood boundary must separate");
  if (intersection_number(w, c1.w) != 0 || intersection_number(w, c2.w) != 0)
    throw std::logic_error("neighborhood boundary must miss both curves");
  return NormalCurve::from_weights(w);
}

}  // namespace haken
