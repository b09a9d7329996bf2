#pragma once

// Genus-2 Heegaard diagrams of lens spaces L(p, q) and the disk machinery
// over them: word readings in the two handlebody groups, disk detection,
// primitivity, dual pairs, common duals, Haken circles, and the surgery
// step between intersecting dual disks.
//
// The diagram is the standard stabilized genus-1 picture.  alpha1 and beta1
// form the (p, q) summand with i(alpha1, beta1) = p, alpha2 and beta2 are
// the stabilizing pair with i(alpha2, beta2) = 1, and the remaining four
// intersection numbers vanish.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include <haken/arrangement.hpp>

namespace haken {

enum class Handlebody { V, W };

inline Handlebody opposite(Handlebody s) { return s == Handlebody::V ? Handlebody::W : Handlebody::V; }
inline const char* side_name(Handlebody s) { return s == Handlebody::V ? "V" : "W"; }

struct HeegaardDiagram {
  int p = 0;
  int q = 0;
  NormalCurve alpha1, alpha2, beta1, beta2;
  // Signed (a, b) crossing totals of the traced beta1.  They pin the word
  // reading in pi1(W); construction checks |beta1_a| = q and |beta1_b| = p.
  int beta1_a = 0;
  int beta1_b = 0;
};

namespace detail {

// pi1(V) kills the alpha curves, which frees the surface group on the
// images of the b and d crossing loops: erase every a and c letter and
// rename b, d to the rank-2 generators.
inline Word v_image(const Word& surface) {
  Word out;
  for (int x : surface) {
    const EdgeId e = std::abs(x) - 1;
    if (e == kEdgeB)
      out.push_back(x > 0 ? 1 : -1);
    else if (e == kEdgeD)
      out.push_back(x > 0 ? 2 : -2);
  }
  return free_reduce(out);
}

// pi1(W) kills beta2 and beta1.  Killing the d loop collapses the handle
// relator to the (a, b) commutator, leaving (Z^2 / <(beta1_a, beta1_b)>)
// free-product the c loop; with the slope coordinates coprime the abelian
// factor is Z by (m, n) -> m beta1_b - n beta1_a.  So an a crossing reads
// g1^beta1_b, a b crossing reads g1^-beta1_a, a c crossing reads g2, and d
// crossings vanish.
inline Word w_image(const Word& surface, int b1a, int b1b) {
  Word out;
  const auto push_power = [&out](int e) {
    const int g = e > 0 ? 1 : -1;
    for (int i = std::abs(e); i > 0; --i) out.push_back(g);
  };
  for (int x : surface) {
    const EdgeId e = std::abs(x) - 1;
    if (e == kEdgeA)
      push_power(x > 0 ? b1b : -b1b);
    else if (e == kEdgeB)
      push_power(x > 0 ? -b1a : b1a);
    else if (e == kEdgeC)
      out.push_back(x > 0 ? 2 : -2);
  }
  return free_reduce(out);
}

inline Word side_image(const HeegaardDiagram& d, Handlebody s, const Word& surface) {
  return s == Handlebody::V ? v_image(surface) : w_image(surface, d.beta1_a, d.beta1_b);
}

inline const TracedComponent& single_component(const Trace& t) {
  if (t.components.size() != 1) throw std::invalid_argument("curve is not connected");
  return t.components[0];
}

// Smith normal form of a 2x2 integer matrix as (d1, d2) with d1 | d2.
inline std::pair<long, long> smith2x2(long m00, long m01, long m10, long m11) {
  const long d1 = std::gcd(std::gcd(m00, m01), std::gcd(m10, m11));
  const long det = std::abs(m00 * m11 - m01 * m10);
  if (d1 == 0) return {0, 0};
  return {d1, det / d1};
}

inline Weights weights_of(std::initializer_list<std::pair<EdgeId, int>> entries) {
  Weights w = kZeroWeights;
  for (const auto& [e, n] : entries) w[e] = n;
  return w;
}

}  // namespace detail

// The cyclic word of c in pi1(V) resp. pi1(W), canonical up to rotation and
// inversion.  c must be connected.
inline Word word_in_V(const HeegaardDiagram&, const NormalCurve& c) {
  const Trace t = trace(c.w);
  return f2_class(detail::v_image(surface_word(detail::single_component(t))));
}

inline Word word_in_W(const HeegaardDiagram& d, const NormalCurve& c) {
  const Trace t = trace(c.w);
  return f2_class(detail::w_image(surface_word(detail::single_component(t)), d.beta1_a, d.beta1_b));
}

inline Word side_word(const HeegaardDiagram& d, Handlebody s, const NormalCurve& c) {
  return s == Handlebody::V ? word_in_V(d, c) : word_in_W(d, c);
}

// An essential curve on the boundary of a handlebody bounds a disk inside
// exactly when it is null-homotopic there.
inline bool bounds_disk(const HeegaardDiagram& d, Handlebody s, const NormalCurve& c) {
  return side_word(d, s, c).empty();
}

inline HeegaardDiagram build_diagram(int p, int q) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (q < 1 || 2 * q > p) throw std::invalid_argument("q must satisfy 1 <= q <= p/2");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");

  HeegaardDiagram d;
  d.p = p;
  d.q = q;
  d.alpha1 = NormalCurve::from_weights(detail::weights_of({{kEdgeA, 1}, {kEdgeE1, 1}}));
  d.alpha2 = NormalCurve::from_weights(detail::weights_of({{kEdgeC, 1}, {kEdgeE4, 1}, {kEdgeE5, 1}}));
  d.beta1 = NormalCurve::from_weights(
      detail::weights_of({{kEdgeA, q}, {kEdgeB, p}, {kEdgeE1, p - q}, {kEdgeE2, p}}));
  d.beta2 = NormalCurve::from_weights(detail::weights_of({{kEdgeD, 1}, {kEdgeE5, 1}}));

  const std::array<const NormalCurve*, 4> curves = {&d.alpha1, &d.alpha2, &d.beta1, &d.beta2};
  std::array<std::array<int, 4>, 4> h{};
  for (int i = 0; i < 4; ++i) {
    const Trace t = trace(curves[i]->w);
    if (t.components.size() != 1) throw std::logic_error("diagram curve is not connected");
    const TracedComponent& c = t.components[0];
    if (!is_essential_curve(c)) throw std::logic_error("diagram curve is not essential");
    if (is_separating(curves[i]->w)) throw std::logic_error("diagram curve separates");
    h[i] = homology_coords(c);
  }
  d.beta1_a = h[2][0];
  d.beta1_b = h[2][1];
  if (std::abs(d.beta1_a) != q || std::abs(d.beta1_b) != p)
    throw std::logic_error("beta1 slope does not match (p, q)");

  const int expected[4][4] = {{0, 0, p, 0}, {0, 0, 0, 1}, {p, 0, 0, 0}, {0, 1, 0, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (intersection_number(*curves[i], *curves[j]) != expected[i][j])
        throw std::logic_error("diagram intersection numbers are off");

  // First homology of the glued manifold: relations = algebraic crossings of
  // the alpha curves against the beta basis.
  if (detail::smith2x2(homology_pairing(h[0], h[2]), homology_pairing(h[0], h[3]),
                       homology_pairing(h[1], h[2]), homology_pairing(h[1], h[3])) !=
      std::pair<long, long>(1, p))
    throw std::logic_error("homology presentation is not Z/p");

  // The word readings must kill the handle relator and the curves of the
  // side they quotient by.
  if (!detail::v_image(surface_relator()).empty() ||
      !detail::w_image(surface_relator(), d.beta1_a, d.beta1_b).empty())
    throw std::logic_error("handle relator survives a quotient map");
  if (!bounds_disk(d, Handlebody::V, d.alpha1) || !bounds_disk(d, Handlebody::V, d.alpha2))
    throw std::logic_error("alpha curve does not bound in V");
  if (!bounds_disk(d, Handlebody::W, d.beta1) || !bounds_disk(d, Handlebody::W, d.beta2))
    throw std::logic_error("beta curve does not bound in W");
  return d;
}

// ====== Disks ======

// The isotopy class of an essential disk in a genus-2 handlebody is the
// isotopy class of its boundary curve, so the curve key also keys the disk.
struct DiskClass {
  Handlebody side = Handlebody::V;
  NormalCurve boundary;
  std::array<int, 4> homology{};
  Word word_self;   // canonical image in its own handlebody group; empty
  Word word_other;  // canonical image in the opposite handlebody group
  std::string key;
};

namespace detail {

// Quiet filter used by the enumerators: accepts exactly the connected
// essential non-separating curves whose own-side word dies.  Cheap tests
// run first; the canonical key is computed only for survivors.
inline std::optional<DiskClass> try_disk(const HeegaardDiagram& d, Handlebody side, const Weights& w) {
  if (w == kZeroWeights || is_separating(w)) return std::nullopt;
  // Mod-2 screen: a bounding class lies in the side's kernel lattice.
  if (side == Handlebody::V) {
    if ((w[kEdgeB] | w[kEdgeD]) & 1) return std::nullopt;
  } else {
    if (w[kEdgeC] & 1) return std::nullopt;
    if ((w[kEdgeA] * d.beta1_b + w[kEdgeB] * d.beta1_a) & 1) return std::nullopt;
  }
  const Trace t = trace(w);
  if (t.components.size() != 1) return std::nullopt;
  const TracedComponent& comp = t.components[0];
  const std::array<int, 4> h = homology_coords(comp);
  if (side == Handlebody::V) {
    if (h[1] != 0 || h[3] != 0) return std::nullopt;
  } else {
    if (h[2] != 0 ||
        static_cast<long>(h[0]) * d.beta1_b - static_cast<long>(h[1]) * d.beta1_a != 0)
      return std::nullopt;
  }
  const Word surface = surface_word(comp);
  const Word self = side_image(d, side, surface);
  if (!self.empty()) return std::nullopt;
  if (surface_word_is_trivial(surface)) return std::nullopt;
  DiskClass out;
  out.side = side;
  out.boundary = NormalCurve::from_weights(w);
  out.homology = h;
  out.word_other = f2_class(side_image(d, opposite(side), surface));
  out.key = curve_key_from_word(surface);
  return out;
}

}  // namespace detail

inline DiskClass make_disk(const HeegaardDiagram& d, Handlebody side, const NormalCurve& c) {
  const Trace t = trace(c.w);
  const TracedComponent& comp = detail::single_component(t);
  if (!is_essential_curve(comp)) throw std::invalid_argument("disk boundary must be essential");
  if (is_separating(c.w)) throw std::invalid_argument("disk boundary must be non-separating");
  std::optional<DiskClass> disk = detail::try_disk(d, side, c.w);
  if (!disk) throw std::invalid_argument("curve does not bound a disk on that side");
  return *disk;
}

inline bool is_primitive_disk(const HeegaardDiagram&, const DiskClass& disk) {
  return f2_is_primitive(disk.word_other);
}

inline std::string curve_key_of(const NormalCurve& c) {
  const Trace t = trace(c.w);
  return curve_key(detail::single_component(t));
}

// Geometric intersection number keyed by the isotopy classes, memoized: the
// complex builders scan quadratically many pairs.
inline int cached_intersection(const DiskClass& x, const DiskClass& y) {
  static std::map<std::pair<std::string, std::string>, int> memo;
  static std::mutex mu;
  const bool flip = y.key < x.key;
  const std::pair<std::string, std::string> k{flip ? y.key : x.key, flip ? x.key : y.key};
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = memo.find(k);
    if (it != memo.end()) return it->second;
  }
  const int n = intersection_number(x.boundary, y.boundary);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(k, n);
  return n;
}

// Disjointness test with the free algebraic screen: a nonzero pairing
// bounds the geometric count from below, so only algebraically invisible
// pairs pay for a drawing.
inline bool disks_disjoint(const DiskClass& x, const DiskClass& y) {
  if (homology_pairing(x.homology, y.homology) != 0) return false;
  return cached_intersection(x, y) == 0;
}

// ====== Enumeration ======

namespace detail {

// Visits every admissible weight vector with the given a-weight and all
// entries at most cap, in lexicographic order of (b, e1, e2, e3, c, e4, d,
// e5).  Each diagonal is pinned by the triangles already closed, so the
// nest only touches near-admissible vectors; the last diagonal must close
// its two triangles at once.
template <class Fn>
inline void scan_admissible(int cap, int wa, Fn&& fn) {
  Weights w = kZeroWeights;
  w[kEdgeA] = wa;
  for (int wb = 0; wb <= cap; ++wb) {
    w[kEdgeB] = wb;
    const int hi1 = std::min(cap, wa + wb);
    for (int e1 = std::abs(wa - wb); e1 <= hi1; e1 += 2) {
      w[kEdgeE1] = e1;
      const int hi2 = std::min(cap, e1 + wa);
      for (int e2 = std::abs(e1 - wa); e2 <= hi2; e2 += 2) {
        w[kEdgeE2] = e2;
        const int hi3 = std::min(cap, e2 + wb);
        for (int e3 = std::abs(e2 - wb); e3 <= hi3; e3 += 2) {
          w[kEdgeE3] = e3;
          for (int wc = 0; wc <= cap; ++wc) {
            w[kEdgeC] = wc;
            const int hi4 = std::min(cap, e3 + wc);
            for (int e4 = std::abs(e3 - wc); e4 <= hi4; e4 += 2) {
              w[kEdgeE4] = e4;
              for (int wd = 0; wd <= cap; ++wd) {
                w[kEdgeD] = wd;
                const int lo5 = std::max(std::abs(e4 - wd), std::abs(wc - wd));
                const int hi5 = std::min({cap, e4 + wd, wc + wd});
                for (int e5 = lo5; e5 <= hi5; e5 += 2) {
                  w[kEdgeE5] = e5;
                  fn(w);
                }
              }
            }
          }
        }
      }
    }
  }
}

struct DiskSetKey {
  int p, q, side, cap;
  auto operator<=>(const DiskSetKey&) const = default;
};

inline std::vector<DiskClass> enumerate_disks_uncached(const HeegaardDiagram& d, Handlebody side,
                                                       int max_weight, int workers) {
  // One bucket per a-weight keeps the merged visit order identical to the
  // serial scan no matter how the buckets are distributed over threads.
  std::vector<std::vector<DiskClass>> buckets(max_weight + 1);
  const auto run = [&](int wa) {
    scan_admissible(max_weight, wa, [&](const Weights& w) {
      if (std::optional<DiskClass> disk = try_disk(d, side, w)) buckets[wa].push_back(*disk);
    });
  };
  if (workers <= 1) {
    for (int wa = 0; wa <= max_weight; ++wa) run(wa);
  } else {
    std::vector<std::thread> pool;
    for (int r = 0; r < workers; ++r)
      pool.emplace_back([&, r] {
        for (int wa = r; wa <= max_weight; wa += workers) run(wa);
      });
    for (std::thread& t : pool) t.join();
  }
  std::vector<DiskClass> out;
  std::map<std::string, bool> seen;
  for (const auto& bucket : buckets)
    for (const DiskClass& disk : bucket)
      if (seen.emplace(disk.key, true).second) out.push_back(disk);
  std::sort(out.begin(), out.end(),
            [](const DiskClass& a, const DiskClass& b) { return a.key < b.key; });
  return out;
}

struct DiskSetMemo {
  std::map<DiskSetKey, std::shared_ptr<const std::vector<DiskClass>>> sets;
  std::mutex mu;
};

inline DiskSetMemo& disk_set_memo() {
  static DiskSetMemo memo;
  return memo;
}

// Optional persistence hooks (installed by the cache layer): the provider
// may satisfy a memo miss from storage, the observer sees every freshly
// enumerated set so it can be stored.
using DiskSetProvider = std::function<std::optional<std::vector<DiskClass>>(
    const HeegaardDiagram&, Handlebody, int)>;
using DiskSetObserver =
    std::function<void(const HeegaardDiagram&, Handlebody, int, const std::vector<DiskClass>&)>;

inline DiskSetProvider& disk_set_provider() {
  static DiskSetProvider provider;
  return provider;
}

inline DiskSetObserver& disk_set_observer() {
  static DiskSetObserver observer;
  return observer;
}

}  // namespace detail

// All disk classes on a side whose boundary has every edge weight at most
// max_weight.  Sorted by key, deduplicated (distinct normal positions can
// share an isotopy class), monotone in max_weight, memoized per diagram.
inline const std::vector<DiskClass>& enumerate_disks(const HeegaardDiagram& d, Handlebody side,
                                                     int max_weight, int workers = 1) {
  if (max_weight < 1) throw std::invalid_argument("max_weight must be at least 1");
  detail::DiskSetMemo& memo = detail::disk_set_memo();
  const detail::DiskSetKey key{d.p, d.q, side == Handlebody::V ? 0 : 1, max_weight};
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    const auto it = memo.sets.find(key);
    if (it != memo.sets.end()) return *it->second;
  }
  std::shared_ptr<const std::vector<DiskClass>> built;
  if (detail::DiskSetProvider& provider = detail::disk_set_provider()) {
    if (std::optional<std::vector<DiskClass>> stored = provider(d, side, max_weight))
      built = std::make_shared<const std::vector<DiskClass>>(std::move(*stored));
  }
  if (!built) {
    built = std::make_shared<const std::vector<DiskClass>>(
        detail::enumerate_disks_uncached(d, side, max_weight, workers));
    if (detail::DiskSetObserver& observer = detail::disk_set_observer())
      observer(d, side, max_weight, *built);
  }
  std::lock_guard<std::mutex> lock(memo.mu);
  const auto [it, inserted] = memo.sets.emplace(key, std::move(built));
  return *it->second;
}

// Pre-fills the enumeration memo with a deserialized disk set.  The vector
// must be exactly what enumerate_disks would return for these arguments;
// a set already in the memo stays untouched.
inline void seed_disk_set(const HeegaardDiagram& d, Handlebody side, int max_weight,
                          std::vector<DiskClass> disks) {
  detail::DiskSetMemo& memo = detail::disk_set_memo();
  const detail::DiskSetKey key{d.p, d.q, side == Handlebody::V ? 0 : 1, max_weight};
  auto built = std::make_shared<const std::vector<DiskClass>>(std::move(disks));
  std::lock_guard<std::mutex> lock(memo.mu);
  memo.sets.emplace(key, std::move(built));
}

inline std::vector<DiskClass> enumerate_primitive_disks(const HeegaardDiagram& d, Handlebody side,
                                                        int max_weight, int workers = 1) {
  std::vector<DiskClass> out;
  for (const DiskClass& disk : enumerate_disks(d, side, max_weight, workers))
    if (is_primitive_disk(d, disk)) out.push_back(disk);
  return out;
}

// ====== Dual pairs ======

struct DualPair {
  DiskClass v_disk;
  DiskClass w_disk;
  std::string key;
};

inline DualPair make_dual_pair(const HeegaardDiagram& d, const DiskClass& v, const DiskClass& w) {
  if (v.side != Handlebody::V || w.side != Handlebody::W)
    throw std::invalid_argument("a dual pair takes one disk per side");
  if (cached_intersection(v, w) != 1)
    throw std::invalid_argument("dual boundaries must cross exactly once");
  if (!is_primitive_disk(d, v) || !is_primitive_disk(d, w))
    throw std::logic_error("dual pair member fails primitivity");
  return DualPair{v, w, v.key + "|" + w.key};
}

// All opposite-side disks at budget crossing the given primitive disk once.
// Primitivity of every hit is a theorem; it is asserted, not filtered.
inline std::vector<DiskClass> dual_disks(const HeegaardDiagram& d, const DiskClass& disk,
                                         int max_weight, int workers = 1) {
  if (!is_primitive_disk(d, disk))
    throw std::invalid_argument("dual search needs a primitive disk");
  std::vector<DiskClass> out;
  for (const DiskClass& cand : enumerate_disks(d, opposite(disk.side), max_weight, workers)) {
    // i = 1 forces algebraic crossing +-1, which is a cheap screen.
    if (std::abs(homology_pairing(disk.homology, cand.homology)) != 1) continue;
    if (cached_intersection(disk, cand) != 1) continue;
    if (!is_primitive_disk(d, cand)) throw std::logic_error("dual disk fails primitivity");
    out.push_back(cand);
  }
  return out;
}

// Common dual disks of a primitive pair.  Emptiness at a budget is evidence
// of no common dual, never proof; non-emptiness is conclusive.
inline std::vector<DiskClass> common_duals(const HeegaardDiagram& d, const DiskClass& e1,
                                           const DiskClass& e2, int max_weight, int workers = 1) {
  if (e1.side != e2.side || e1.key == e2.key || !is_primitive_disk(d, e1) ||
      !is_primitive_disk(d, e2) || cached_intersection(e1, e2) != 0)
    throw std::invalid_argument("common duals take a primitive pair");
  const std::vector<DiskClass> d1 = dual_disks(d, e1, max_weight, workers);
  const std::vector<DiskClass> d2 = dual_disks(d, e2, max_weight, workers);
  std::vector<DiskClass> out;
  auto i1 = d1.begin();
  auto i2 = d2.begin();
  while (i1 != d1.end() && i2 != d2.end()) {
    if (i1->key < i2->key)
      ++i1;
    else if (i2->key < i1->key)
      ++i2;
    else {
      out.push_back(*i1);
      ++i1;
      ++i2;
    }
  }
  return out;
}

// The Haken sphere of a dual pair meets the surface in the boundary of a
// neighborhood of the two crossing disk boundaries.
inline NormalCurve haken_circle(const DualPair& pair) {
  return neighborhood_boundary(pair.v_disk.boundary, pair.w_disk.boundary);
}

// One step of the dual-disk surgery descent: resolve the crossings of
// from_dual along toward_dual and keep the results that are again duals of
// the base.  Their intersection with toward_dual strictly drops, so
// iterating reaches a dual disjoint from toward_dual.
inline std::vector<DiskClass> dual_surgery_step(const HeegaardDiagram& d, const DiskClass& base,
                                                const DiskClass& from_dual,
                                                const DiskClass& toward_dual) {
  if (from_dual.side != toward_dual.side || from_dual.side != opposite(base.side))
    throw std::invalid_argument("surgery takes two duals on the side opposite the base");
  if (cached_intersection(base, from_dual) != 1 || cached_intersection(base, toward_dual) != 1)
    throw std::invalid_argument("surgery takes dual disks of the base");
  const int before = cached_intersection(from_dual, toward_dual);
  if (before == 0) throw std::invalid_argument("disjoint duals are already an edge");
  std::vector<DiskClass> out;
  std::vector<std::string> keys;
  for (const NormalCurve& r : surgery_resolutions(from_dual.boundary, toward_dual.boundary)) {
    std::optional<DiskClass> disk = detail::try_disk(d, from_dual.side, r.w);
    if (!disk) continue;
    if (cached_intersection(base, *disk) != 1) continue;
    if (cached_intersection(*disk, toward_dual) >= before)
      throw std::logic_error("surgery failed to reduce the crossing count");
    if (!is_primitive_disk(d, *disk)) throw std::logic_error("dual disk fails primitivity");
    if (std::find(keys.begin(), keys.end(), disk->key) != keys.end()) continue;
    keys.push_back(disk->key);
    out.push_back(*disk);
  }
  if (out.empty()) throw std::logic_error("surgery produced no dual disk");
  std::sort(out.begin(), out.end(),
            [](const DiskClass& a, const DiskClass& b) { return a.key < b.key; });
  return out;
}

}  // namespace haken
