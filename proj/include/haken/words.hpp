#pragma once

// Words read from curve crossings.
//
// Two alphabets appear.  Crossing the handle edges a, b, c, d spells a
// curve's class in the dual one-relator presentation of the fundamental
// group of the surface; the relator is the crossing word of the vertex
// link, which bounds a disk.  That presentation satisfies the C'(1/6) small
// cancellation condition (checked at startup), so Dehn's algorithm plus
// half-relator swaps solves the conjugacy problem exactly, and the
// lexicographically least representative over rotations, swaps and
// inversion is a complete isotopy key for unoriented simple closed curves.
//
// Crossing a two-curve system spells a word in the free group of rank two;
// those words decide disk bounding (triviality) and primitivity via
// Whitehead reduction.

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "haken/normal_curve.hpp"

namespace haken {

// Letters are nonzero ints; |letter| is the generator id (1-based), the sign
// is the exponent.  Works for both the 4-letter surface alphabet and the
// 2-letter handlebody alphabet.
using Word = std::vector<int>;

inline Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

// Letters sort as a < A < b < B < ..., so canonical representatives favor
// positive generators and print readably.
inline int letter_rank(int x) { return 2 * std::abs(x) + (x < 0 ? 1 : 0); }

struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](int l, int r) { return letter_rank(l) < letter_rank(r); });
  }
};

inline const Word& word_min(const Word& a, const Word& b) { return WordLess{}(b, a) ? b : a; }

inline Word lex_min_rotation(const Word& w) {
  if (w.empty()) return w;
  Word best = w;
  Word cur = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (WordLess{}(cur, best)) best = cur;
  }
  return best;
}

// ====== Surface words ======

// Letters 1..4 = a, b, c, d; the sign is the crossing sign from the trace.
inline Word surface_word(const TracedComponent& c) {
  Word w;
  for (const TraceStep& s : c.steps)
    if (s.point.edge <= kEdgeD) w.push_back((s.point.edge + 1) * s.crossing_sign);
  return w;
}

namespace detail {

// The relator and its machinery for Dehn reduction.
struct SurfaceGroup {
  Word relator;                 // length 8, cyclically reduced
  std::vector<Word> rotations;  // all rotations of the relator and its inverse

  SurfaceGroup() {
    Weights link;
    link.fill(2);
    Trace t = trace(link);
    if (t.components.size() != 1) throw std::logic_error("vertex link should be connected");
    relator = cyclic_reduce(surface_word(t.components[0]));
    if (relator.size() != 8) throw std::logic_error("surface relator should have length 8");
    int seen[5] = {0, 0, 0, 0, 0};
    for (int x : relator) seen[std::abs(x)] += 1;
    for (int g = 1; g <= 4; ++g)
      if (seen[g] != 2) throw std::logic_error("each handle letter should appear twice");

    for (const Word& base : {relator, inverse_word(relator)}) {
      Word r = base;
      for (size_t i = 0; i < base.size(); ++i) {
        rotations.push_back(r);
        std::rotate(r.begin(), r.begin() + 1, r.end());
      }
    }
    std::sort(rotations.begin(), rotations.end());
    rotations.erase(std::unique(rotations.begin(), rotations.end()), rotations.end());
    if (rotations.size() != 16) throw std::logic_error("relator rotations should be distinct");

    // Pieces (common prefixes of distinct rotations) must have length <= 1:
    // the C'(1/6) condition that makes Dehn reduction and the half-swap
    // closure a complete conjugacy algorithm.
    for (const Word& r1 : rotations)
      for (const Word& r2 : rotations) {
        if (r1 == r2) continue;
        size_t common = 0;
        while (common < 8 && r1[common] == r2[common]) ++common;
        if (common > 1) throw std::logic_error("relator is not C'(1/6)");
      }
  }

  // Searches the cyclic word for a subword matching the first `len` letters
  // of a rotation; returns (position, rotation index) or (-1, -1).
  std::pair<int, int> find_relator_prefix(const Word& w, size_t len) const {
    const size_t n = w.size();
    if (n < len) return {-1, -1};
    for (size_t i = 0; i < n; ++i) {
      for (size_t ri = 0; ri < rotations.size(); ++ri) {
        const Word& r = rotations[ri];
        size_t j = 0;
        while (j < len && w[(i + j) % n] == r[j]) ++j;
        if (j == len) return {static_cast<int>(i), static_cast<int>(ri)};
      }
    }
    return {-1, -1};
  }

  // Replaces the cyclic subword w[i .. i+len) by the inverse of the matched
  // rotation's remainder.
  Word splice(const Word& w, int i, int ri, size_t len) const {
    const Word& r = rotations[ri];
    Word tail(r.begin() + len, r.end());
    Word repl = inverse_word(tail);
    Word out;
    const size_t n = w.size();
    out.insert(out.end(), repl.begin(), repl.end());
    for (size_t j = len; j < n; ++j) out.push_back(w[(i + j) % n]);
    return cyclic_reduce(out);
  }

  // Dehn reduction: while the cyclic word contains more than half a relator,
  // swap that subword for the shorter complement.
  Word dehn_reduce(Word w) const {
    w = cyclic_reduce(w);
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t len = 8; len >= 5; --len) {
        auto [i, ri] = find_relator_prefix(w, len);
        if (i >= 0) {
          w = splice(w, i, ri, len);
          changed = true;
          break;
        }
      }
    }
    return w;
  }
};

inline const SurfaceGroup& surface_group() {
  static const SurfaceGroup g;
  return g;
}

}  // namespace detail

inline const Word& surface_relator() { return detail::surface_group().relator; }

inline bool surface_word_is_trivial(const Word& w) {
  return detail::surface_group().dehn_reduce(w).empty();
}

// Canonical key of the conjugacy class of an oriented surface word: Dehn
// reduce, then close under half-relator swaps (the only length-preserving
// ambiguity in a C'(1/6) group) and take the least rotation.
inline Word canonical_surface_class(const Word& input) {
  const auto& g = detail::surface_group();
  Word w = g.dehn_reduce(input);
restart:
  if (w.empty()) return w;
  std::set<Word, WordLess> seen{lex_min_rotation(w)};
  std::vector<Word> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    Word cur = frontier.back();
    frontier.pop_back();
    const size_t n = cur.size();
    for (size_t i = 0; i < n; ++i) {
      for (size_t ri = 0; ri < g.rotations.size(); ++ri) {
        const Word& r = g.rotations[ri];
        size_t j = 0;
        while (j < 4 && cur[(i + j) % n] == r[j]) ++j;
        if (j < 4) continue;
        Word next = g.splice(cur, static_cast<int>(i), static_cast<int>(ri), 4);
        if (next.size() < n) {
          // A half swap exposed a further reduction.
          w = g.dehn_reduce(next);
          goto restart;
        }
        next = lex_min_rotation(next);
        if (seen.insert(next).second) frontier.push_back(next);
      }
    }
    if (seen.size() > 20000)
      throw std::runtime_error("half-swap closure exceeded its budget");
  }
  return *seen.begin();
}

// Unoriented isotopy key of a connected curve: the least of the canonical
// classes of the crossing word and its inverse, as a printable string.
inline std::string curve_key_from_word(const Word& w) {
  const Word k1 = canonical_surface_class(w);
  const Word k2 = canonical_surface_class(inverse_word(w));
  const Word& k = word_min(k1, k2);
  static const char* pos = "abcd";
  static const char* neg = "ABCD";
  std::string out;
  out.reserve(k.size());
  for (int x : k) out.push_back(x > 0 ? pos[x - 1] : neg[-x - 1]);
  return out;
}

inline std::string curve_key(const TracedComponent& c) {
  return curve_key_from_word(surface_word(c));
}

// A connected normal curve is essential exactly when it is not
// null-homotopic; embedded trivial curves enclose the vertex, so this also
// rejects vertex-link positions in any coordinates.
inline bool is_essential_curve(const TracedComponent& c) {
  return !surface_word_is_trivial(surface_word(c));
}

enum class CurveClass { kEmpty, kTrivial, kEssential };

inline CurveClass classify_connected(const Weights& w) {
  if (w == kZeroWeights) return CurveClass::kEmpty;
  Trace t = trace(w);
  if (t.components.size() != 1) throw std::invalid_argument("curve is not connected");
  return is_essential_curve(t.components[0]) ? CurveClass::kEssential : CurveClass::kTrivial;
}

// ====== Free group of rank 2 ======

// Letters +-1, +-2.  Used for words of curves in a handlebody, read from
// crossings with the handlebody's two-disk system.

inline bool f2_is_trivial(const Word& w) { return free_reduce(w).empty(); }

inline std::array<int, 2> f2_abelianization(const Word& w) {
  std::array<int, 2> ab{0, 0};
  for (int x : w) ab[std::abs(x) - 1] += x > 0 ? 1 : -1;
  return ab;
}

namespace detail {

// One Whitehead move on a cyclic word: replace every occurrence of generator
// g by g m (m a letter of the other generator), acting on cyclic words.
inline Word whitehead_apply(const Word& w, int g, int m) {
  Word out;
  for (int x : w) {
    if (x == g) {
      out.push_back(x);
      out.push_back(m);
    } else if (x == -g) {
      out.push_back(-m);
      out.push_back(x);
    } else {
      out.push_back(x);
    }
  }
  return cyclic_reduce(out);
}

}  // namespace detail

// Whitehead descent: a primitive element admits a length-reducing Whitehead
// move whenever its cyclic length exceeds one, so greedy reduction ends at a
// single letter exactly for primitives.
inline bool f2_is_primitive(const Word& input) {
  Word w = cyclic_reduce(input);
  if (w.empty()) return false;
  for (bool changed = true; changed;) {
    changed = false;
    for (int g : {1, -1, 2, -2}) {
      const int other = std::abs(g) == 1 ? 2 : 1;
      for (int m : {other, -other}) {
        Word next = detail::whitehead_apply(w, g, m);
        if (next.size() < w.size()) {
          w = next;
          changed = true;
        }
      }
    }
  }
  return w.size() == 1;
}

// Canonical form of the unoriented conjugacy class of an F2 word (cyclic
// reduction is complete for conjugacy in a free group).
inline Word f2_class(const Word& w) {
  Word a = lex_min_rotation(cyclic_reduce(w));
  Word b = lex_min_rotation(cyclic_reduce(inverse_word(w)));
  return word_min(a, b);
}

inline std::string f2_class_string(const Word& w) {
  static const char* pos = "xy";
  static const char* neg = "XY";
  std::string out;
  for (int v : f2_class(w)) out.push_back(v > 0 ? pos[v - 1] : neg[-v - 1]);
  return out;
}

}  // namespace haken
