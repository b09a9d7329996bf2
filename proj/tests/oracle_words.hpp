#pragma once

// Test oracle for primitivity in the free group of rank two, independent of
// the Whitehead-reduction implementation under test.
//
// Primitive conjugacy classes of F2 are classified by their abelianization:
// for every coprime pair there is exactly one class, represented by a
// Christoffel word with the appropriate generator inversions.  Membership of
// a cyclic word in the set of Christoffel classes of its length is therefore
// a complete primitivity test.

#include <numeric>
#include <set>

#include "haken/words.hpp"

namespace haken::test {

// Lower Christoffel word with p letters x and q letters y (p, q coprime).
inline Word christoffel(int p, int q) {
  const int n = p + q;
  Word w;
  int prev = 0;
  for (int k = 1; k <= n; ++k) {
    const int cur = (k * q) % n;
    w.push_back(cur > prev ? 1 : 2);
    prev = cur;
  }
  return w;
}

// Canonical class strings of every primitive class of cyclic length <= n.
inline std::set<Word, WordLess> primitive_classes_up_to(int n) {
  std::set<Word, WordLess> out;
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n - p; ++q) {
      if (p + q == 0 || std::gcd(p, q) != 1) continue;
      Word base = p == 0 ? Word(q, 2) : (q == 0 ? Word(p, 1) : christoffel(p, q));
      for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
          Word w = base;
          for (int& v : w) {
            if (std::abs(v) == 1) v = sx * v;
            else v = sy * v;
          }
          out.insert(f2_class(w));
        }
      }
    }
  }
  return out;
}

inline bool primitive_by_oracle(const Word& w, const std::set<Word, WordLess>& classes) {
  return classes.count(f2_class(w)) > 0;
}

}  // namespace haken::test
