#pragma once

#include <vector>

#include "relsep/counting.hpp"
#include "relsep/word.hpp"

namespace relsep::testing {

// Brute-force enumeration oracle for constrained reduced words, independent
// of the DP in counting.cpp.
inline void enum_rec(int n, int l, const WordConstraints& c, Word& cur,
                     std::vector<Word>& out) {
  if (static_cast<int>(cur.size()) == l) {
    if (c.last && cur.back() != *c.last) return;
    if (c.cyclically_reduced && l >= 2 && cur.front() == -cur.back()) return;
    out.push_back(cur);
    return;
  }
  for (int g = 1; g <= n; ++g)
    for (int s : {1, -1}) {
      Letter x = s * g;
      if (c.positive && x < 0) continue;
      if (cur.empty() && c.first && x != *c.first) continue;
      if (!cur.empty() && cur.back() == -x) continue;
      cur.push_back(x);
      enum_rec(n, l, c, cur, out);
      cur.pop_back();
    }
}

inline std::vector<Word> enumerate_words(int n, int l,
                                         const WordConstraints& c = {}) {
  std::vector<Word> out;
  Word cur;
  enum_rec(n, l, c, cur, out);
  return out;
}

}  // namespace relsep::testing
