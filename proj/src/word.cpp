#include "relsep/word.hpp"

#include <algorithm>

#include "relsep/errors.hpp"

namespace relsep {

bool is_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == -w[i + 1]) return false;
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  if (w.size() >= 2 && w.front() == -w.back()) return false;
  return true;
}

Word reduce(const Word& raw, int n) {
  Word out;
  out.reserve(raw.size());
  for (Letter x : raw) {
    if (x == 0 || (n > 0 && (x > n || x < -n)))
      throw AlphabetError("letter out of range: " + std::to_string(x));
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& x : out) x = -x;
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return reduce(out);
}

Word conjugate(const Word& u, const Word& w) {
  return concat(concat(u, w), inverse_word(u));
}

CyclicReduction cyclic_reduce(const Word& w) {
  size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  CyclicReduction cr;
  cr.conjugator.assign(w.begin(), w.begin() + lo);
  cr.core.assign(w.begin() + lo, w.begin() + hi);
  return cr;
}

Word rotate(const Word& w, int k) {
  if (w.empty()) return w;
  int m = static_cast<int>(w.size());
  k = ((k % m) + m) % m;
  Word out(w.begin() + k, w.end());
  out.insert(out.end(), w.begin(), w.begin() + k);
  return out;
}

int letter_slot(Letter x) {
  return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1;
}

Letter slot_letter(int slot) {
  int g = slot / 2 + 1;
  return (slot % 2 == 0) ? g : -g;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int sa = letter_slot(a[i]), sb = letter_slot(b[i]);
    if (sa != sb) return sa < sb;
  }
  return false;
}

std::string to_text(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) {
    if (x == 0 || x > 26 || x < -26)
      throw AlphabetError("letter not representable in text form");
    s.push_back(x > 0 ? static_cast<char>('a' + x - 1)
                      : static_cast<char>('A' - x - 1));
  }
  return s;
}

Word from_text(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    if (c >= 'a' && c <= 'z')
      w.push_back(c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z')
      w.push_back(-(c - 'A' + 1));
    else
      throw AlphabetError(std::string("bad character in word: ") + c);
  }
  return w;
}

}  // namespace relsep
