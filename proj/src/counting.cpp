#include "relsep/counting.hpp"

#include <vector>

#include "relsep/errors.hpp"

namespace relsep {

BigInt rand_below(const BigInt& n, Rng& rng) {
  if (n <= 0) throw ContractError("rand_below: empty range");
  unsigned bits = static_cast<unsigned>(msb(n)) + 1;
  for (;;) {
    BigInt x = 0;
    unsigned got = 0;
    while (got < bits) {
      unsigned take = std::min(64u, bits - got);
      std::uint64_t chunk = rng();
      if (take < 64) chunk &= (std::uint64_t(1) << take) - 1;
      x <<= take;
      x += chunk;
      got += take;
    }
    if (x < n) return x;
  }
}

namespace {

std::vector<Letter> letter_set(int n, bool positive) {
  std::vector<Letter> ls;
  for (int g = 1; g <= n; ++g) {
    ls.push_back(g);
    if (!positive) ls.push_back(-g);
  }
  return ls;
}

void validate(int n, int l, const WordConstraints& c) {
  if (n < 1) throw ContractError("alphabet size must be >= 1");
  if (l < 1) throw ContractError("length must be >= 1");
  auto check = [&](std::optional<Letter> x) {
    if (x && (*x == 0 || *x > n || *x < -n))
      throw AlphabetError("constraint letter out of range");
  };
  check(c.first);
  check(c.last);
  if (l == 1 && c.first && c.last && *c.first != *c.last)
    throw ContractError("l = 1 requires first == last");
}

// S[i][slot]: completions of positions i..l-1 given w[i] = letter, honoring
// the last-position constraints. forbidden_last < n+1 sentinel 0 = none.
std::vector<std::vector<BigInt>> suffix_table(int n, int l,
                                              const std::vector<Letter>& ls,
                                              std::optional<Letter> last,
                                              Letter forbidden_last) {
  int m = 2 * n;
  std::vector<std::vector<BigInt>> S(l, std::vector<BigInt>(m, 0));
  for (Letter y : ls) {
    bool ok = (!last || *last == y) && y != forbidden_last;
    if (ok) S[l - 1][letter_slot(y)] = 1;
  }
  for (int i = l - 2; i >= 0; --i)
    for (Letter y : ls) {
      BigInt acc = 0;
      for (Letter z : ls)
        if (z != -y) acc += S[i + 1][letter_slot(z)];
      S[i][letter_slot(y)] = acc;
    }
  return S;
}

BigInt count_first_fixed(int n, int l, const std::vector<Letter>& ls,
                         Letter f, std::optional<Letter> last,
                         bool cyc) {
  Letter forb = (cyc && l >= 2) ? -f : 0;
  if (last && forb != 0 && *last == forb) return 0;
  auto S = suffix_table(n, l, ls, last, forb);
  return S[0][letter_slot(f)];
}

}  // namespace

BigInt count_words(int n, int l, const WordConstraints& c) {
  validate(n, l, c);
  auto ls = letter_set(n, c.positive);
  auto in_set = [&](Letter x) { return !c.positive || x > 0; };
  if ((c.first && !in_set(*c.first)) || (c.last && !in_set(*c.last))) return 0;
  BigInt total = 0;
  if (c.first) {
    total = count_first_fixed(n, l, ls, *c.first, c.last, c.cyclically_reduced);
  } else {
    for (Letter f : ls)
      total += count_first_fixed(n, l, ls, f, c.last, c.cyclically_reduced);
  }
  return total;
}

BigInt count_reduced_words(int n, int l, std::optional<Letter> first,
                           std::optional<Letter> last,
                           bool cyclically_reduced) {
  WordConstraints c;
  c.first = first;
  c.last = last;
  c.cyclically_reduced = cyclically_reduced;
  return count_words(n, l, c);
}

Word sample_word(int n, int l, const WordConstraints& c, Rng& rng) {
  validate(n, l, c);
  auto ls = letter_set(n, c.positive);
  auto in_set = [&](Letter x) { return !c.positive || x > 0; };
  if ((c.first && !in_set(*c.first)) || (c.last && !in_set(*c.last)))
    throw SamplingError("constrained set is empty");

  // Pick the first letter with weight = number of completions.
  std::vector<Letter> firsts;
  std::vector<BigInt> weights;
  BigInt total = 0;
  for (Letter f : ls) {
    if (c.first && *c.first != f) continue;
    BigInt w = count_first_fixed(n, l, ls, f, c.last, c.cyclically_reduced);
    if (w > 0) {
      firsts.push_back(f);
      weights.push_back(w);
      total += w;
    }
  }
  if (total == 0) throw SamplingError("constrained set is empty");
  BigInt pick = rand_below(total, rng);
  size_t fi = 0;
  while (pick >= weights[fi]) pick -= weights[fi++];
  Letter f = firsts[fi];

  Word w{f};
  Letter forb = (c.cyclically_reduced && l >= 2) ? -f : 0;
  auto S = suffix_table(n, l, ls, c.last, forb);
  for (int i = 1; i < l; ++i) {
    BigInt level = 0;
    for (Letter y : ls)
      if (y != -w.back()) level += S[i][letter_slot(y)];
    BigInt r = rand_below(level, rng);
    for (Letter y : ls) {
      if (y == -w.back()) continue;
      const BigInt& wy = S[i][letter_slot(y)];
      if (r < wy) {
        w.push_back(y);
        break;
      }
      r -= wy;
    }
  }
  return w;
}

}  // namespace relsep
