#pragma once

#include <string>
#include <vector>

namespace relsep {

// A letter is a nonzero signed generator index: +i is the i-th generator,
// -i its inverse. Text form uses a..z for generators and A..Z for inverses.
using Letter = int;

// A freely reduced sequence of letters.
using Word = std::vector<Letter>;

inline Letter inverse(Letter x) { return -x; }

// True if no adjacent pair (x, -x).
bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Free reduction. Throws AlphabetError if a letter is 0 or |letter| > n
// (n == 0 skips the range check).
Word reduce(const Word& raw, int n = 0);

Word inverse_word(const Word& w);

// reduce(u . v)
Word concat(const Word& u, const Word& v);

// Conjugate reduce(u . w . u^-1).
Word conjugate(const Word& u, const Word& w);

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // input == conjugator . core . conjugator^-1
};

CyclicReduction cyclic_reduce(const Word& w);

// Left rotation by k: w[k..] w[..k].
Word rotate(const Word& w, int k);

// ShortLex order: length first, then a < A < b < B < ...
bool shortlex_less(const Word& a, const Word& b);

// Maps letter to a dense slot in [0, 2n): a=0, A=1, b=2, B=3, ...
int letter_slot(Letter x);
Letter slot_letter(int slot);

std::string to_text(const Word& w);
Word from_text(const std::string& s);

}  // namespace relsep
