#pragma once

#include <optional>
#include <vector>

#include "relsep/word.hpp"

namespace relsep {

struct Presentation {
  int n = 0;                   // alphabet size
  std::vector<Word> relators;  // nonempty, freely reduced, no duplicates

  void validate() const;  // throws ContractError / AlphabetError
};

enum class HalfRole { first, second };

struct PairIndex {
  int pair = 0;  // index of t_i
  HalfRole role = HalfRole::first;
};

// Relator set T with the fixed partition t_i = r_i r_i'. Halves are stored
// flat as [r_0, r_0', r_1, r_1', ...]; half j belongs to pair j/2.
struct HalvedPresentation {
  Presentation base;        // relators = T
  std::vector<int> splits;  // |r_i|
  std::vector<Word> halves;

  int pairs() const { return static_cast<int>(base.relators.size()); }
  const Word& half(int j) const { return halves[j]; }
  static int pair_of_half(int j) { return j / 2; }

  // Looks a word up among the stored halves. Throws LookupError.
  PairIndex pair_index(const Word& r) const;
  const Word& partner(const Word& r) const;

  // K_R = <S | r_0, r_0', ...>.
  Presentation kr_presentation() const;

  // True if two different t_i share a half (the separation guarantees
  // then fail downstream; flagged here, reported by the asphericity
  // checker).
  bool has_duplicate_halves() const;
};

// Default split at floor(|t_i|/2); custom split positions accepted if each
// half is nonempty and reduced. Relators must be cyclically reduced for the
// guarantees downstream; length < 2 is a halving error.
HalvedPresentation halve(const Presentation& p,
                         const std::optional<std::vector<int>>& splits = {});

}  // namespace relsep
