#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <random>

#include "relsep/word.hpp"

namespace relsep {

using BigInt = boost::multiprecision::cpp_int;

using Rng = std::mt19937_64;

// Uniform draw from [0, n). n > 0.
BigInt rand_below(const BigInt& n, Rng& rng);

struct WordConstraints {
  std::optional<Letter> first;
  std::optional<Letter> last;
  bool cyclically_reduced = false;
  bool positive = false;
};

// Exact count of freely reduced words of length l over n generators
// satisfying the constraints. l >= 1, n >= 1.
BigInt count_words(int n, int l, const WordConstraints& c = {});

// Spec-facing alias without the positive flag.
BigInt count_reduced_words(int n, int l, std::optional<Letter> first,
                           std::optional<Letter> last,
                           bool cyclically_reduced);

// Exactly uniform over the constrained set (DP-weighted sequential
// sampling). Throws SamplingError if the set is empty.
Word sample_word(int n, int l, const WordConstraints& c, Rng& rng);

}  // namespace relsep
