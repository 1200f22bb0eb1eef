#pragma once

#include <set>
#include <utility>

#include "relsep/oracle.hpp"
#include "relsep/presentation.hpp"

namespace relsep {

// Sparse F_2 vector keyed by (canonical word kappa, index). Only nonzero
// coordinates are stored.
struct F2Vec {
  std::set<std::pair<Word, int>> bits;

  void toggle(const Word& kappa, int idx) {
    auto key = std::make_pair(kappa, idx);
    auto it = bits.find(key);
    if (it == bits.end())
      bits.insert(key);
    else
      bits.erase(it);
  }
  bool zero() const { return bits.empty(); }
  bool operator==(const F2Vec&) const = default;
  F2Vec operator+(const F2Vec& o) const {
    F2Vec r = *this;
    for (const auto& [k, i] : o.bits) r.toggle(k, i);
    return r;
  }
};

// Class in H_1(<<R>>): keys (kappa, half index in 0..2N-1).
using RelClass = F2Vec;
// Class in Q(T,R): keys (kappa, pair index in 0..N-1).
using QVec = F2Vec;

// Class of a decomposition w = prod u_j rel_j^{+-1} u_j^-1: sum of
// (canonical(u_j), rel_j) mod 2. The namer canonicalizes conjugators in K_R.
RelClass rel_class_from(const Decomposition& d, const WordProblemOracle& namer);

// Class of a word trivial in K_R. DomainError if nontrivial, BudgetError if
// the oracle cannot decide or decompose.
RelClass rel_class(const Word& w, const WordProblemOracle& oracle);

// Key shift (kappa, i) -> (canonical(u . kappa), i).
F2Vec shift(const F2Vec& v, const Word& u, const WordProblemOracle& namer);

// (kappa, half j) -> (kappa, pair j/2), F_2 sums at collisions.
QVec project_Q(const RelClass& v, const HalvedPresentation& hp);

// P_{T,R} of a loop word (trivial in K_R): project_Q(rel_class(loop)).
QVec P_of_loop(const Word& loop, const WordProblemOracle& oracle,
               const HalvedPresentation& hp);

// Symmetric bilinear form: parity of the shared support.
int pairing(const QVec& x, const QVec& y);

}  // namespace relsep
