#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "relsep/smallcancel.hpp"

namespace relsep {

enum class Answer { trivial, nontrivial, unknown };

// w == product of conjugates u_j . rel_j^sign_j . u_j^-1 in the free group.
using Decomposition = std::vector<DehnStep>;

class WordProblemOracle {
 public:
  virtual ~WordProblemOracle() = default;
  virtual Answer answer(const Word& w) const = 0;
  // Constructive witness for trivial words; nullopt when the oracle cannot
  // certify triviality of w.
  virtual std::optional<Decomposition> trivialize(const Word& w) const = 0;
  // Canonical representative (ShortLex-least equal word) when the oracle can
  // compute one; nullopt otherwise.
  virtual std::optional<Word> key(const Word& w) const { return std::nullopt; }
  virtual const Presentation& presentation() const = 0;
};

// Dehn's algorithm. Conclusive "nontrivial" only when the presentation is
// C'(1/6); otherwise a stuck word is reported as unknown.
class DehnOracle : public WordProblemOracle {
 public:
  explicit DehnOracle(Presentation p, long budget = 10000);

  bool certified() const { return certified_; }
  Answer answer(const Word& w) const override;
  std::optional<Decomposition> trivialize(const Word& w) const override;
  // Dehn residue followed by closure under length-preserving half-relator
  // replacements; ShortLex minimum of the closure. Nullopt on budget blowup.
  std::optional<Word> key(const Word& w) const override;
  const Presentation& presentation() const override { return p_; }

 private:
  Presentation p_;
  bool certified_;
  long budget_;
};

// Exact word problem for a free product of free abelian factors of rank <= 2,
// presented by disjoint generator commutators. Normal form: per-syllable
// letters sorted by generator; trivializer: adjacent-transposition sort, one
// conjugate of the factor's commutator per swap.
class ExactFixtureOracle : public WordProblemOracle {
 public:
  explicit ExactFixtureOracle(Presentation p);  // throws SpecError

  Answer answer(const Word& w) const override;
  std::optional<Decomposition> trivialize(const Word& w) const override;
  std::optional<Word> key(const Word& w) const override;
  const Presentation& presentation() const override { return p_; }

  Word normal_form(const Word& w) const;

 private:
  Word sort_word(const Word& w, Decomposition* steps) const;

  Presentation p_;
  std::vector<int> factor_of_gen_;   // 1..n -> factor id
  std::vector<int> relator_of_gen_;  // 1..n -> relator index or -1
  // (alpha, beta) with gen(alpha) > gen(beta), same rank-2 factor:
  // [alpha, beta] = c . rel^sign . c^-1 in the free group.
  std::map<std::pair<Letter, Letter>, std::pair<Word, int>> swaps_;
};

// Budgeted breadth-first search over relator rewrites with bounded length
// slack. Answers trivial (with decomposition) or unknown; never nontrivial.
class BoundedSearchOracle : public WordProblemOracle {
 public:
  explicit BoundedSearchOracle(Presentation p, int slack = 2,
                               long node_budget = 20000);

  Answer answer(const Word& w) const override;
  std::optional<Decomposition> trivialize(const Word& w) const override;
  const Presentation& presentation() const override { return p_; }

 private:
  Presentation p_;
  int slack_;
  long node_budget_;
};

}  // namespace relsep
