#pragma once

#include <string>
#include <vector>

#include "relsep/presentation.hpp"

namespace relsep {

// One cyclic conjugate of a relator or its inverse: word == prefix^-1 .
// relator^sign . prefix, where prefix is the first `rotation` letters of
// relator^sign.
struct SymmetrizedWord {
  Word word;
  int relator = 0;
  int sign = 1;      // +1 or -1
  int rotation = 0;  // left-rotation amount
};

// All distinct cyclic conjugates of all relators and their inverses.
std::vector<SymmetrizedWord> symmetrize(const Presentation& p);

struct PieceReport {
  int max_piece_length = 0;
  int min_relator_length = 0;
  // Witnessing occurrence pair (relator index, rotation, sign) x2.
  SymmetrizedWord witness_a, witness_b;
  // lambda* = max_piece_length / min_relator_length as a rational.
  long lambda_num = 0, lambda_den = 1;
};

// Longest common subword over distinct positions of the symmetrized set.
PieceReport max_piece_length(const Presentation& p);

// C'(lambda) with lambda = num/den: every piece strictly shorter than
// lambda * |r| for each relator r containing it.
bool check_metric(const Presentation& p, long num, long den);

struct AsphericityViolation {
  std::string kind;  // proper_power | cyclic_conjugate | product_collision
  std::string detail;
};

struct AsphericityReport {
  std::vector<AsphericityViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Necessary conditions from asphericity (never a certificate):
// (i) no relator is a proper power; (ii) no relator is a cyclic conjugate of
// another relator or of any relator's inverse (own inverse included);
// (iii) two-relator products y y' with y' != y^-1 are distinct across pairs.
AsphericityReport asphericity_checks(const Presentation& p);

enum class DehnOutcome { trivial, nontrivial, budget_exhausted };

struct DehnStep {
  Word conjugator;
  int relator = 0;
  int sign = 1;
};

struct DehnTrace {
  DehnOutcome outcome = DehnOutcome::budget_exhausted;
  std::vector<DehnStep> decomposition;  // present iff trivial
  Word residue;                         // final word when not trivial
  long steps = 0;
};

// Greedy Dehn reduction: replace any subword that is more than half of a
// symmetrized relator by the shorter complement (leftmost-longest first).
// "nontrivial" is only conclusive when p is C'(1/6).
DehnTrace dehn_reduce(const Word& w, const Presentation& p,
                      long budget = 10000);

// Free-group check that a decomposition reassembles to w.
bool decomposition_reassembles(const std::vector<DehnStep>& steps,
                               const Presentation& p, const Word& w);

}  // namespace relsep
