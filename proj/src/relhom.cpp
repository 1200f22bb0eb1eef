#include "relsep/relhom.hpp"

#include "relsep/errors.hpp"

namespace relsep {

namespace {

Word canon(const Word& w, const WordProblemOracle& namer) {
  auto k = namer.key(w);
  if (!k) throw CanonicalizationError("cannot canonicalize conjugator key");
  return *k;
}

}  // namespace

RelClass rel_class_from(const Decomposition& d,
                        const WordProblemOracle& namer) {
  RelClass v;
  for (const DehnStep& st : d) v.toggle(canon(st.conjugator, namer), st.relator);
  return v;
}

RelClass rel_class(const Word& w, const WordProblemOracle& oracle) {
  Answer a = oracle.answer(w);
  if (a == Answer::nontrivial)
    throw DomainError("word is nontrivial in K_R: " + to_text(w));
  if (a == Answer::unknown)
    throw BudgetError("oracle cannot decide triviality of " + to_text(w));
  auto d = oracle.trivialize(w);
  if (!d) throw BudgetError("oracle has no decomposition for " + to_text(w));
  return rel_class_from(*d, oracle);
}

F2Vec shift(const F2Vec& v, const Word& u, const WordProblemOracle& namer) {
  F2Vec out;
  for (const auto& [kappa, i] : v.bits) out.toggle(canon(concat(u, kappa), namer), i);
  return out;
}

QVec project_Q(const RelClass& v, const HalvedPresentation& hp) {
  QVec q;
  for (const auto& [kappa, j] : v.bits) {
    if (j < 0 || j >= 2 * hp.pairs())
      throw ContractError("half index out of range");
    q.toggle(kappa, HalvedPresentation::pair_of_half(j));
  }
  return q;
}

QVec P_of_loop(const Word& loop, const WordProblemOracle& oracle,
               const HalvedPresentation& hp) {
  return project_Q(rel_class(loop, oracle), hp);
}

int pairing(const QVec& x, const QVec& y) {
  int parity = 0;
  for (const auto& key : x.bits) parity ^= y.bits.count(key) ? 1 : 0;
  return parity;
}

}  // namespace relsep
