#include "relsep/presentation.hpp"

#include <set>

#include "relsep/errors.hpp"

namespace relsep {

void Presentation::validate() const {
  if (n < 1) throw ContractError("presentation needs n >= 1");
  std::set<Word> seen;
  for (const Word& r : relators) {
    if (r.empty()) throw ContractError("empty relator");
    for (Letter x : r)
      if (x == 0 || x > n || x < -n)
        throw AlphabetError("relator letter out of range");
    if (!is_reduced(r)) throw ContractError("relator not freely reduced");
    if (!seen.insert(r).second) throw ContractError("duplicate relator");
  }
}

PairIndex HalvedPresentation::pair_index(const Word& r) const {
  for (size_t j = 0; j < halves.size(); ++j)
    if (halves[j] == r)
      return {static_cast<int>(j / 2),
              j % 2 == 0 ? HalfRole::first : HalfRole::second};
  throw LookupError("word is not a stored half: " + to_text(r));
}

const Word& HalvedPresentation::partner(const Word& r) const {
  for (size_t j = 0; j < halves.size(); ++j)
    if (halves[j] == r) return halves[j ^ 1];
  throw LookupError("word is not a stored half: " + to_text(r));
}

Presentation HalvedPresentation::kr_presentation() const {
  Presentation p;
  p.n = base.n;
  p.relators = halves;
  return p;
}

bool HalvedPresentation::has_duplicate_halves() const {
  std::set<Word> seen;
  for (const Word& h : halves)
    if (!seen.insert(h).second) return true;
  return false;
}

HalvedPresentation halve(const Presentation& p,
                         const std::optional<std::vector<int>>& splits) {
  p.validate();
  HalvedPresentation hp;
  hp.base = p;
  size_t N = p.relators.size();
  if (splits && splits->size() != N)
    throw HalvingError("split list length mismatch");
  for (size_t i = 0; i < N; ++i) {
    const Word& t = p.relators[i];
    int len = static_cast<int>(t.size());
    if (len < 2) throw HalvingError("relator too short to halve");
    int s = splits ? (*splits)[i] : len / 2;
    if (s < 1 || s >= len) throw HalvingError("split leaves an empty half");
    Word r(t.begin(), t.begin() + s);
    Word rp(t.begin() + s, t.end());
    if (!is_reduced(r) || !is_reduced(rp))
      throw HalvingError("half is not freely reduced");
    hp.splits.push_back(s);
    hp.halves.push_back(std::move(r));
    hp.halves.push_back(std::move(rp));
  }
  return hp;
}

}  // namespace relsep
