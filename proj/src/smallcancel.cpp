#include "relsep/smallcancel.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "relsep/errors.hpp"

namespace relsep {

namespace {

bool lex_less(const Word& a, const Word& b) {
  size_t m = std::min(a.size(), b.size());
  for (size_t i = 0; i < m; ++i) {
    int sa = letter_slot(a[i]), sb = letter_slot(b[i]);
    if (sa != sb) return sa < sb;
  }
  return a.size() < b.size();
}

size_t lcp(const Word& a, const Word& b) {
  size_t m = std::min(a.size(), b.size()), i = 0;
  while (i < m && a[i] == b[i]) ++i;
  return i;
}

int minimal_period(const Word& w) {
  int len = static_cast<int>(w.size());
  for (int p = 1; p <= len / 2; ++p) {
    if (len % p != 0) continue;
    if (rotate(w, p) == w) return p;
  }
  return len;
}

}  // namespace

std::vector<SymmetrizedWord> symmetrize(const Presentation& p) {
  std::vector<SymmetrizedWord> out;
  std::set<Word> seen;
  for (size_t i = 0; i < p.relators.size(); ++i) {
    if (!is_cyclically_reduced(p.relators[i]))
      throw ContractError("symmetrize requires cyclically reduced relators");
    for (int sign : {1, -1}) {
      Word base = sign == 1 ? p.relators[i] : inverse_word(p.relators[i]);
      for (int k = 0; k < static_cast<int>(base.size()); ++k) {
        Word w = rotate(base, k);
        if (seen.insert(w).second)
          out.push_back({std::move(w), static_cast<int>(i), sign, k});
      }
    }
  }
  return out;
}

PieceReport max_piece_length(const Presentation& p) {
  PieceReport rep;
  auto sym = symmetrize(p);
  rep.min_relator_length = 0;
  for (const Word& r : p.relators) {
    int len = static_cast<int>(r.size());
    if (rep.min_relator_length == 0 || len < rep.min_relator_length)
      rep.min_relator_length = len;
  }
  if (sym.size() < 2) {
    rep.lambda_num = 0;
    rep.lambda_den = std::max(1, rep.min_relator_length);
    return rep;
  }
  std::sort(sym.begin(), sym.end(),
            [](const SymmetrizedWord& a, const SymmetrizedWord& b) {
              return lex_less(a.word, b.word);
            });
  for (size_t i = 0; i + 1 < sym.size(); ++i) {
    int L = static_cast<int>(lcp(sym[i].word, sym[i + 1].word));
    if (L > rep.max_piece_length) {
      rep.max_piece_length = L;
      rep.witness_a = sym[i];
      rep.witness_b = sym[i + 1];
    }
  }
  rep.lambda_num = rep.max_piece_length;
  rep.lambda_den = std::max(1, rep.min_relator_length);
  return rep;
}

bool check_metric(const Presentation& p, long num, long den) {
  if (num <= 0 || den <= 0) throw ContractError("lambda must be positive");
  auto sym = symmetrize(p);
  if (sym.size() < 2) return true;
  std::sort(sym.begin(), sym.end(),
            [](const SymmetrizedWord& a, const SymmetrizedWord& b) {
              return lex_less(a.word, b.word);
            });
  for (size_t i = 0; i + 1 < sym.size(); ++i) {
    long L = static_cast<long>(lcp(sym[i].word, sym[i + 1].word));
    for (const auto* s : {&sym[i], &sym[i + 1]}) {
      long rl = static_cast<long>(s->word.size());
      if (L * den >= num * rl) return false;
    }
  }
  return true;
}

AsphericityReport asphericity_checks(const Presentation& p) {
  AsphericityReport rep;
  const auto& Y = p.relators;
  for (size_t i = 0; i < Y.size(); ++i) {
    if (!is_cyclically_reduced(Y[i])) continue;  // checks scoped to cyc-reduced
    int period = minimal_period(Y[i]);
    if (period < static_cast<int>(Y[i].size()))
      rep.violations.push_back(
          {"proper_power", "relator " + std::to_string(i) + " = (" +
                               to_text(Word(Y[i].begin(), Y[i].begin() + period)) +
                               ")^" + std::to_string(Y[i].size() / period)});
  }
  for (size_t i = 0; i < Y.size(); ++i) {
    for (size_t j = i; j < Y.size(); ++j) {
      if (!is_cyclically_reduced(Y[i]) || !is_cyclically_reduced(Y[j]))
        continue;
      if (Y[i].size() != Y[j].size()) continue;
      int len = static_cast<int>(Y[j].size());
      for (int k = 0; k < len; ++k) {
        if (i != j && rotate(Y[j], k) == Y[i]) {
          rep.violations.push_back(
              {"cyclic_conjugate", "relator " + std::to_string(i) +
                                       " is a cyclic conjugate of relator " +
                                       std::to_string(j)});
          k = len;
          continue;
        }
        if (rotate(inverse_word(Y[j]), k) == Y[i]) {
          rep.violations.push_back(
              {"cyclic_conjugate",
               "relator " + std::to_string(i) +
                   " is a cyclic conjugate of the inverse of relator " +
                   std::to_string(j)});
          break;
        }
      }
    }
  }
  std::map<Word, std::pair<size_t, size_t>> products;
  for (size_t i = 0; i < Y.size(); ++i)
    for (size_t j = 0; j < Y.size(); ++j) {
      if (Y[j] == inverse_word(Y[i])) continue;
      Word prod = concat(Y[i], Y[j]);
      auto [it, inserted] = products.emplace(prod, std::make_pair(i, j));
      if (!inserted && it->second != std::make_pair(i, j))
        rep.violations.push_back(
            {"product_collision",
             "products (" + std::to_string(it->second.first) + "," +
                 std::to_string(it->second.second) + ") and (" +
                 std::to_string(i) + "," + std::to_string(j) +
                 ") coincide in the free group"});
    }
  return rep;
}

DehnTrace dehn_reduce(const Word& w_in, const Presentation& p, long budget) {
  auto sym = symmetrize(p);
  DehnTrace trace;
  Word w = reduce(w_in);
  while (true) {
    if (w.empty()) {
      trace.outcome = DehnOutcome::trivial;
      return trace;
    }
    if (trace.steps >= budget) {
      trace.outcome = DehnOutcome::budget_exhausted;
      trace.residue = w;
      return trace;
    }
    // Leftmost-longest replacement.
    int best_len = 0, best_pos = -1, best_sym = -1;
    for (int pos = 0; pos < static_cast<int>(w.size()); ++pos) {
      for (size_t si = 0; si < sym.size(); ++si) {
        const Word& s = sym[si].word;
        int cap = std::min(static_cast<int>(s.size()),
                           static_cast<int>(w.size()) - pos);
        int m = 0;
        while (m < cap && w[pos + m] == s[m]) ++m;
        if (2 * m > static_cast<int>(s.size()) && m > best_len) {
          best_len = m;
          best_pos = pos;
          best_sym = static_cast<int>(si);
        }
      }
    }
    if (best_pos < 0) {
      trace.outcome = DehnOutcome::nontrivial;
      trace.residue = w;
      trace.decomposition.clear();
      return trace;
    }
    const SymmetrizedWord& s = sym[best_sym];
    Word pre(w.begin(), w.begin() + best_pos);
    Word suf(w.begin() + best_pos + best_len, w.end());
    Word v(s.word.begin() + best_len, s.word.end());
    // s.word = x^-1 . relator^sign . x with x the first `rotation` letters.
    Word base = s.sign == 1 ? p.relators[s.relator]
                            : inverse_word(p.relators[s.relator]);
    Word x(base.begin(), base.begin() + s.rotation);
    trace.decomposition.push_back(
        {concat(pre, inverse_word(x)), s.relator, s.sign});
    Word next = pre;
    Word vinv = inverse_word(v);
    next.insert(next.end(), vinv.begin(), vinv.end());
    next.insert(next.end(), suf.begin(), suf.end());
    w = reduce(next);
    ++trace.steps;
  }
}

bool decomposition_reassembles(const std::vector<DehnStep>& steps,
                               const Presentation& p, const Word& w) {
  Word prod;
  for (const DehnStep& st : steps) {
    Word rel = st.sign == 1 ? p.relators[st.relator]
                            : inverse_word(p.relators[st.relator]);
    prod = concat(prod, conjugate(st.conjugator, rel));
  }
  return prod == reduce(w);
}

}  // namespace relsep
