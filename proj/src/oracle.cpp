#include "relsep/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "relsep/errors.hpp"

namespace relsep {

namespace {

int gen_of(Letter x) { return x > 0 ? x : -x; }

// All rewrite successors of u: replace a matched prefix of length m of a
// symmetrized word s (m >= min_match(s)) by the inverse of its complement.
// Records the step algebra: u = pre.s[0..m).suf = (pre x^-1 rel^sign x pre^-1)
// . (pre . s[m..)^-1 . suf).
struct Rewrite {
  Word result;
  DehnStep step;
};

std::vector<Rewrite> rewrites(const Word& u, const Presentation& p,
                              const std::vector<SymmetrizedWord>& sym,
                              bool equal_length_only) {
  std::vector<Rewrite> out;
  for (int pos = 0; pos < static_cast<int>(u.size()); ++pos) {
    for (const SymmetrizedWord& s : sym) {
      int cap = std::min(static_cast<int>(s.word.size()),
                         static_cast<int>(u.size()) - pos);
      int max_m = 0;
      while (max_m < cap && u[pos + max_m] == s.word[max_m]) ++max_m;
      int slen = static_cast<int>(s.word.size());
      int lo = equal_length_only ? (slen + 1) / 2 : 1;
      for (int m = lo; m <= max_m; ++m) {
        if (equal_length_only && 2 * m < slen) continue;
        Word pre(u.begin(), u.begin() + pos);
        Word suf(u.begin() + pos + m, u.end());
        Word v(s.word.begin() + m, s.word.end());
        Word base = s.sign == 1 ? p.relators[s.relator]
                                : inverse_word(p.relators[s.relator]);
        Word x(base.begin(), base.begin() + s.rotation);
        Word next = pre;
        Word vinv = inverse_word(v);
        next.insert(next.end(), vinv.begin(), vinv.end());
        next.insert(next.end(), suf.begin(), suf.end());
        out.push_back({reduce(next),
                       {concat(pre, inverse_word(x)), s.relator, s.sign}});
      }
    }
  }
  return out;
}

}  // namespace

DehnOracle::DehnOracle(Presentation p, long budget)
    : p_(std::move(p)), budget_(budget) {
  p_.validate();
  certified_ = check_metric(p_, 1, 6);
}

Answer DehnOracle::answer(const Word& w) const {
  DehnTrace tr = dehn_reduce(w, p_, budget_);
  switch (tr.outcome) {
    case DehnOutcome::trivial: return Answer::trivial;
    case DehnOutcome::nontrivial:
      return certified_ ? Answer::nontrivial : Answer::unknown;
    default: return Answer::unknown;
  }
}

std::optional<Decomposition> DehnOracle::trivialize(const Word& w) const {
  DehnTrace tr = dehn_reduce(w, p_, budget_);
  if (tr.outcome != DehnOutcome::trivial) return std::nullopt;
  return tr.decomposition;
}

std::optional<Word> DehnOracle::key(const Word& w) const {
  DehnTrace tr = dehn_reduce(w, p_, budget_);
  if (tr.outcome == DehnOutcome::budget_exhausted) return std::nullopt;
  Word root = tr.outcome == DehnOutcome::trivial ? Word{} : tr.residue;
  auto sym = symmetrize(p_);
  // Closure under length-nonincreasing replacements (a shortening move can
  // follow an equal-length one); ShortLex minimum of the orbit.
  std::set<Word> seen{root};
  std::deque<Word> queue{root};
  Word best = root;
  while (!queue.empty()) {
    if (static_cast<long>(seen.size()) > budget_) return std::nullopt;
    Word u = queue.front();
    queue.pop_front();
    for (auto& rw : rewrites(u, p_, sym, /*equal_length_only=*/true)) {
      if (rw.result.size() > u.size()) continue;
      if (seen.insert(rw.result).second) {
        if (shortlex_less(rw.result, best)) best = rw.result;
        queue.push_back(rw.result);
      }
    }
  }
  return best;
}

ExactFixtureOracle::ExactFixtureOracle(Presentation p) : p_(std::move(p)) {
  p_.validate();
  factor_of_gen_.assign(p_.n + 1, 0);
  relator_of_gen_.assign(p_.n + 1, -1);
  int next_factor = 0;
  for (size_t i = 0; i < p_.relators.size(); ++i) {
    const Word& r = p_.relators[i];
    if (r.size() != 4 || r[0] <= 0 || r[1] <= 0 || r[2] != -r[0] ||
        r[3] != -r[1] || r[0] == r[1])
      throw SpecError("relators must be commutators x y x^-1 y^-1");
    for (Letter g : {r[0], r[1]}) {
      if (relator_of_gen_[g] != -1)
        throw SpecError("generator appears in two factors");
      relator_of_gen_[g] = static_cast<int>(i);
    }
    ++next_factor;
    factor_of_gen_[r[0]] = factor_of_gen_[r[1]] = next_factor;
  }
  for (int g = 1; g <= p_.n; ++g)
    if (factor_of_gen_[g] == 0) factor_of_gen_[g] = ++next_factor;

  // Swap table: [alpha, beta] as an explicit conjugate of the factor relator.
  for (const Word& r : p_.relators) {
    Letter x = r[0], y = r[1];
    std::vector<Letter> letters{x, -x, y, -y};
    for (Letter a : letters)
      for (Letter b : letters) {
        if (gen_of(a) == gen_of(b)) continue;
        if (gen_of(a) < gen_of(b)) continue;  // only out-of-order pairs
        Word target = reduce({a, b, -a, -b});
        bool found = false;
        // Brute force conjugators of length <= 3 over the factor letters.
        std::vector<Word> cands{{}};
        for (size_t qi = 0; qi < cands.size() && !found; ++qi) {
          Word c = cands[qi];
          for (int sign : {1, -1}) {
            Word probe = conjugate(c, sign == 1 ? r : inverse_word(r));
            if (probe == target) {
              swaps_[{a, b}] = {c, sign};
              found = true;
              break;
            }
          }
          if (!found && c.size() < 3)
            for (Letter l : letters)
              if (c.empty() || c.back() != -l) {
                Word ext = c;
                ext.push_back(l);
                cands.push_back(std::move(ext));
              }
        }
        if (!found) throw SpecError("no swap conjugator found");
      }
  }
}

Word ExactFixtureOracle::sort_word(const Word& w_in, Decomposition* steps) const {
  Word w = reduce(w_in, p_.n);
  while (true) {
    int pos = -1;
    for (int i = 0; i + 1 < static_cast<int>(w.size()); ++i) {
      Letter a = w[i], b = w[i + 1];
      if (gen_of(a) == gen_of(b)) continue;
      if (factor_of_gen_[gen_of(a)] != factor_of_gen_[gen_of(b)]) continue;
      if (gen_of(a) > gen_of(b)) {
        pos = i;
        break;
      }
    }
    if (pos < 0) return w;
    Letter a = w[pos], b = w[pos + 1];
    auto it = swaps_.find({a, b});
    Word prefix(w.begin(), w.begin() + pos);
    if (steps) {
      const auto& [c, sign] = it->second;
      steps->push_back({concat(prefix, c), relator_of_gen_[gen_of(a)], sign});
    }
    Word next = prefix;
    next.push_back(b);
    next.push_back(a);
    next.insert(next.end(), w.begin() + pos + 2, w.end());
    w = reduce(next);
  }
}

Word ExactFixtureOracle::normal_form(const Word& w) const {
  return sort_word(w, nullptr);
}

Answer ExactFixtureOracle::answer(const Word& w) const {
  return normal_form(w).empty() ? Answer::trivial : Answer::nontrivial;
}

std::optional<Decomposition> ExactFixtureOracle::trivialize(
    const Word& w) const {
  Decomposition d;
  if (!sort_word(w, &d).empty()) return std::nullopt;
  return d;
}

std::optional<Word> ExactFixtureOracle::key(const Word& w) const {
  return normal_form(w);
}

BoundedSearchOracle::BoundedSearchOracle(Presentation p, int slack,
                                         long node_budget)
    : p_(std::move(p)), slack_(slack), node_budget_(node_budget) {
  p_.validate();
}

std::optional<Decomposition> BoundedSearchOracle::trivialize(
    const Word& w) const {
  auto sym = symmetrize(p_);
  Word root = reduce(w);
  size_t max_len = root.size() + static_cast<size_t>(slack_);
  std::map<Word, std::pair<Word, DehnStep>> parent;  // child -> (parent, step)
  std::deque<Word> queue{root};
  std::set<Word> seen{root};
  long nodes = 0;
  while (!queue.empty()) {
    Word u = queue.front();
    queue.pop_front();
    if (u.empty()) {
      Decomposition d;
      Word cur;
      while (cur != root) {
        auto& [par, step] = parent.at(cur);
        d.push_back(step);
        cur = par;
      }
      std::reverse(d.begin(), d.end());
      return d;
    }
    if (++nodes > node_budget_) return std::nullopt;
    for (auto& rw : rewrites(u, p_, sym, /*equal_length_only=*/false)) {
      if (rw.result.size() > max_len) continue;
      if (seen.insert(rw.result).second) {
        parent[rw.result] = {u, rw.step};
        queue.push_back(rw.result);
      }
    }
  }
  return std::nullopt;
}

Answer BoundedSearchOracle::answer(const Word& w) const {
  if (reduce(w).empty()) return Answer::trivial;
  return trivialize(w) ? Answer::trivial : Answer::unknown;
}

}  // namespace relsep
