#include "relsep/sampler.hpp"

#include <cmath>
#include <set>

#include "relsep/errors.hpp"

namespace relsep {

ModelFamily model_family_from_string(const std::string& s) {
  if (s == "density") return ModelFamily::density;
  if (s == "theta") return ModelFamily::theta;
  if (s == "omega") return ModelFamily::omega;
  if (s == "theta_bar") return ModelFamily::theta_bar;
  if (s == "omega_bar") return ModelFamily::omega_bar;
  if (s == "k_angular") return ModelFamily::k_angular;
  if (s == "k_angular_positive") return ModelFamily::k_angular_positive;
  throw ConfigError("unknown model family: " + s);
}

std::string to_string(ModelFamily f) {
  switch (f) {
    case ModelFamily::density: return "density";
    case ModelFamily::theta: return "theta";
    case ModelFamily::omega: return "omega";
    case ModelFamily::theta_bar: return "theta_bar";
    case ModelFamily::omega_bar: return "omega_bar";
    case ModelFamily::k_angular: return "k_angular";
    case ModelFamily::k_angular_positive: return "k_angular_positive";
  }
  throw ConfigError("bad model family");
}

void ModelSpec::validate() const {
  if (n < 2) throw ConfigError("model requires n >= 2");
  if (length < 2) throw ConfigError("model requires length >= 2");
  if (!(d > 0.0 && d < 1.0)) throw ConfigError("density must lie in (0,1)");
}

BigInt model_set_size(int base, double exponent) {
  // Relative fudge so that exact integer powers are not floored down by
  // floating point error.
  long double v = std::pow(static_cast<long double>(base),
                           static_cast<long double>(exponent));
  v *= (1.0L + 1e-12L);
  if (v >= 1e18L) throw ModelError("requested set size is absurdly large");
  return BigInt(static_cast<long long>(std::floor(v)));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

long to_long(const BigInt& x) {
  if (x > BigInt(1000000000)) throw ModelError("set size too large to draw");
  return static_cast<long>(x);
}

void draw_distinct(std::vector<Word>& out, std::set<Word>& seen, long count,
                   int n, int l, const WordConstraints& c, Rng& rng,
                   long& collisions) {
  BigInt universe = count_words(n, l, c);
  // `seen` may contain words from other constraint classes; conservative
  // feasibility check against the words already drawn in this class.
  long have = 0;
  for (const Word& w : out)
    if (static_cast<int>(w.size()) == l) ++have;
  if (BigInt(count) > universe)
    throw ModelError("requested set size exceeds the word universe");
  long produced = 0;
  while (produced < count) {
    Word w = sample_word(n, l, c, rng);
    if (seen.insert(w).second) {
      out.push_back(std::move(w));
      ++produced;
    } else {
      ++collisions;
      if (collisions > 1000000 + 100 * count)
        throw ModelError("rejection sampling stalled; set nearly exhausts universe");
    }
  }
}

std::vector<Cell> nonempty_cells(int n, int l, bool positive) {
  std::vector<Cell> cells;
  for (int fs = 0; fs < 2 * n; ++fs)
    for (int gs = 0; gs < 2 * n; ++gs) {
      Letter f = slot_letter(fs), g = slot_letter(gs);
      WordConstraints c;
      c.first = f;
      c.last = g;
      c.positive = positive;
      if ((positive && (f < 0 || g < 0)) || (l == 1 && f != g)) continue;
      if (count_words(n, l, c) > 0) cells.emplace_back(f, g);
    }
  return cells;
}

}  // namespace

SampleReport sample(const ModelSpec& spec) {
  spec.validate();
  SampleReport rep;
  rep.presentation.n = spec.n;
  Rng rng(spec.seed);
  int n = spec.n, l = spec.length;
  std::set<Word> seen;
  auto& words = rep.presentation.relators;

  switch (spec.family) {
    case ModelFamily::density:
    case ModelFamily::k_angular: {
      BigInt m = model_set_size(2 * n - 1, l * spec.d);
      rep.target_by_length[l] = m;
      WordConstraints c;
      c.cyclically_reduced = true;
      draw_distinct(words, seen, to_long(m), n, l, c, rng, rep.collisions);
      break;
    }
    case ModelFamily::theta: {
      BigInt m = 2 * model_set_size(2 * n - 1, l * spec.d);
      rep.target_by_length[l] = m;
      draw_distinct(words, seen, to_long(m), n, l, {}, rng, rep.collisions);
      break;
    }
    case ModelFamily::omega: {
      BigInt m = model_set_size(2 * n - 1, l * spec.d);
      rep.target_by_length[l] = m;
      rep.target_by_length[l + 1] = m;
      draw_distinct(words, seen, to_long(m), n, l, {}, rng, rep.collisions);
      draw_distinct(words, seen, to_long(m), n, l + 1, {}, rng, rep.collisions);
      break;
    }
    case ModelFamily::theta_bar: {
      BigInt target = 2 * model_set_size(2 * n - 1, l * spec.d);
      BigInt quota = target / (4 * n * n);
      rep.target_by_length[l] = target;
      for (const Cell& cell : nonempty_cells(n, l, false)) {
        WordConstraints c;
        c.first = cell.first;
        c.last = cell.second;
        if (quota > count_words(n, l, c))
          throw ModelError("per-cell quota exceeds cell size");
        draw_distinct(words, seen, to_long(quota), n, l, c, rng,
                      rep.collisions);
      }
      break;
    }
    case ModelFamily::omega_bar: {
      BigInt per_len = model_set_size(2 * n - 1, l * spec.d);
      BigInt quota = per_len / (4 * n * n);
      rep.target_by_length[l] = per_len;
      rep.target_by_length[l + 1] = per_len;
      for (int len : {l, l + 1})
        for (const Cell& cell : nonempty_cells(n, len, false)) {
          WordConstraints c;
          c.first = cell.first;
          c.last = cell.second;
          if (quota > count_words(n, len, c))
            throw ModelError("per-cell quota exceeds cell size");
          draw_distinct(words, seen, to_long(quota), n, len, c, rng,
                        rep.collisions);
        }
      break;
    }
    case ModelFamily::k_angular_positive: {
      BigInt m = model_set_size(n, l * spec.d);
      rep.target_by_length[l] = m;
      WordConstraints c;
      c.positive = true;
      draw_distinct(words, seen, to_long(m), n, l, c, rng, rep.collisions);
      break;
    }
  }

  for (const Word& w : words) {
    Cell cell{w.front(), w.back()};
    rep.cell_counts[cell]++;
  }
  return rep;
}

BalancedExtension balanced_extension(const std::vector<Word>& R, int n,
                                     double D, Rng& rng) {
  BalancedExtension ext;
  std::set<int> lengths;
  std::set<Word> seen(R.begin(), R.end());
  for (const Word& w : R) {
    if (w.empty() || !is_reduced(w))
      throw ContractError("balanced_extension: words must be reduced, nonempty");
    lengths.insert(static_cast<int>(w.size()));
  }
  if (lengths.empty()) lengths.insert(2);  // degenerate: pure padding at l=2
  if (lengths.size() > 2)
    throw ContractError("balanced_extension: more than two word lengths");
  int h = *lengths.begin();
  bool two_lengths = lengths.size() == 2;
  if (two_lengths && *lengths.rbegin() != h + 1)
    throw ContractError("balanced_extension: lengths must be adjacent");

  int factor = two_lengths ? 1 : 2;  // Omega-bar vs Theta-bar quotas
  ext.quota = factor * model_set_size(2 * n - 1, h * D) / (4 * n * n);

  ext.extended = R;
  for (int len : lengths) {
    for (const Cell& cell : nonempty_cells(n, len, false)) {
      long have = 0;
      for (const Word& w : R)
        if (static_cast<int>(w.size()) == len && w.front() == cell.first &&
            w.back() == cell.second)
          ++have;
      if (BigInt(have) > ext.quota) {
        ext.feasible = false;
        ext.reason = "cell (" + to_text({cell.first}) + "," +
                     to_text({cell.second}) + ") at length " +
                     std::to_string(len) + " is over quota";
        return ext;
      }
      WordConstraints c;
      c.first = cell.first;
      c.last = cell.second;
      if (ext.quota > count_words(n, len, c)) {
        ext.feasible = false;
        ext.reason = "quota exceeds cell size";
        return ext;
      }
      long need = to_long(ext.quota - have);
      long collisions = 0;
      draw_distinct(ext.extended, seen, need, n, len, c, rng, collisions);
    }
  }
  return ext;
}

}  // namespace relsep
