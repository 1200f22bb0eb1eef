#include "relsep/stats.hpp"

#include <cmath>

#include "relsep/errors.hpp"
#include "relsep/smallcancel.hpp"

namespace relsep {

Moments exact_moments(int n, int l, const BigInt& m, const Cell& cell,
                      bool cyclically_reduced) {
  WordConstraints universe;
  universe.cyclically_reduced = cyclically_reduced;
  WordConstraints in_cell = universe;
  in_cell.first = cell.first;
  in_cell.last = cell.second;
  BigInt N = count_words(n, l, universe);
  BigInt K = count_words(n, l, in_cell);
  if (K == 0) throw ContractError("cell is empty");
  if (m > N) throw ContractError("subset larger than the word universe");
  if (m < 0) throw ContractError("negative subset size");
  Moments out;
  if (m == 0) return out;
  out.mu = BigRational(m * K, N);
  if (N > 1)
    out.sigma2 = BigRational(m * K, N) * BigRational(N - K, N) *
                 BigRational(N - m, N - 1);
  return out;
}

std::pair<double, double> wilson_interval(long passes, long trials) {
  if (trials <= 0) throw ContractError("Wilson interval needs trials > 0");
  if (passes < 0 || passes > trials)
    throw ContractError("pass count outside [0, trials]");
  const double z = 1.959963984540054;  // 97.5% normal quantile
  double nt = static_cast<double>(trials);
  double p = static_cast<double>(passes) / nt;
  double denom = 1.0 + z * z / nt;
  double center = (p + z * z / (2.0 * nt)) / denom;
  double half =
      z * std::sqrt(p * (1.0 - p) / nt + z * z / (4.0 * nt * nt)) / denom;
  double lo = passes == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = passes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace {

PredicateStat stat_of(long passes, int trials) {
  PredicateStat s;
  s.passes = passes;
  s.frequency = static_cast<double>(passes) / trials;
  std::tie(s.wilson_low, s.wilson_high) = wilson_interval(passes, trials);
  return s;
}

}  // namespace

TrialReport concentration_trial(const ModelSpec& model, double c, int trials,
                                std::uint64_t seed) {
  model.validate();
  if (!(c > 0)) throw ContractError("Chebyshev multiplier must be positive");
  if (trials <= 0) throw ContractError("trials must be positive");
  bool cyclically_reduced;
  switch (model.family) {
    case ModelFamily::density:
    case ModelFamily::k_angular:
      cyclically_reduced = true;
      break;
    case ModelFamily::theta:
      cyclically_reduced = false;
      break;
    default:  // two lengths, fixed quotas, or no (a, b) cell to audit
      throw ConfigError(
          "concentration trial needs a single-length uniform model");
  }

  TrialReport report;
  report.model = model;
  report.trials = trials;
  report.master_seed = seed;

  const Cell cell{slot_letter(0), slot_letter(2)};  // (a, b)
  Moments mom;  // same subset size every trial: compute from the first draw
  BigInt subset_size = -1;
  BigRational c2 = BigRational(c) * BigRational(c);
  BigInt tail_bound =
      model_set_size(2 * model.n - 1, 0.75 * model.length * model.d);

  long deviations = 0, tail_deviations = 0;
  for (int t = 0; t < trials; ++t) {
    ModelSpec trial_spec = model;
    trial_spec.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    SampleReport rep = sample(trial_spec);
    BigInt m = rep.target_by_length.at(model.length);
    if (subset_size < 0) {
      subset_size = m;
      mom = exact_moments(model.n, model.length, m, cell, cyclically_reduced);
    }
    auto it = rep.cell_counts.find(cell);
    long X = it == rep.cell_counts.end() ? 0 : it->second;
    BigRational diff = BigRational(X) - mom.mu;
    if (diff * diff >= c2 * mom.sigma2) ++deviations;
    BigRational tail(tail_bound);
    if (diff > tail || -diff > tail) ++tail_deviations;
  }

  report.predicates["chebyshev_deviation"] = stat_of(deviations, trials);
  report.predicates["tail_bound_deviation"] =
      stat_of(tail_deviations, trials);
  const PredicateStat& dev = report.predicates["chebyshev_deviation"];
  double bound = 1.0 / (c * c);
  double half = (dev.wilson_high - dev.wilson_low) / 2.0;
  report.bounds["chebyshev"] = bound;
  report.bounds["allowed"] = bound + 3.0 * half;
  report.ok = dev.frequency <= report.bounds["allowed"];
  return report;
}

TrialReport sc_frequency_trial(const ModelSpec& model, long num, long den,
                               int trials, std::uint64_t seed) {
  model.validate();
  if (num <= 0 || den <= 0)
    throw ContractError("metric fraction must be positive");
  if (trials <= 0) throw ContractError("trials must be positive");
  TrialReport report;
  report.model = model;
  report.trials = trials;
  report.master_seed = seed;
  long passes = 0;
  for (int t = 0; t < trials; ++t) {
    ModelSpec trial_spec = model;
    trial_spec.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    SampleReport rep = sample(trial_spec);
    if (check_metric(rep.presentation, num, den)) ++passes;
  }
  report.predicates["small_cancellation"] = stat_of(passes, trials);
  report.bounds["lambda"] =
      static_cast<double>(num) / static_cast<double>(den);
  return report;
}

}  // namespace relsep
