#pragma once

#include "relsep/sampler.hpp"

namespace relsep {

using BigRational = boost::multiprecision::cpp_rational;

struct Moments {
  BigRational mu;
  BigRational sigma2;
};

// Exact hypergeometric moments of the number of words from a uniform
// m-subset of the reduced-word universe (n, l) landing in the (first, last)
// cell: mu = mK/N, sigma^2 = m(K/N)(1-K/N)(N-m)/(N-1). ContractError when
// m > N or the cell is empty.
Moments exact_moments(int n, int l, const BigInt& m, const Cell& cell,
                      bool cyclically_reduced = false);

// 95% Wilson score interval for `passes` successes in `trials`.
std::pair<double, double> wilson_interval(long passes, long trials);

struct PredicateStat {
  long passes = 0;
  double frequency = 0.0;
  double wilson_low = 0.0, wilson_high = 0.0;
};

struct TrialReport {
  ModelSpec model;
  int trials = 0;
  std::uint64_t master_seed = 0;
  std::map<std::string, PredicateStat> predicates;
  std::map<std::string, double> bounds;  // reference values for the verdict
  bool ok = true;
};

// Chebyshev audit of the cell count X_{a,b} across `trials` independent
// presentations: the frequency of {|X - mu| >= c sigma} must stay within
// 1/c^2 plus three Wilson half-widths (a theorem-backed finite-size bound).
// The looser tail event {|X - mu| > (2n-1)^{3ld/4}} is reported alongside.
// Only single-length uniform-subset models qualify (density, theta,
// k-angular); ConfigError otherwise.
TrialReport concentration_trial(const ModelSpec& model, double c, int trials,
                                std::uint64_t seed);

// Frequency of the C'(num/den) metric condition across sampled
// presentations. Report only: asymptotic "overwhelming probability" claims
// are demoted to frequencies with confidence intervals.
TrialReport sc_frequency_trial(const ModelSpec& model, long num, long den,
                               int trials, std::uint64_t seed);

}  // namespace relsep
