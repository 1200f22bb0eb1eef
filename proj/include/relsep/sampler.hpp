#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relsep/counting.hpp"
#include "relsep/presentation.hpp"

namespace relsep {

enum class ModelFamily {
  density,
  theta,
  omega,
  theta_bar,
  omega_bar,
  k_angular,
  k_angular_positive,
};

ModelFamily model_family_from_string(const std::string& s);
std::string to_string(ModelFamily f);

struct ModelSpec {
  ModelFamily family = ModelFamily::density;
  int n = 2;
  int length = 2;  // l, or k for the angular models
  double d = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
};

using Cell = std::pair<Letter, Letter>;  // (first, last)

struct SampleReport {
  Presentation presentation;
  std::map<Cell, int> cell_counts;           // X_{t,t'} per (length-merged) cell
  std::map<int, BigInt> target_by_length;    // words requested per length
  long collisions = 0;                       // duplicate draws rejected
};

// Floor((2n-1)^(l d)) etc.; fractional set sizes always round down.
BigInt model_set_size(int base, double exponent);

SampleReport sample(const ModelSpec& spec);

// Stable per-trial seed derivation (master seed + trial index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct BalancedExtension {
  bool feasible = true;
  std::string reason;
  std::vector<Word> extended;  // R' >= R, exactly quota words per cell
  BigInt quota = 0;            // per cell, per length class
};

// Pads the half set R to uniform per-cell counts at density D = 2d + delta.
// Single relator length -> Theta-bar quotas; two adjacent lengths ->
// Omega-bar quotas. Over-quota cells yield feasible = false (reported, not
// thrown).
BalancedExtension balanced_extension(const std::vector<Word>& R, int n,
                                     double D, Rng& rng);

}  // namespace relsep
