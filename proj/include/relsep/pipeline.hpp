#pragma once

#include <optional>

#include "relsep/json_io.hpp"

namespace relsep {

struct PipelineConfig {
  std::optional<ModelSpec> model;          // sample the input presentation
  std::optional<Presentation> presentation;  // or take it verbatim
  int ball_radius = 4;
  int inner_radius = 2;
  int margin = 1;
  int translate_radius = 1;  // cutset translates within this ball distance
  int witness_n = 0;         // growth witness size; 0 skips the witness
  std::string oracle = "auto";  // exact | dehn | auto
  int wall_cap = 6;             // full partitions up to this many labels
  int max_dim = 4;
  long budget = 4000;           // per-seed cover exploration budget
  long complex_budget = 100000;
  std::string out_dir;  // empty: no artifact files
  std::uint64_t seed = 0;

  void validate() const;  // ConfigError
};

PipelineConfig pipeline_config_from_json(const Json& j);

// Halving policy for arbitrary input: split each relator at the position
// nearest the middle that leaves both halves cyclically reduced (the Dehn
// machinery over the half group needs that). HalvingError when a relator
// admits no such split.
HalvedPresentation halve_for_pipeline(const Presentation& T);

// Applies the RELSEP_SEED environment override, when set.
void apply_env_seed(PipelineConfig& cfg);

// Exit codes: 0 pass, 2 config error, 3 uncertified stop (the run reached
// wall enumeration without a full certificate chain), 4 falsification event
// (a theorem-backed invariant failed on a certified run).
struct PipelineResult {
  int exit_code = 0;
  std::string status;  // pass | config-error | uncertified-stop | falsification
  std::string reached;  // last completed stage
  std::vector<std::string> warnings;
  Json report;
};

PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace relsep
