#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "relsep/errors.hpp"
#include "relsep/pipeline.hpp"
#include "relsep/sampler.hpp"
#include "relsep/smallcancel.hpp"

namespace {

using namespace relsep;

// Exit contract shared with the pipeline: 0 pass, 2 config error,
// 3 uncertified stop, 4 falsification event.
constexpr int kExitConfig = 2;
constexpr int kExitUncertified = 3;
constexpr int kExitFalsified = 4;

std::uint64_t effective_seed(std::uint64_t seed) {
  const char* env = std::getenv("RELSEP_SEED");
  if (!env || !*env) return seed;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (!end || *end != '\0')
    throw ConfigError("RELSEP_SEED must be an unsigned integer");
  return static_cast<std::uint64_t>(value);
}

std::pair<long, long> parse_fraction(const std::string& s) {
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return {std::stol(s), 1};
    return {std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1))};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse fraction: " + s);
  }
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json(out, j);
}

std::unique_ptr<WordProblemOracle> make_oracle(const Presentation& p,
                                               const std::string& kind) {
  if (kind == "exact" || kind == "auto") {
    try {
      return std::make_unique<ExactFixtureOracle>(p);
    } catch (const SpecError& e) {
      if (kind == "exact")
        throw ConfigError(std::string("exact oracle unavailable: ") + e.what());
    }
  }
  if (kind == "dehn" || kind == "auto") return std::make_unique<DehnOracle>(p);
  throw ConfigError("oracle must be exact, dehn, or auto");
}

// Base-graph DOT with non-tree edges annotated by their voltage support.
std::string cover_dot(const CoverBall& cover) {
  std::string dot = "graph cover {\n";
  const CayleyBall& ball = cover.base;
  for (size_t v = 0; v < ball.vertices.size(); ++v) {
    Word name = ball.vertices[v];
    dot += "  v" + std::to_string(v) + " [label=\"" +
           (name.empty() ? "1" : to_text(name)) + "\"];\n";
  }
  for (size_t v = 0; v < ball.vertices.size(); ++v)
    for (int slot = 0; slot < 2 * ball.n; slot += 2) {
      int u = ball.adj[v][slot];
      if (u < 0) continue;
      dot += "  v" + std::to_string(v) + " -- v" + std::to_string(u) +
             " [label=\"" + to_text({slot_letter(slot)});
      const QVec& q = cover.weight(static_cast<int>(v), slot);
      if (!q.zero()) dot += " |q|=" + std::to_string(q.bits.size());
      dot += "\"];\n";
    }
  dot += "}\n";
  return dot;
}

struct WallSetup {
  HalvedPresentation hp;
  std::unique_ptr<WordProblemOracle> oracle;
  CayleyBall ball;
  CoverBall cover;
  std::vector<std::pair<Word, int>> cutsets;
};

WallSetup wall_setup(const Presentation& T, const std::string& oracle_kind,
                     int radius, int translate_radius) {
  WallSetup s;
  s.hp = halve_for_pipeline(T);
  s.oracle = make_oracle(s.hp.kr_presentation(), oracle_kind);
  s.ball = build_ball(s.hp.kr_presentation(), radius, *s.oracle);
  s.cover = build_cover(s.ball, *s.oracle, s.hp);
  for (int pair = 0; pair < s.hp.pairs(); ++pair)
    for (size_t v = 0; v < s.ball.vertices.size(); ++v) {
      if (s.ball.dist[v] > translate_radius) continue;
      try {
        sigma_loop(s.ball, s.hp, pair, HalfRole::first, s.ball.vertices[v]);
        sigma_loop(s.ball, s.hp, pair, HalfRole::second, s.ball.vertices[v]);
      } catch (const RangeError&) {
        continue;
      }
      s.cutsets.emplace_back(s.ball.vertices[v], pair);
    }
  if (s.cutsets.empty())
    throw RangeError("no cutset loop fits inside the ball");
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"relator-separation toolkit"};
  app.require_subcommand(1);

  // --- sample ---
  auto* sample_cmd = app.add_subcommand("sample", "draw a random presentation");
  std::string sample_model = "density", sample_out, sample_report;
  ModelSpec spec;
  sample_cmd->add_option("--model", sample_model, "model family");
  sample_cmd->add_option("--n", spec.n, "alphabet size");
  sample_cmd->add_option("--len", spec.length, "relator length (k for angular)");
  sample_cmd->add_option("--d", spec.d, "density");
  sample_cmd->add_option("--seed", spec.seed, "RNG seed");
  sample_cmd->add_option("--out", sample_out, "presentation JSON path");
  sample_cmd->add_option("--report", sample_report, "sampling report path");

  // --- halve ---
  auto* halve_cmd = app.add_subcommand("halve", "split relators into halves");
  std::string halve_in, halve_out;
  halve_cmd->add_option("presentation", halve_in)->required();
  halve_cmd->add_option("--out", halve_out, "halved presentation JSON path");

  // --- check-sc ---
  auto* sc_cmd = app.add_subcommand("check-sc", "C'(lambda) metric check");
  std::string sc_in, sc_lambda = "1/6", sc_out;
  sc_cmd->add_option("presentation", sc_in)->required();
  sc_cmd->add_option("--lambda", sc_lambda, "threshold as num/den");
  sc_cmd->add_option("--out", sc_out, "report path");

  // --- aspherical-checks ---
  auto* asp_cmd =
      app.add_subcommand("aspherical-checks", "necessary asphericity checks");
  std::string asp_in, asp_out;
  asp_cmd->add_option("presentation", asp_in)->required();
  asp_cmd->add_option("--out", asp_out, "report path");

  // --- ball ---
  auto* ball_cmd = app.add_subcommand("ball", "Cayley ball of a presentation");
  std::string ball_in, ball_oracle = "auto", ball_out, ball_dot;
  int ball_radius = 3;
  ball_cmd->add_option("presentation", ball_in)->required();
  ball_cmd->add_option("--radius", ball_radius, "ball radius");
  ball_cmd->add_option("--oracle", ball_oracle, "exact | dehn | auto");
  ball_cmd->add_option("--out", ball_out, "ball JSON path");
  ball_cmd->add_option("--dot", ball_dot, "ball DOT path");

  // --- cover ---
  auto* cover_cmd =
      app.add_subcommand("cover", "double cover voltages over the half group");
  std::string cover_in, cover_oracle = "auto", cover_out, cover_dot_path;
  int cover_radius = 4;
  cover_cmd->add_option("presentation", cover_in)->required();
  cover_cmd->add_option("--radius", cover_radius, "ball radius");
  cover_cmd->add_option("--oracle", cover_oracle, "exact | dehn | auto");
  cover_cmd->add_option("--out", cover_out, "cover JSON path");
  cover_cmd->add_option("--dot", cover_dot_path, "annotated DOT path");

  // --- walls ---
  auto* walls_cmd = app.add_subcommand("walls", "cutsets and wall partitions");
  std::string walls_in, walls_oracle = "auto", walls_out;
  int walls_radius = 4, walls_inner = 2, walls_margin = 1, walls_translate = 1;
  long walls_budget = 4000;
  walls_cmd->add_option("presentation", walls_in)->required();
  walls_cmd->add_option("--radius", walls_radius, "ball radius");
  walls_cmd->add_option("--inner", walls_inner, "inner region radius");
  walls_cmd->add_option("--margin", walls_margin, "finiteness margin");
  walls_cmd->add_option("--translate-radius", walls_translate,
                        "cutset translate distance");
  walls_cmd->add_option("--budget", walls_budget, "exploration budget");
  walls_cmd->add_option("--oracle", walls_oracle, "exact | dehn | auto");
  walls_cmd->add_option("--out", walls_out, "wall report path");

  // --- cubulate ---
  auto* cub_cmd = app.add_subcommand("cubulate", "dual cube complex");
  std::string cub_in, cub_oracle = "auto", cub_out;
  int cub_radius = 4, cub_inner = 2, cub_margin = 1, cub_max_dim = 4;
  long cub_budget = 4000, cub_complex_budget = 100000;
  cub_cmd->add_option("presentation", cub_in)->required();
  cub_cmd->add_option("--radius", cub_radius, "ball radius");
  cub_cmd->add_option("--inner", cub_inner, "inner region radius");
  cub_cmd->add_option("--margin", cub_margin, "finiteness margin");
  cub_cmd->add_option("--max-dim", cub_max_dim, "top cube dimension");
  cub_cmd->add_option("--budget", cub_budget, "exploration budget");
  cub_cmd->add_option("--complex-budget", cub_complex_budget, "vertex budget");
  cub_cmd->add_option("--oracle", cub_oracle, "exact | dehn | auto");
  cub_cmd->add_option("--out", cub_out, "complex JSON path");

  // --- verify ---
  auto* verify_cmd =
      app.add_subcommand("verify", "median + distance audit on the dual");
  std::string verify_in, verify_oracle = "auto", verify_out;
  int verify_radius = 4, verify_inner = 2, verify_margin = 1;
  long verify_budget = 4000;
  verify_cmd->add_option("presentation", verify_in)->required();
  verify_cmd->add_option("--radius", verify_radius, "ball radius");
  verify_cmd->add_option("--inner", verify_inner, "inner region radius");
  verify_cmd->add_option("--margin", verify_margin, "finiteness margin");
  verify_cmd->add_option("--budget", verify_budget, "exploration budget");
  verify_cmd->add_option("--oracle", verify_oracle, "exact | dehn | auto");
  verify_cmd->add_option("--out", verify_out, "audit report path");

  // --- stats ---
  auto* stats_cmd = app.add_subcommand("stats", "Monte Carlo property suites");
  std::string stats_suite = "concentration", stats_model = "theta", stats_out;
  std::string stats_lambda = "1/6";
  ModelSpec stats_spec;
  stats_spec.family = ModelFamily::theta;
  stats_spec.n = 3;
  stats_spec.length = 8;
  stats_spec.d = 0.1;
  double stats_c = 3.0;
  int stats_trials = 200;
  std::uint64_t stats_seed = 0;
  stats_cmd->add_option("--suite", stats_suite,
                        "concentration | sc-frequency");
  stats_cmd->add_option("--model", stats_model, "model family");
  stats_cmd->add_option("--n", stats_spec.n, "alphabet size");
  stats_cmd->add_option("--len", stats_spec.length, "relator length");
  stats_cmd->add_option("--d", stats_spec.d, "density");
  stats_cmd->add_option("--c", stats_c, "Chebyshev multiplier");
  stats_cmd->add_option("--lambda", stats_lambda, "C' threshold as num/den");
  stats_cmd->add_option("--trials", stats_trials, "trial count");
  stats_cmd->add_option("--seed", stats_seed, "master seed");
  stats_cmd->add_option("--out", stats_out, "report path");

  // --- pipeline ---
  auto* pipe_cmd = app.add_subcommand("pipeline", "full end-to-end run");
  std::string pipe_config, pipe_out_dir;
  pipe_cmd->add_option("config", pipe_config, "pipeline config JSON")
      ->required();
  pipe_cmd->add_option("--out-dir", pipe_out_dir, "artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);  // prints the usage/help text
    return rc == 0 ? 0 : kExitConfig;
  }

  if (*sample_cmd) {
    spec.family = model_family_from_string(sample_model);
    spec.seed = effective_seed(spec.seed);
    SampleReport rep = sample(spec);
    Json report;
    report["model"] = {{"family", to_string(spec.family)},
                       {"n", spec.n},
                       {"length", spec.length},
                       {"d", spec.d},
                       {"seed", spec.seed}};
    report["collisions"] = rep.collisions;
    report["cell_counts"] = Json::array();
    for (const auto& [cell, count] : rep.cell_counts)
      report["cell_counts"].push_back(
          {{"first", to_text({cell.first})},
           {"last", to_text({cell.second})},
           {"count", count}});
    report["target_by_length"] = Json::object();
    for (const auto& [length, target] : rep.target_by_length)
      report["target_by_length"][std::to_string(length)] = target.str();
    report["presentation"] = to_json(rep.presentation);
    if (!sample_out.empty()) write_json(sample_out, to_json(rep.presentation));
    emit(report, sample_report);
    return 0;
  }

  if (*halve_cmd) {
    Presentation p = presentation_from_json(read_json(halve_in));
    emit(to_json(halve(p)), halve_out);
    return 0;
  }

  if (*sc_cmd) {
    Presentation p = presentation_from_json(read_json(sc_in));
    auto [num, den] = parse_fraction(sc_lambda);
    PieceReport piece = max_piece_length(p);
    Json report;
    report["lambda"] = {{"num", num}, {"den", den}};
    report["holds"] = check_metric(p, num, den);
    report["max_piece_length"] = piece.max_piece_length;
    report["min_relator_length"] = piece.min_relator_length;
    report["lambda_star"] = {{"num", piece.lambda_num},
                             {"den", piece.lambda_den}};
    emit(report, sc_out);
    return 0;
  }

  if (*asp_cmd) {
    Presentation p = presentation_from_json(read_json(asp_in));
    AsphericityReport rep = asphericity_checks(p);
    Json report;
    report["ok"] = rep.ok();
    report["violations"] = Json::array();
    for (const AsphericityViolation& v : rep.violations)
      report["violations"].push_back({{"kind", v.kind}, {"detail", v.detail}});
    emit(report, asp_out);
    return 0;
  }

  if (*ball_cmd) {
    Presentation p = presentation_from_json(read_json(ball_in));
    auto oracle = make_oracle(p, ball_oracle);
    CayleyBall ball = build_ball(p, ball_radius, *oracle);
    if (!ball_dot.empty()) {
      std::ofstream out(ball_dot, std::ios::binary);
      if (!out) throw ConfigError("cannot open for writing: " + ball_dot);
      out << ball.to_dot();
    }
    emit(to_json(ball), ball_out);
    return 0;
  }

  if (*cover_cmd) {
    Presentation T = presentation_from_json(read_json(cover_in));
    HalvedPresentation hp = halve_for_pipeline(T);
    auto oracle = make_oracle(hp.kr_presentation(), cover_oracle);
    CayleyBall ball = build_ball(hp.kr_presentation(), cover_radius, *oracle);
    CoverBall cover = build_cover(ball, *oracle, hp);
    if (!cover_dot_path.empty()) {
      std::ofstream out(cover_dot_path, std::ios::binary);
      if (!out)
        throw ConfigError("cannot open for writing: " + cover_dot_path);
      out << cover_dot(cover);
    }
    emit(to_json(cover), cover_out);
    return 0;
  }

  if (*walls_cmd) {
    Presentation T = presentation_from_json(read_json(walls_in));
    WallSetup s = wall_setup(T, walls_oracle, walls_radius, walls_translate);
    WallSpace ws = enumerate_walls(s.cover, s.cutsets, *s.oracle, walls_margin,
                                   walls_inner, walls_budget);
    emit(wall_report(ws, s.ball), walls_out);
    return 0;
  }

  if (*cub_cmd || *verify_cmd) {
    bool verifying = static_cast<bool>(*verify_cmd);
    Presentation T = presentation_from_json(
        read_json(verifying ? verify_in : cub_in));
    WallSetup s = wall_setup(T, verifying ? verify_oracle : cub_oracle,
                             verifying ? verify_radius : cub_radius, 0);
    WallSpace ws = enumerate_walls(
        s.cover, s.cutsets, *s.oracle, verifying ? verify_margin : cub_margin,
        verifying ? verify_inner : cub_inner,
        verifying ? verify_budget : cub_budget);
    // the identity-translate cutset of the first pair carries the complex
    WallSpace sub;
    sub.analyses.push_back(ws.analyses[0]);
    for (const Wall& w : ws.walls)
      if (w.cutset == 0) {
        Wall copy = w;
        copy.cutset = 0;
        sub.walls.push_back(copy);
      }
    const std::vector<CoverVertex>& seeds = sub.analyses[0].sample;
    DualComplex complex = build_dual(sub, seeds, cub_max_dim,
                                     verifying ? 100000 : cub_complex_budget);
    if (!verifying) {
      emit(to_json(complex), cub_out);
      return 0;
    }
    bool median = is_median(complex.adj);
    std::vector<std::pair<CoverVertex, CoverVertex>> pairs;
    size_t cap = std::min<size_t>(seeds.size(), 40);
    for (size_t i = 0; i < cap; ++i)
      for (size_t j = i + 1; j < cap; ++j)
        pairs.emplace_back(seeds[i], seeds[j]);
    DistanceReport dist = verify_distance(complex, sub, pairs);
    Json report;
    report["median"] = median;
    report["distance_pairs"] = dist.entries.size();
    report["distance_all_ok"] = dist.all_ok;
    report["ok"] = median && dist.all_ok;
    emit(report, verify_out);
    return median && dist.all_ok ? 0 : kExitFalsified;
  }

  if (*stats_cmd) {
    stats_spec.family = model_family_from_string(stats_model);
    stats_seed = effective_seed(stats_seed);
    TrialReport report;
    if (stats_suite == "concentration") {
      report = concentration_trial(stats_spec, stats_c, stats_trials,
                                   stats_seed);
    } else if (stats_suite == "sc-frequency") {
      auto [num, den] = parse_fraction(stats_lambda);
      report = sc_frequency_trial(stats_spec, num, den, stats_trials,
                                  stats_seed);
    } else {
      throw ConfigError("suite must be concentration or sc-frequency");
    }
    emit(to_json(report), stats_out);
    return report.ok ? 0 : kExitFalsified;
  }

  if (*pipe_cmd) {
    PipelineConfig cfg = pipeline_config_from_json(read_json(pipe_config));
    if (!pipe_out_dir.empty()) cfg.out_dir = pipe_out_dir;
    apply_env_seed(cfg);
    PipelineResult result = run_pipeline(cfg);
    std::cout << result.report.dump(2) << '\n';
    return result.exit_code;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const relsep::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const relsep::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUncertified;
  }
}
