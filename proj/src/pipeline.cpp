#include "relsep/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "relsep/errors.hpp"
#include "relsep/sampler.hpp"
#include "relsep/smallcancel.hpp"

namespace relsep {

void PipelineConfig::validate() const {
  if (model.has_value() == presentation.has_value())
    throw ConfigError("exactly one of model / presentation must be given");
  if (model) model->validate();
  if (presentation) presentation->validate();
  if (ball_radius < 1) throw ConfigError("ball_radius must be >= 1");
  if (inner_radius < 1) throw ConfigError("inner_radius must be >= 1");
  if (margin < 0) throw ConfigError("margin must be >= 0");
  if (inner_radius + margin > ball_radius)
    throw ConfigError("inner_radius + margin must not exceed ball_radius");
  if (translate_radius < 0 || translate_radius > ball_radius)
    throw ConfigError("translate_radius must lie in [0, ball_radius]");
  if (witness_n < 0) throw ConfigError("witness_n must be >= 0");
  if (oracle != "exact" && oracle != "dehn" && oracle != "auto")
    throw ConfigError("oracle must be exact, dehn, or auto");
  if (wall_cap != 6)
    throw ConfigError("wall_cap is fixed at 6 in this build");
  if (max_dim < 1 || max_dim > 6)
    throw ConfigError("max_dim must lie in [1, 6]");
  if (budget <= 0 || complex_budget <= 0)
    throw ConfigError("budgets must be positive");
}

namespace {

// Dehn-first word problem with a budgeted search fallback: the greedy Dehn
// trivializer can get stuck on short trivial words of a non-C'(1/6) half
// group even when the key closure certifies equality.
class FallbackOracle : public WordProblemOracle {
 public:
  explicit FallbackOracle(Presentation p)
      : dehn_(p), search_(p), p_(std::move(p)) {}

  Answer answer(const Word& w) const override {
    Answer a = dehn_.answer(w);
    return a == Answer::unknown ? search_.answer(w) : a;
  }
  std::optional<Decomposition> trivialize(const Word& w) const override {
    if (auto d = dehn_.trivialize(w)) return d;
    return search_.trivialize(w);
  }
  std::optional<Word> key(const Word& w) const override {
    return dehn_.key(w);
  }
  const Presentation& presentation() const override { return p_; }
  bool certified() const { return dehn_.certified(); }

 private:
  DehnOracle dehn_;
  BoundedSearchOracle search_;
  Presentation p_;
};

void check_keys(const Json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw ConfigError("unknown key in " + where + ": " + key);
}

Json config_json(const PipelineConfig& cfg) {
  Json j;
  if (cfg.model)
    j["model"] = {{"family", to_string(cfg.model->family)},
                  {"n", cfg.model->n},
                  {"length", cfg.model->length},
                  {"d", cfg.model->d}};
  if (cfg.presentation) j["presentation"] = to_json(*cfg.presentation);
  j["ball_radius"] = cfg.ball_radius;
  j["inner_radius"] = cfg.inner_radius;
  j["margin"] = cfg.margin;
  j["translate_radius"] = cfg.translate_radius;
  j["witness_n"] = cfg.witness_n;
  j["oracle"] = cfg.oracle;
  j["wall_cap"] = cfg.wall_cap;
  j["max_dim"] = cfg.max_dim;
  j["budget"] = cfg.budget;
  j["complex_budget"] = cfg.complex_budget;
  j["out_dir"] = cfg.out_dir;
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace

PipelineConfig pipeline_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("pipeline config must be an object");
  check_keys(j, {"model", "presentation", "presentation_file", "ball_radius",
                 "inner_radius", "margin", "translate_radius", "witness_n",
                 "oracle", "wall_cap", "max_dim", "budget", "complex_budget",
                 "out_dir", "seed"},
             "pipeline config");
  PipelineConfig cfg;
  try {
    if (j.contains("model")) {
      const Json& m = j.at("model");
      check_keys(m, {"family", "n", "length", "d"}, "model");
      ModelSpec spec;
      spec.family = model_family_from_string(m.at("family").get<std::string>());
      spec.n = m.at("n").get<int>();
      spec.length = m.at("length").get<int>();
      spec.d = m.at("d").get<double>();
      cfg.model = spec;
    }
    if (j.contains("presentation"))
      cfg.presentation = presentation_from_json(j.at("presentation"));
    if (j.contains("presentation_file"))
      cfg.presentation = presentation_from_json(
          read_json(j.at("presentation_file").get<std::string>()));
    if (j.contains("ball_radius")) cfg.ball_radius = j.at("ball_radius").get<int>();
    if (j.contains("inner_radius"))
      cfg.inner_radius = j.at("inner_radius").get<int>();
    if (j.contains("margin")) cfg.margin = j.at("margin").get<int>();
    if (j.contains("translate_radius"))
      cfg.translate_radius = j.at("translate_radius").get<int>();
    if (j.contains("witness_n")) cfg.witness_n = j.at("witness_n").get<int>();
    if (j.contains("oracle")) cfg.oracle = j.at("oracle").get<std::string>();
    if (j.contains("wall_cap")) cfg.wall_cap = j.at("wall_cap").get<int>();
    if (j.contains("max_dim")) cfg.max_dim = j.at("max_dim").get<int>();
    if (j.contains("budget")) cfg.budget = j.at("budget").get<long>();
    if (j.contains("complex_budget"))
      cfg.complex_budget = j.at("complex_budget").get<long>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed pipeline config: ") + e.what());
  }
  return cfg;
}

HalvedPresentation halve_for_pipeline(const Presentation& T) {
  std::vector<int> splits;
  for (const Word& t : T.relators) {
    int len = static_cast<int>(t.size());
    int mid = len / 2;
    int chosen = -1;
    for (int offset = 0; offset < len && chosen < 0; ++offset)
      for (int p : {mid + offset, mid - offset}) {
        if (p < 1 || p > len - 1) continue;
        bool first_ok = t[0] != inverse(t[p - 1]);
        bool second_ok = t[p] != inverse(t[len - 1]);
        if (first_ok && second_ok) {
          chosen = p;
          break;
        }
      }
    if (chosen < 0)
      throw HalvingError("no split of " + to_text(t) +
                         " leaves both halves cyclically reduced");
    splits.push_back(chosen);
  }
  return halve(T, splits);
}

void apply_env_seed(PipelineConfig& cfg) {
  const char* env = std::getenv("RELSEP_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (!end || *end != '\0')
    throw ConfigError("RELSEP_SEED must be an unsigned integer");
  cfg.seed = static_cast<std::uint64_t>(value);
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  PipelineResult res;
  Json& rep = res.report;
  rep["config"] = config_json(cfg);
  std::vector<std::pair<std::string, Json>> files;
  std::string ball_dot;

  auto finish = [&](int code, const std::string& status) {
    res.exit_code = code;
    res.status = status;
    rep["status"] = status;
    rep["exit_code"] = code;
    rep["reached"] = res.reached;
    rep["warnings"] = res.warnings;
    if (!cfg.out_dir.empty()) {
      try {
        std::filesystem::path dir(cfg.out_dir);
        std::filesystem::create_directories(dir);
        for (const auto& [name, j] : files) write_json(dir / name, j);
        if (!ball_dot.empty()) {
          std::ofstream out(dir / "ball.dot", std::ios::binary);
          out << ball_dot;
        }
        write_json(dir / "report.json", rep);
      } catch (const Error& e) {
        res.warnings.emplace_back(std::string("artifacts: ") + e.what());
      }
    }
    return res;
  };

  try {
    cfg.validate();
  } catch (const Error& e) {
    res.warnings.emplace_back(e.what());
    return finish(2, "config-error");
  }

  std::string stage = "sample";
  try {
    // --- input presentation ---
    Presentation T;
    if (cfg.model) {
      ModelSpec spec = *cfg.model;
      spec.seed = cfg.seed;
      SampleReport sampled = sample(spec);
      T = sampled.presentation;
      rep["input"] = {{"source", "model"}, {"collisions", sampled.collisions}};
    } else {
      T = *cfg.presentation;
      rep["input"] = {{"source", "presentation"}};
    }
    rep["presentation"] = to_json(T);
    files.emplace_back("presentation.json", to_json(T));
    res.reached = stage;

    // --- halving ---
    stage = "halve";
    HalvedPresentation hp = halve_for_pipeline(T);
    files.emplace_back("halved.json", to_json(hp));
    res.reached = stage;

    // --- certificates ---
    stage = "certify";
    PieceReport piece = max_piece_length(T);
    bool sc = check_metric(T, 1, 6);
    AsphericityReport asp = asphericity_checks(T);
    Json cert;
    cert["max_piece_length"] = piece.max_piece_length;
    cert["min_relator_length"] = piece.min_relator_length;
    cert["lambda_star"] = {{"num", piece.lambda_num}, {"den", piece.lambda_den}};
    cert["c_prime_1_6"] = sc;
    cert["aspherical_ok"] = asp.ok();
    cert["aspherical_violations"] = Json::array();
    for (const AsphericityViolation& v : asp.violations)
      cert["aspherical_violations"].push_back(
          {{"kind", v.kind}, {"detail", v.detail}});

    std::unique_ptr<WordProblemOracle> oracle;
    std::string oracle_kind;
    bool oracle_certified = false;
    Presentation kr = hp.kr_presentation();
    if (cfg.oracle == "exact" || cfg.oracle == "auto") {
      try {
        oracle = std::make_unique<ExactFixtureOracle>(kr);
        oracle_kind = "exact";
        oracle_certified = true;
      } catch (const SpecError& e) {
        if (cfg.oracle == "exact")
          throw ConfigError(std::string("exact oracle unavailable: ") +
                            e.what());
      }
    }
    if (!oracle) {
      auto dehn = std::make_unique<FallbackOracle>(kr);
      oracle_kind = "dehn";
      oracle_certified = dehn->certified();
      oracle = std::move(dehn);
    }
    cert["oracle"] = {{"kind", oracle_kind}, {"certified", oracle_certified}};
    bool certified_run = sc && asp.ok() && oracle_certified;
    cert["certified_run"] = certified_run;
    rep["certificates"] = cert;
    files.emplace_back("certificates.json", cert);
    res.reached = stage;

    // --- ball and cover ---
    stage = "ball";
    CayleyBall ball = build_ball(kr, cfg.ball_radius, *oracle);
    rep["ball"] = {{"radius", ball.radius},
                   {"vertices", ball.vertices.size()},
                   {"directed_edges", ball.directed_edges()}};
    files.emplace_back("ball.json", to_json(ball));
    ball_dot = ball.to_dot();
    res.reached = stage;

    stage = "cover";
    CoverBall cover = build_cover(ball, *oracle, hp);
    long voltage_edges = 0;
    for (const auto& [edge, q] : cover.weights)
      if (!q.zero()) ++voltage_edges;
    rep["cover"] = {{"voltage_edges", voltage_edges}};
    files.emplace_back("cover.json", to_json(cover));
    res.reached = stage;

    // --- cutset selection and wall enumeration ---
    stage = "walls";
    auto loops_fit = [&](const Word& k, int pair) {
      try {
        sigma_loop(ball, hp, pair, HalfRole::first, k);
        sigma_loop(ball, hp, pair, HalfRole::second, k);
        return true;
      } catch (const RangeError&) {
        return false;
      }
    };
    std::vector<std::pair<Word, int>> cut_list;
    std::set<std::pair<Word, int>> cut_seen;
    auto add_cutset = [&](const Word& k, int pair) {
      if (!loops_fit(k, pair)) return false;
      if (cut_seen.insert({k, pair}).second) cut_list.emplace_back(k, pair);
      return true;
    };
    for (int pair = 0; pair < hp.pairs(); ++pair)
      for (size_t v = 0; v < ball.vertices.size(); ++v)
        if (ball.dist[v] <= cfg.translate_radius)
          add_cutset(ball.vertices[v], pair);
    // the growth-witness ray: even translates of the first generator
    for (int i = 0; i < cfg.witness_n; ++i) {
      Word g(2 * static_cast<size_t>(i), slot_letter(0));
      Word k;
      try {
        k = canonical_form(g, *oracle, ball.radius);
      } catch (const Error& e) {
        res.warnings.emplace_back(std::string("witness ray translate ") +
                                  to_text(g) + " left the ball: " + e.what());
        break;
      }
      if (!add_cutset(k, 0)) {
        res.warnings.emplace_back("witness ray loops at " + to_text(k) +
                                  " leave the ball");
        break;
      }
    }
    if (cut_list.empty())
      throw RangeError("no cutset loop fits inside the ball");

    WallSpace ws =
        enumerate_walls(cover, cut_list, *oracle, cfg.margin,
                        cfg.inner_radius, cfg.budget);
    int separating = 0, finite_certified = 0;
    for (const ComponentAnalysis& an : ws.analyses) {
      if (an.separating) ++separating;
      if (an.cutset.finite_certified) ++finite_certified;
    }
    rep["walls"] = {{"cutsets", ws.analyses.size()},
                    {"walls", ws.walls.size()},
                    {"separating_cutsets", separating},
                    {"finite_certified_cutsets", finite_certified},
                    {"max_transverse_family", ws.max_transverse_family},
                    {"capped", ws.capped}};
    files.emplace_back("walls.json", wall_report(ws, ball));
    res.reached = stage;

    if (!certified_run) {
      res.warnings.emplace_back(
          "certificate chain incomplete: wall data is reported but the "
          "separation claims are not certified");
      return finish(3, "uncertified-stop");
    }

    // --- falsification gates on the certified wall data ---
    stage = "verify-walls";
    for (size_t i = 0; i < ws.analyses.size(); ++i) {
      const ComponentAnalysis& an = ws.analyses[i];
      if (!an.consistent) {
        rep["falsification"] = "cutset " + std::to_string(i) +
                               ": component merge across the certified "
                               "self-key parity";
        return finish(4, "falsification");
      }
      if (!an.within_bound) {
        rep["falsification"] = "cutset " + std::to_string(i) +
                               ": observed labels exceed the component bound";
        return finish(4, "falsification");
      }
      if (an.cutset.finite_certified && an.region_complete && !an.separating) {
        rep["falsification"] = "cutset " + std::to_string(i) +
                               ": certified finite cutset does not separate";
        return finish(4, "falsification");
      }
    }
    res.reached = stage;

    // --- dual complex over the identity cutset ---
    stage = "cubulate";
    int i0 = 0;
    for (size_t i = 0; i < ws.analyses.size(); ++i)
      if (ws.analyses[i].cutset.translate.empty() &&
          ws.analyses[i].cutset.pair == 0) {
        i0 = static_cast<int>(i);
        break;
      }
    WallSpace sub;
    sub.analyses.push_back(ws.analyses[i0]);
    for (const Wall& w : ws.walls)
      if (w.cutset == i0) {
        Wall copy = w;
        copy.cutset = 0;
        sub.walls.push_back(copy);
      }
    const std::vector<CoverVertex>& seeds = sub.analyses[0].sample;
    DualComplex complex =
        build_dual(sub, seeds, cfg.max_dim, cfg.complex_budget);
    bool median = false;
    try {
      median = is_median(complex.adj);
    } catch (const ContractError& e) {
      rep["falsification"] = std::string("dual complex degenerate: ") +
                             e.what();
      return finish(4, "falsification");
    }
    rep["complex"] = {{"cutset", i0},
                      {"cubes_by_dimension", complex.cubes},
                      {"dimension", complex.dimension},
                      {"complete", complex.complete},
                      {"median", median}};
    files.emplace_back("complex.json", to_json(complex));
    res.reached = stage;
    if (!median) {
      rep["falsification"] = "dual complex 1-skeleton is not median";
      return finish(4, "falsification");
    }

    // --- distance audit ---
    stage = "verify-distance";
    std::vector<std::pair<CoverVertex, CoverVertex>> pairs;
    size_t cap = std::min<size_t>(seeds.size(), 40);
    for (size_t i = 0; i < cap; ++i)
      for (size_t j = i + 1; j < cap; ++j)
        pairs.emplace_back(seeds[i], seeds[j]);
    DistanceReport dist = verify_distance(complex, sub, pairs);
    rep["distance_audit"] = {{"pairs", dist.entries.size()},
                             {"all_ok", dist.all_ok}};
    res.reached = stage;
    if (!dist.all_ok) {
      rep["falsification"] =
          "1-skeleton distance disagrees with the wall separation count";
      return finish(4, "falsification");
    }

    // --- growth witness ---
    if (cfg.witness_n > 0) {
      stage = "witness";
      GrowthWitness w = growth_witness(cover, ws, cfg.witness_n);
      int crossing_total = 0;
      for (int c : w.crossings) crossing_total += c;
      rep["witness"] = {{"n", cfg.witness_n},
                        {"path", to_text(w.path)},
                        {"cutsets", w.cutsets},
                        {"crossings", crossing_total},
                        {"walls", w.walls.size()},
                        {"separation", w.separation}};
      res.reached = stage;
    }

    return finish(0, "pass");
  } catch (const ConfigError& e) {
    res.warnings.emplace_back("[" + stage + "] " + e.what());
    return finish(2, "config-error");
  } catch (const Error& e) {
    res.warnings.emplace_back("[" + stage + "] " + e.what());
    return finish(3, "uncertified-stop");
  }
}

}  // namespace relsep
