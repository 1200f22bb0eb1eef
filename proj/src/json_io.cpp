#include "relsep/json_io.hpp"

#include <fstream>

#include "relsep/errors.hpp"

namespace relsep {

Json word_to_json(const Word& w) { return to_text(w); }

Word word_from_json(const Json& j) {
  if (j.is_string()) return from_text(j.get<std::string>());
  if (j.is_array()) {
    Word w;
    for (const Json& x : j) {
      if (!x.is_number_integer() || x.get<long>() == 0)
        throw ConfigError("word letters must be nonzero integers");
      w.push_back(static_cast<Letter>(x.get<long>()));
    }
    return w;
  }
  throw ConfigError("word must be a string or an integer array");
}

Json to_json(const Presentation& p) {
  Json j;
  j["n"] = p.n;
  j["relators"] = Json::array();
  for (const Word& r : p.relators) j["relators"].push_back(word_to_json(r));
  return j;
}

Presentation presentation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("relators"))
    throw ConfigError("presentation needs fields n and relators");
  Presentation p;
  p.n = j.at("n").get<int>();
  for (const Json& r : j.at("relators")) p.relators.push_back(word_from_json(r));
  p.validate();
  return p;
}

Json to_json(const HalvedPresentation& hp) {
  Json j = to_json(hp.base);
  j["splits"] = hp.splits;
  return j;
}

HalvedPresentation halved_from_json(const Json& j) {
  Presentation p = presentation_from_json(j);
  if (!j.contains("splits")) return halve(p);
  return halve(p, j.at("splits").get<std::vector<int>>());
}

Json to_json(const QVec& q) {
  Json j = Json::array();
  for (const auto& [kappa, pair] : q.bits)
    j.push_back({{"kappa", word_to_json(kappa)}, {"pair", pair}});
  return j;
}

QVec qvec_from_json(const Json& j) {
  QVec q;
  for (const Json& bit : j)
    q.toggle(word_from_json(bit.at("kappa")), bit.at("pair").get<int>());
  return q;
}

Json to_json(const CayleyBall& ball) {
  Json j;
  j["n"] = ball.n;
  j["radius"] = ball.radius;
  j["vertices"] = Json::array();
  for (const Word& v : ball.vertices) j["vertices"].push_back(word_to_json(v));
  j["dist"] = ball.dist;
  j["adj"] = ball.adj;
  return j;
}

Json to_json(const CoverBall& cover) {
  Json j;
  j["ball"] = to_json(cover.base);
  j["halved"] = to_json(cover.hp);
  j["tree_parent"] = cover.parent;
  Json weights = Json::array();
  for (const auto& [edge, q] : cover.weights) {
    if (q.zero()) continue;
    weights.push_back(
        {{"vertex", edge.first}, {"slot", edge.second}, {"q", to_json(q)}});
  }
  j["weights"] = std::move(weights);
  return j;
}

namespace {

Json label_to_json(const ComponentLabel& label) {
  Json profile = Json::array();
  for (const auto& [kappa, pair] : label.second)
    profile.push_back({{"kappa", word_to_json(kappa)}, {"pair", pair}});
  return {{"component", label.first}, {"profile", std::move(profile)}};
}

}  // namespace

Json wall_report(const WallSpace& ws, const CayleyBall& ball) {
  Json j;
  j["cutsets"] = Json::array();
  for (size_t i = 0; i < ws.analyses.size(); ++i) {
    const ComponentAnalysis& an = ws.analyses[i];
    Json c;
    c["id"] = i;
    c["translate"] = word_to_json(an.cutset.translate);
    c["pair"] = an.cutset.pair;
    c["finite_certified"] = an.cutset.finite_certified;
    c["boundary_components"] = an.cutset.boundary_components;
    c["finite_components"] = an.cutset.finite_components;
    c["L_keys"] = an.L.keys.size();
    c["inner_radius"] = an.inner_radius;
    c["region_complete"] = an.region_complete;
    c["base_components"] = an.base_components;
    c["observed_labels"] = an.observed.size();
    c["explored"] = an.explored;
    c["separating"] = an.separating;
    c["within_bound"] = an.within_bound;
    c["consistent"] = an.consistent;
    j["cutsets"].push_back(std::move(c));
  }
  j["walls"] = Json::array();
  for (const Wall& w : ws.walls) {
    Json wj;
    wj["cutset"] = w.cutset;
    wj["principal"] = w.principal;
    wj["parity_side0"] = w.parity_side0;
    Json s0 = Json::array(), s1 = Json::array();
    for (const ComponentLabel& l : w.side0) s0.push_back(label_to_json(l));
    for (const ComponentLabel& l : w.side1) s1.push_back(label_to_json(l));
    wj["side0"] = std::move(s0);
    wj["side1"] = std::move(s1);
    j["walls"].push_back(std::move(wj));
  }
  j["transverse"] = ws.transverse;
  j["max_transverse_family"] = ws.max_transverse_family;
  j["capped"] = ws.capped;
  j["ball_radius"] = ball.radius;
  return j;
}

Json to_json(const DualComplex& complex) {
  Json j;
  j["cubes_by_dimension"] = complex.cubes;
  j["dimension"] = complex.dimension;
  j["complete"] = complex.complete;
  j["edges"] = complex.edges;
  j["edge_weight"] = complex.edge_weight;
  return j;
}

Json to_json(const TrialReport& report) {
  Json j;
  j["model"] = {{"family", to_string(report.model.family)},
                {"n", report.model.n},
                {"length", report.model.length},
                {"d", report.model.d}};
  j["trials"] = report.trials;
  j["master_seed"] = report.master_seed;
  j["predicates"] = Json::object();
  for (const auto& [name, stat] : report.predicates)
    j["predicates"][name] = {{"passes", stat.passes},
                             {"frequency", stat.frequency},
                             {"wilson_low", stat.wilson_low},
                             {"wilson_high", stat.wilson_high}};
  j["bounds"] = report.bounds;
  j["ok"] = report.ok;
  return j;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw ConfigError("write failed: " + path.string());
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace relsep
