#include "relsep/cayley.hpp"

#include <deque>
#include <sstream>

#include "relsep/errors.hpp"

namespace relsep {

int CayleyBall::vertex(const Word& canonical) const {
  auto it = index.find(canonical);
  if (it == index.end())
    throw LookupError("vertex not in ball: " + to_text(canonical));
  return it->second;
}

long CayleyBall::directed_edges() const {
  long e = 0;
  for (const auto& row : adj)
    for (int t : row)
      if (t >= 0) ++e;
  return e;
}

std::string CayleyBall::to_dot() const {
  std::ostringstream os;
  os << "digraph ball {\n";
  for (size_t v = 0; v < vertices.size(); ++v)
    os << "  v" << v << " [label=\"" << (v == 0 ? "1" : to_text(vertices[v]))
       << "\"" << (dist[v] == radius ? ",style=dashed" : "") << "];\n";
  for (size_t v = 0; v < vertices.size(); ++v)
    for (int slot = 0; slot < 2 * n; ++slot) {
      int t = adj[v][slot];
      Letter s = slot_letter(slot);
      if (t >= 0 && s > 0)  // one arrow per generator edge
        os << "  v" << v << " -> v" << t << " [label=\"" << to_text({s})
           << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

Word canonical_form(const Word& w, const WordProblemOracle& oracle,
                    int ball_radius) {
  if (static_cast<int>(w.size()) > 2 * ball_radius)
    throw CanonicalizationError("word longer than the certified regime");
  auto k = oracle.key(w);
  if (!k)
    throw CanonicalizationError("oracle cannot canonicalize: " + to_text(w));
  return *k;
}

CayleyBall build_ball(const Presentation& p, int radius,
                      const WordProblemOracle& oracle) {
  if (radius < 0) throw ConfigError("radius must be nonnegative");
  CayleyBall ball;
  ball.n = p.n;
  ball.radius = radius;
  ball.vertices.push_back({});
  ball.dist.push_back(0);
  ball.index[{}] = 0;
  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop_front();
    if (ball.dist[v] == radius) continue;
    for (int slot = 0; slot < 2 * p.n; ++slot) {
      Word step = ball.vertices[v];
      step.push_back(slot_letter(slot));
      Word u = canonical_form(reduce(step, p.n), oracle, radius + 1);
      auto [it, inserted] = ball.index.emplace(u, ball.vertices.size());
      if (inserted) {
        ball.vertices.push_back(u);
        ball.dist.push_back(ball.dist[v] + 1);
        frontier.push_back(it->second);
      }
    }
  }
  // Edge pass over the final vertex set.
  ball.adj.assign(ball.vertices.size(), std::vector<int>(2 * p.n, -1));
  for (size_t v = 0; v < ball.vertices.size(); ++v)
    for (int slot = 0; slot < 2 * p.n; ++slot) {
      Word step = ball.vertices[v];
      step.push_back(slot_letter(slot));
      Word u = canonical_form(reduce(step, p.n), oracle, radius + 1);
      auto it = ball.index.find(u);
      if (it != ball.index.end()) ball.adj[v][slot] = it->second;
    }
  return ball;
}

std::unique_ptr<WordProblemOracle> exact_fixture_oracle(const Presentation& p) {
  return std::make_unique<ExactFixtureOracle>(p);
}

}  // namespace relsep
