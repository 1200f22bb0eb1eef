#include "relsep/cover.hpp"

#include <deque>
#include <set>

#include "relsep/errors.hpp"

namespace relsep {

bool CoverBall::is_tree_edge(int v, int slot) const {
  int u = base.adj[v][slot];
  if (u < 0) return false;
  if (parent[u] == v && parent_slot[u] == slot) return true;
  if (parent[v] == u && slot == letter_slot(-slot_letter(parent_slot[v])))
    return true;
  return false;
}

const QVec& CoverBall::weight(int v, int slot) const {
  static const QVec kZero;
  auto it = weights.find({v, slot});
  return it == weights.end() ? kZero : it->second;
}

CoverBall build_cover(const CayleyBall& ball, const WordProblemOracle& oracle,
                      const HalvedPresentation& hp) {
  CoverBall cover;
  cover.base = ball;
  cover.hp = hp;
  int V = static_cast<int>(ball.vertices.size());
  cover.parent.assign(V, -1);
  cover.parent_slot.assign(V, -1);
  for (int v = 1; v < V; ++v) {
    const Word& name = ball.vertices[v];
    Word prefix(name.begin(), name.end() - 1);
    cover.parent[v] = ball.vertex(prefix);
    cover.parent_slot[v] = letter_slot(name.back());
  }
  for (int v = 0; v < V; ++v)
    for (int slot = 0; slot < 2 * ball.n; ++slot) {
      int u = ball.adj[v][slot];
      if (u < 0 || cover.is_tree_edge(v, slot)) continue;
      if (cover.weights.count({v, slot})) continue;
      Word loop = ball.vertices[v];
      loop.push_back(slot_letter(slot));
      loop = concat(loop, inverse_word(ball.vertices[u]));
      QVec w;
      try {
        w = P_of_loop(loop, oracle, hp);
      } catch (const Error& e) {
        throw CoverError("fundamental loop of edge (" +
                         to_text(ball.vertices[v]) + ", " +
                         to_text({slot_letter(slot)}) +
                         ") not trivializable: " + e.what());
      }
      cover.weights[{v, slot}] = w;
      cover.weights[{u, letter_slot(-slot_letter(slot))}] = std::move(w);
    }
  return cover;
}

CoverVertex lift_path(const CoverBall& cover, const Word& path,
                      CoverVertex start) {
  if (start.base < 0 ||
      start.base >= static_cast<int>(cover.base.vertices.size()))
    throw RangeError("start vertex outside ball");
  CoverVertex cur = std::move(start);
  for (Letter s : path) {
    int slot = letter_slot(s);
    int next = cover.base.adj[cur.base][slot];
    if (next < 0)
      throw RangeError("path exits the ball at " +
                       to_text(cover.base.vertices[cur.base]));
    cur.fiber = cur.fiber + cover.weight(cur.base, slot);
    cur.base = next;
  }
  return cur;
}

CoverVertex deck_translate(const CoverVertex& v, const QVec& q) {
  return {v.base, v.fiber + q};
}

std::vector<CoverVertex> materialize_component(const CoverBall& cover,
                                               const CoverVertex& start,
                                               long budget) {
  std::set<CoverVertex> seen{start};
  std::deque<CoverVertex> queue{start};
  std::vector<CoverVertex> out;
  while (!queue.empty()) {
    CoverVertex v = queue.front();
    queue.pop_front();
    out.push_back(v);
    if (static_cast<long>(seen.size()) > budget)
      throw BudgetError("cover component exceeds budget");
    for (int slot = 0; slot < 2 * cover.base.n; ++slot) {
      int u = cover.base.adj[v.base][slot];
      if (u < 0) continue;
      CoverVertex next{u, v.fiber + cover.weight(v.base, slot)};
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return out;
}

}  // namespace relsep
