#pragma once

#include <map>

#include "relsep/cayley.hpp"
#include "relsep/relhom.hpp"

namespace relsep {

// Point of the double T-cover over a ball vertex: base index plus the fiber
// offset relative to the basepoint lift (epsilon, 0).
struct CoverVertex {
  int base = 0;
  QVec fiber;
  bool operator==(const CoverVertex&) const = default;
  auto operator<=>(const CoverVertex& o) const {
    if (auto c = base <=> o.base; c != 0) return c;
    return fiber.bits <=> o.fiber.bits;
  }
};

// Ball of the base Cayley graph of K_R plus edge voltages: the BFS spanning
// tree (canonical names are prefix closed, so tree paths spell the names)
// carries weight zero; each non-tree edge carries P_{T,R} of its fundamental
// loop.
struct CoverBall {
  CayleyBall base;
  HalvedPresentation hp;
  std::vector<int> parent;       // tree parent, -1 at the root
  std::vector<int> parent_slot;  // letter slot read from parent to vertex
  std::map<std::pair<int, int>, QVec> weights;  // (vertex, slot) -> voltage

  bool is_tree_edge(int v, int slot) const;
  // Zero QVec on tree edges.
  const QVec& weight(int v, int slot) const;
};

// Throws CoverError naming the edge when a fundamental loop cannot be
// trivialized within the oracle's budget.
CoverBall build_cover(const CayleyBall& ball, const WordProblemOracle& oracle,
                      const HalvedPresentation& hp);

// Unique lift of an edge path (letters) from a cover vertex. RangeError if
// the path leaves the ball.
CoverVertex lift_path(const CoverBall& cover, const Word& path,
                      CoverVertex start);

// Deck action of Q(T,R): (v, f) -> (v, f+q).
CoverVertex deck_translate(const CoverVertex& v, const QVec& q);

// Component of `start` in the cover of the ball, BFS up to `budget` cover
// vertices; BudgetError beyond that.
std::vector<CoverVertex> materialize_component(const CoverBall& cover,
                                               const CoverVertex& start,
                                               long budget);

}  // namespace relsep
