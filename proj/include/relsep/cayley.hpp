#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "relsep/oracle.hpp"

namespace relsep {

// Finite radius-r ball of a Cayley graph. Vertices are canonical words
// (ShortLex-least representatives); vertex 0 is the identity. adj[v][slot]
// is the neighbor v.s for the letter in that slot, or -1 outside the ball.
struct CayleyBall {
  int n = 0;
  int radius = 0;
  std::vector<Word> vertices;
  std::vector<int> dist;
  std::vector<std::vector<int>> adj;
  std::map<Word, int> index;

  bool is_boundary(int v) const { return dist[v] == radius; }
  bool is_interior(int v) const { return dist[v] < radius; }
  int vertex(const Word& canonical) const;  // throws LookupError
  long directed_edges() const;
  std::string to_dot() const;
};

// ShortLex-least word equal to w under the oracle. Requires the oracle to
// provide canonical keys; throws CanonicalizationError otherwise or when the
// oracle's budget is exhausted.
Word canonical_form(const Word& w, const WordProblemOracle& oracle,
                    int ball_radius);

// BFS from the identity; neighbors canonicalized through the oracle.
CayleyBall build_ball(const Presentation& p, int radius,
                      const WordProblemOracle& oracle);

// Oracle for a free product of free abelian factors of rank <= 2, given by
// disjoint commutator relators.
std::unique_ptr<WordProblemOracle> exact_fixture_oracle(const Presentation& p);

}  // namespace relsep
