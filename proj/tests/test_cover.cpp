#include "doctest.h"
#include "relsep/counting.hpp"
#include "relsep/cover.hpp"
#include "relsep/errors.hpp"

using namespace relsep;

namespace {

struct Fix {
  HalvedPresentation hp = halve({4, {from_text("abABcdCD")}});
  Presentation kr = hp.kr_presentation();
  ExactFixtureOracle oracle{kr};
  CayleyBall ball;
  CoverBall cover;

  explicit Fix(int radius = 2)
      : ball(build_ball(kr, radius, oracle)),
        cover(build_cover(ball, oracle, hp)) {}
};

Word random_ball_path(const CoverBall& c, Rng& rng, int len) {
  // random edge path from the basepoint staying inside the ball
  Word path;
  int v = 0;
  for (int i = 0; i < len; ++i) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      int slot = static_cast<int>(rng() % (2 * c.base.n));
      if (c.base.adj[v][slot] >= 0) {
        path.push_back(slot_letter(slot));
        v = c.base.adj[v][slot];
        break;
      }
    }
  }
  return path;
}

}  // namespace

TEST_CASE("tree paths lift with constant fiber") {
  Fix f;
  for (const Word& name : f.ball.vertices) {
    CoverVertex end = lift_path(f.cover, name, {0, {}});
    CHECK(end.base == f.ball.vertex(name));
    CHECK(end.fiber.zero());
  }
}

TEST_CASE("defining loop lifts closed, half loop does not") {
  Fix f;
  CoverVertex closed = lift_path(f.cover, from_text("abABcdCD"), {0, {}});
  CHECK(closed == CoverVertex{0, {}});

  CoverVertex open = lift_path(f.cover, from_text("abAB"), {0, {}});
  CHECK(open.base == 0);
  QVec expect;
  expect.toggle(Word{}, 0);
  CHECK(open.fiber == expect);

  CoverVertex open2 = lift_path(f.cover, from_text("cdCD"), {0, {}});
  QVec expect2;
  expect2.toggle(Word{}, 0);
  CHECK(open2.fiber == expect2);  // partner half: same pair coordinate
}

TEST_CASE("empty path and reversal") {
  Fix f;
  CoverVertex start{0, {}};
  CHECK(lift_path(f.cover, {}, start) == start);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Word sigma = random_ball_path(f.cover, rng, 3);
    Word back = concat(Word{}, sigma);
    Word there_and_back = sigma;
    Word rev = inverse_word(sigma);
    there_and_back.insert(there_and_back.end(), rev.begin(), rev.end());
    CHECK(lift_path(f.cover, there_and_back, start) == start);
  }
}

TEST_CASE("projection of a lift follows the base walk") {
  Fix f;
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    Word sigma = random_ball_path(f.cover, rng, 4);
    CoverVertex end = lift_path(f.cover, sigma, {0, {}});
    int v = 0;
    for (Letter s : sigma) v = f.ball.adj[v][letter_slot(s)];
    CHECK(end.base == v);
  }
}

TEST_CASE("fiber additivity along concatenations") {
  Fix f;
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Word s1 = random_ball_path(f.cover, rng, 2);
    CoverVertex mid = lift_path(f.cover, s1, {0, {}});
    // continue with a path valid from mid.base
    Word s2;
    int v = mid.base;
    for (int i = 0; i < 2; ++i)
      for (int attempt = 0; attempt < 20; ++attempt) {
        int slot = static_cast<int>(rng() % (2 * f.cover.base.n));
        if (f.ball.adj[v][slot] >= 0) {
          s2.push_back(slot_letter(slot));
          v = f.ball.adj[v][slot];
          break;
        }
      }
    Word whole = s1;
    whole.insert(whole.end(), s2.begin(), s2.end());
    CHECK(lift_path(f.cover, whole, {0, {}}) == lift_path(f.cover, s2, mid));
  }
}

TEST_CASE("deck translation is an F2 action commuting with lifts") {
  Fix f;
  QVec q;
  q.toggle(from_text("a"), 1);
  CoverVertex v{0, {}};
  CHECK(deck_translate(v, {}) == v);
  CHECK(deck_translate(deck_translate(v, q), q) == v);
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    Word sigma = random_ball_path(f.cover, rng, 3);
    CoverVertex a = deck_translate(lift_path(f.cover, sigma, v), q);
    CoverVertex b = lift_path(f.cover, sigma, deck_translate(v, q));
    CHECK(a == b);
  }
}

TEST_CASE("path exiting the ball raises") {
  Fix f;
  CHECK_THROWS_AS(lift_path(f.cover, from_text("aaa"), {0, {}}), RangeError);
}

TEST_CASE("restriction consistency across radii") {
  Fix small(2), big(3);
  for (size_t v = 0; v < small.ball.vertices.size(); ++v) {
    CHECK(small.ball.vertices[v] == big.ball.vertices[v]);
    for (int slot = 0; slot < 2 * small.ball.n; ++slot) {
      if (small.ball.adj[v][slot] < 0) continue;
      CHECK(small.cover.is_tree_edge(static_cast<int>(v), slot) ==
            big.cover.is_tree_edge(static_cast<int>(v), slot));
      CHECK(small.cover.weight(static_cast<int>(v), slot) ==
            big.cover.weight(static_cast<int>(v), slot));
    }
  }
}

TEST_CASE("radius-1 cover component is a lifted star") {
  Fix f(1);
  auto comp = materialize_component(f.cover, {0, {}}, 1000);
  CHECK(comp.size() == f.ball.vertices.size());  // all tree edges, one sheet
  for (const auto& cv : comp) CHECK(cv.fiber.zero());
}

TEST_CASE("component materialization respects its budget") {
  Fix f(2);
  CHECK_THROWS_AS(materialize_component(f.cover, {0, {}}, 5), BudgetError);
}

TEST_CASE("every inner base vertex has a preimage in the component") {
  Fix f(2);
  for (size_t v = 0; v < f.ball.vertices.size(); ++v) {
    CoverVertex lift = lift_path(f.cover, f.ball.vertices[v], {0, {}});
    CHECK(lift.base == static_cast<int>(v));
  }
}
