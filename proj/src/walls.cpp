#include "relsep/walls.hpp"

#include <algorithm>
#include <deque>

#include "relsep/errors.hpp"

namespace relsep {

namespace {

// BFS over the full ball; returns distances from `source` (-1 unreachable).
std::vector<int> ball_distances(const CayleyBall& ball, int source) {
  std::vector<int> d(ball.vertices.size(), -1);
  d[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : ball.adj[v])
      if (u >= 0 && d[u] < 0) {
        d[u] = d[v] + 1;
        queue.push_back(u);
      }
  }
  return d;
}

Profile profile_on(const QVec& f, const std::set<std::pair<Word, int>>& keys) {
  Profile out;
  for (const auto& bit : f.bits)
    if (keys.count(bit)) out.insert(bit);
  return out;
}

Profile raw_profile(const ComponentAnalysis& an, const CoverVertex& v) {
  return profile_on(v.fiber + an.tree_offset[v.base], an.L.keys);
}

ComponentLabel raw_label(const ComponentAnalysis& an, const CoverVertex& v) {
  Profile p = raw_profile(an, v);
  auto it = an.class_rep.find(p);
  return {an.base_component[v.base], it == an.class_rep.end() ? p : it->second};
}

int side_of_label(const Wall& w, const ComponentLabel& label,
                  const std::pair<Word, int>& self_key) {
  if (w.side0.count(label)) return 0;
  if (w.side1.count(label)) return 1;
  if (w.parity_side0 >= 0)  // certified placement by self-key parity
    return static_cast<int>(label.second.count(self_key)) == w.parity_side0
               ? 0
               : 1;
  if (w.principal) return 1;  // unseen labels join the one-vs-rest side
  throw RangeError("component label on neither side of the wall");
}

// Self-key parity shared by every label in the set, or -1 if mixed/empty.
int common_parity(const std::set<ComponentLabel>& side,
                  const std::pair<Word, int>& self_key) {
  int parity = -1;
  for (const ComponentLabel& l : side) {
    int p = static_cast<int>(l.second.count(self_key));
    if (parity < 0) parity = p;
    if (p != parity) return -1;
  }
  return parity;
}

// Maximum clique by branch and bound over an adjacency-set graph.
void max_clique_rec(const std::vector<std::set<int>>& adj,
                    std::vector<int>& cand, int depth, int& best) {
  if (depth + static_cast<int>(cand.size()) <= best) return;
  if (cand.empty()) {
    best = std::max(best, depth);
    return;
  }
  while (!cand.empty()) {
    if (depth + static_cast<int>(cand.size()) <= best) return;
    int v = cand.back();
    cand.pop_back();
    std::vector<int> next;
    for (int u : cand)
      if (adj[v].count(u)) next.push_back(u);
    max_clique_rec(adj, next, depth + 1, best);
  }
}

}  // namespace

std::vector<int> sigma_loop(const CayleyBall& ball,
                            const HalvedPresentation& hp, int pair,
                            HalfRole which, const Word& k) {
  if (pair < 0 || pair >= hp.pairs())
    throw RangeError("pair index out of range");
  const Word& half = hp.half(2 * pair + (which == HalfRole::second ? 1 : 0));
  int v = ball.vertex(k);
  int start = v;
  std::vector<int> out;
  out.reserve(half.size());
  for (Letter s : half) {
    out.push_back(v);
    v = ball.adj[v][letter_slot(s)];
    if (v < 0)
      throw RangeError("half loop at " + to_text(k) + " exits the ball");
  }
  if (v != start)
    throw ContractError("half loop does not close; relator not trivial");
  return out;
}

CutsetA compute_A(const CayleyBall& ball, const HalvedPresentation& hp,
                  int pair, const Word& k, int margin) {
  if (margin < 0) throw ContractError("negative certification margin");
  CutsetA A;
  A.pair = pair;
  A.translate = k;
  for (HalfRole role : {HalfRole::first, HalfRole::second}) {
    std::vector<int> loop = sigma_loop(ball, hp, pair, role, k);
    const Word& half = hp.half(2 * pair + (role == HalfRole::second ? 1 : 0));
    for (size_t p = 0; p < loop.size(); ++p) {
      int v = loop[p];
      int u = loop[(p + 1) % loop.size()];
      A.loop_vertices.insert(v);
      A.cut_edges.insert({v, letter_slot(half[p])});
      A.cut_edges.insert({u, letter_slot(-half[p])});
    }
  }

  // Components of the ball minus the loop edges. A component that never
  // reaches the ball boundary has every neighbor inside the ball, so it is a
  // genuine finite component of the infinite complement and belongs to A.
  std::vector<char> seen(ball.vertices.size(), 0);
  for (int v0 = 0; v0 < static_cast<int>(ball.vertices.size()); ++v0) {
    if (seen[v0]) continue;
    std::vector<int> comp;
    std::deque<int> queue{v0};
    seen[v0] = 1;
    bool touches = false;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      if (ball.is_boundary(v)) touches = true;
      for (int slot = 0; slot < 2 * ball.n; ++slot) {
        int u = ball.adj[v][slot];
        if (u < 0 || seen[u] || A.cut_edges.count({v, slot})) continue;
        seen[u] = 1;
        queue.push_back(u);
      }
    }
    if (touches) {
      ++A.boundary_components;
    } else {
      ++A.finite_components;
      A.finite_vertices.insert(comp.begin(), comp.end());
    }
  }
  A.vertices = A.loop_vertices;
  A.vertices.insert(A.finite_vertices.begin(), A.finite_vertices.end());

  for (int v : A.vertices) A.max_dist = std::max(A.max_dist, ball.dist[v]);
  for (int v : A.vertices) {
    std::vector<int> d = ball_distances(ball, v);
    for (int u : A.vertices) A.diameter = std::max(A.diameter, d[u]);
  }
  // Certification: A must sit inside the ball with an untouched annulus wide
  // enough that nothing relevant could hide past the horizon.
  A.finite_certified =
      A.boundary_components >= 1 && A.max_dist + margin <= ball.radius;
  return A;
}

LSet compute_L(const CayleyBall& ball, const HalvedPresentation& hp,
               const WordProblemOracle& oracle, const CutsetA& A) {
  LSet L;
  std::set<std::pair<Word, int>> entry_set;
  for (int v : A.vertices) {
    const Word& name = ball.vertices[v];
    for (int j = 0; j < 2 * hp.pairs(); ++j) {
      const Word& half = hp.half(j);
      for (size_t p = 0; p < half.size(); ++p) {
        Word prefix(half.begin(), half.begin() + static_cast<long>(p));
        auto kappa = oracle.key(concat(name, inverse_word(prefix)));
        if (!kappa)
          throw CanonicalizationError("translate base not canonicalizable");
        entry_set.insert({*kappa, j});
        L.keys.insert({*kappa, HalvedPresentation::pair_of_half(j)});
      }
    }
  }
  L.entries.assign(entry_set.begin(), entry_set.end());
  return L;
}

ComponentAnalysis cover_components(const CoverBall& cover, const CutsetA& A,
                                   const LSet& L, int inner_radius,
                                   long budget) {
  const CayleyBall& ball = cover.base;
  if (inner_radius < 0 || inner_radius > ball.radius)
    throw ContractError("inner radius outside the built ball");
  int V = static_cast<int>(ball.vertices.size());
  ComponentAnalysis an;
  an.cutset = A;
  an.L = L;
  an.inner_radius = inner_radius;
  an.base_component.assign(V, -1);
  an.tree_offset.assign(V, {});

  // The analyzed region: vertices within inner_radius OF THE CUTSET's
  // translate, off A. Centering at the translate makes every analysis an
  // exact base-translate of the identity one. A is removed as a subgraph
  // (vertices included): paths threading through A's vertices, or loops far
  // enough out to wind around the removed squares, can pick up the self-key
  // voltage without ever using a loop edge, which would defeat the
  // certificate below — the former is excluded here, the latter by keeping
  // the region radius small.
  std::vector<int> center_dist = ball_distances(ball, ball.vertex(A.translate));
  an.region_complete =
      ball.dist[ball.vertex(A.translate)] + inner_radius <= ball.radius;
  auto in_region = [&](int v) {
    return center_dist[v] <= inner_radius && !A.vertices.count(v);
  };

  // Base components of the region, with an A-avoiding BFS tree per component
  // accumulating cover voltages.
  for (int v0 = 0; v0 < V; ++v0) {
    if (an.base_component[v0] >= 0 || !in_region(v0)) continue;
    int id = an.base_components++;
    an.component_root.push_back(v0);
    an.base_component[v0] = id;
    std::deque<int> queue{v0};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int slot = 0; slot < 2 * ball.n; ++slot) {
        int u = ball.adj[v][slot];
        if (u < 0 || an.base_component[u] >= 0 || !in_region(u) ||
            A.cuts(v, slot, u))
          continue;
        an.base_component[u] = id;
        an.tree_offset[u] = an.tree_offset[v] + cover.weight(v, slot);
        queue.push_back(u);
      }
    }
  }

  an.self_key = {A.translate, A.pair};

  // Union-find over profiles. Exploration may legitimately merge profiles
  // (equal profiles certify one component, unequal ones decide nothing) —
  // except across the self-key parity, which is a certified separator.
  std::map<Profile, Profile> uf;
  auto find = [&uf](Profile p) {
    while (true) {
      auto it = uf.find(p);
      if (it == uf.end() || it->second == p) return p;
      p = it->second;
    }
  };
  auto unite = [&](const Profile& a, const Profile& b) {
    Profile ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (ra.count(an.self_key) != rb.count(an.self_key))
      an.consistent = false;  // falsification: merge across the certificate
    ++an.merges;
    if (rb < ra) std::swap(ra, rb);
    uf.insert_or_assign(rb, ra);
  };

  // Budgeted BFS in the cover minus the preimage of A, seeded at each
  // component root and at its self-key deck translate (the sheet on the far
  // side of the wall), so both self parities are always witnessed.
  std::vector<CoverVertex> seeds;
  for (int root : an.component_root) {
    seeds.push_back({root, an.tree_offset[root]});
    QVec f = an.tree_offset[root];
    f.toggle(an.self_key.first, an.self_key.second);
    seeds.push_back({root, f});
  }
  std::set<CoverVertex> visited;
  for (const CoverVertex& seed : seeds) {
    if (!visited.insert(seed).second) continue;
    Profile sp = raw_profile(an, seed);
    uf.try_emplace(sp, sp);
    std::deque<CoverVertex> queue{seed};
    long local = 0;  // each seed gets its own exploration allotment
    while (!queue.empty() && local < budget) {
      CoverVertex v = queue.front();
      queue.pop_front();
      Profile vp = raw_profile(an, v);
      for (int slot = 0; slot < 2 * ball.n; ++slot) {
        int u = ball.adj[v.base][slot];
        if (u < 0 || !in_region(u) || A.cuts(v.base, slot, u)) continue;
        CoverVertex next{u, v.fiber + cover.weight(v.base, slot)};
        Profile np = raw_profile(an, next);
        uf.try_emplace(np, np);
        if (np != vp) unite(np, vp);
        if (visited.insert(next).second) {
          queue.push_back(next);
          ++local;
        }
      }
    }
  }
  for (const auto& [p, r] : uf) an.class_rep[p] = find(p);

  an.explored = static_cast<long>(visited.size());
  an.sample.assign(visited.begin(), visited.end());
  bool self0 = false, self1 = false;
  for (const CoverVertex& v : visited) {
    ComponentLabel label = raw_label(an, v);
    (label.second.count(an.self_key) ? self1 : self0) = true;
    an.observed.insert(std::move(label));
  }
  an.separating = an.consistent && self0 && self1;
  size_t keys = L.keys.size();
  if (keys < 30) {
    unsigned long bound =
        static_cast<unsigned long>(an.base_components) << keys;
    an.within_bound = an.observed.size() <= bound;
  }
  return an;
}

ComponentLabel label_of(const ComponentAnalysis& an, const CoverVertex& v) {
  if (v.base < 0 || v.base >= static_cast<int>(an.base_component.size()))
    throw RangeError("cover vertex outside the analyzed ball");
  if (an.base_component[v.base] < 0)
    throw RangeError("cover vertex projects into the cutset or outside the inner region");
  return raw_label(an, v);
}

QVec q_between(const CoverVertex& x, const CoverVertex& y) {
  if (x.base != y.base)
    throw ContractError("q_between needs a common base projection");
  return x.fiber + y.fiber;
}

WallSpace enumerate_walls(const CoverBall& cover,
                          const std::vector<std::pair<Word, int>>& cutsets,
                          const WordProblemOracle& oracle, int margin,
                          int inner_radius, long budget) {
  WallSpace ws;
  for (const auto& [k, pair] : cutsets) {
    CutsetA A = compute_A(cover.base, cover.hp, pair, k, margin);
    LSet L = compute_L(cover.base, cover.hp, oracle, A);
    ws.analyses.push_back(cover_components(cover, A, L, inner_radius, budget));
  }

  for (size_t c = 0; c < ws.analyses.size(); ++c) {
    const ComponentAnalysis& an = ws.analyses[c];
    std::vector<ComponentLabel> labels(an.observed.begin(),
                                       an.observed.end());
    int m = static_cast<int>(labels.size());
    if (m < 2) continue;
    auto finish = [&](Wall w) {
      int p0 = common_parity(w.side0, an.self_key);
      int p1 = common_parity(w.side1, an.self_key);
      if (p0 >= 0 && p1 == 1 - p0) w.parity_side0 = p0;
      ws.walls.push_back(std::move(w));
    };
    if (m <= 6) {
      for (unsigned mask = 1; mask + 1 < (1u << m); mask += 2) {
        Wall w;
        w.cutset = static_cast<int>(c);
        for (int i = 0; i < m; ++i)
          (mask >> i & 1 ? w.side0 : w.side1).insert(labels[i]);
        w.principal = w.side0.size() == 1 || w.side1.size() == 1;
        finish(std::move(w));
      }
    } else {
      ws.capped = true;
      for (int i = 0; i < m; ++i) {
        Wall w;
        w.cutset = static_cast<int>(c);
        w.side0.insert(labels[i]);
        for (int j = 0; j < m; ++j)
          if (j != i) w.side1.insert(labels[j]);
        w.principal = true;
        finish(std::move(w));
      }
      // the certified self-parity partition, the one wall per cutset that
      // the separation results actually need
      Wall w;
      w.cutset = static_cast<int>(c);
      for (const ComponentLabel& l : labels)
        (l.second.count(an.self_key) ? w.side1 : w.side0).insert(l);
      if (w.side0.size() > 1 && w.side1.size() > 1) finish(std::move(w));
    }
  }

  // Empirical transversality: all four side intersections witnessed by
  // explored cover points. Occupancy of joint labels is computed once per
  // cutset pair; cutsets with disjoint supports are skipped outright (their
  // walls are nested, never transverse).
  size_t C = ws.analyses.size();
  std::vector<std::map<ComponentLabel, int>> label_id(C);
  std::vector<std::vector<int>> walls_of(C);
  for (size_t c = 0; c < C; ++c)
    for (const ComponentLabel& l : ws.analyses[c].observed)
      label_id[c].emplace(l, static_cast<int>(label_id[c].size()));
  // per wall: side of each observed label of its cutset, by label id
  std::vector<std::vector<signed char>> side_by_id(ws.walls.size());
  for (size_t w = 0; w < ws.walls.size(); ++w) {
    int c = ws.walls[w].cutset;
    walls_of[c].push_back(static_cast<int>(w));
    side_by_id[w].assign(label_id[c].size(), 1);
    for (const ComponentLabel& l : ws.walls[w].side0)
      side_by_id[w][label_id[c].at(l)] = 0;
  }

  std::vector<std::set<int>> adj(ws.walls.size());
  for (size_t c1 = 0; c1 < C; ++c1)
    for (size_t c2 = c1; c2 < C; ++c2) {
      if (walls_of[c1].empty() || walls_of[c2].empty()) continue;
      const ComponentAnalysis& a1 = ws.analyses[c1];
      const ComponentAnalysis& a2 = ws.analyses[c2];
      std::set<std::pair<int, int>> occupancy;
      if (c1 == c2) {
        for (const auto& [label, id] : label_id[c1]) occupancy.insert({id, id});
      } else {
        bool disjoint = true;
        for (int v : a1.cutset.vertices)
          if (a2.cutset.vertices.count(v)) {
            disjoint = false;
            break;
          }
        if (disjoint) continue;
        auto probe = [&](const CoverVertex& v) {
          if (a1.base_component[v.base] < 0 || a2.base_component[v.base] < 0)
            return;
          auto i1 = label_id[c1].find(raw_label(a1, v));
          auto i2 = label_id[c2].find(raw_label(a2, v));
          if (i1 != label_id[c1].end() && i2 != label_id[c2].end())
            occupancy.insert({i1->second, i2->second});
        };
        for (const CoverVertex& v : a1.sample) probe(v);
        for (const CoverVertex& v : a2.sample) probe(v);
      }
      for (int w1 : walls_of[c1])
        for (int w2 : walls_of[c2]) {
          if (w2 <= w1) continue;
          bool combo[2][2] = {{false, false}, {false, false}};
          for (const auto& [i1, i2] : occupancy) {
            combo[side_by_id[w1][i1]][side_by_id[w2][i2]] = true;
            if (combo[0][0] && combo[0][1] && combo[1][0] && combo[1][1])
              break;
          }
          if (combo[0][0] && combo[0][1] && combo[1][0] && combo[1][1]) {
            ws.transverse.push_back({w1, w2});
            adj[w1].insert(w2);
            adj[w2].insert(w1);
          }
        }
    }

  std::vector<int> cand(ws.walls.size());
  for (size_t i = 0; i < cand.size(); ++i) cand[i] = static_cast<int>(i);
  int best = ws.walls.empty() ? 0 : 1;
  max_clique_rec(adj, cand, 0, best);
  ws.max_transverse_family = best;
  return ws;
}

int wall_side(const WallSpace& ws, int wall, const CoverVertex& v) {
  if (wall < 0 || wall >= static_cast<int>(ws.walls.size()))
    throw RangeError("wall index out of range");
  const Wall& w = ws.walls[wall];
  return side_of_label(w, label_of(ws.analyses[w.cutset], v),
                       ws.analyses[w.cutset].self_key);
}

int separation_count(const WallSpace& ws, const CoverVertex& x,
                     const CoverVertex& y) {
  int count = 0;
  for (int i = 0; i < static_cast<int>(ws.walls.size()); ++i)
    if (wall_side(ws, i, x) != wall_side(ws, i, y)) ++count;
  return count;
}

}  // namespace relsep
