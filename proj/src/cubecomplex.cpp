#include "relsep/cubecomplex.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <random>

#include "relsep/errors.hpp"

namespace relsep {

namespace {

// Witnessed side combinations per wall pair, bit s1*2+s2 at (w1 < w2).
struct Compat {
  int W = 0;
  std::vector<unsigned char> bits;

  explicit Compat(int walls) : W(walls), bits(size_t(walls) * walls, 0) {}
  void witness(const Orientation& o) {
    for (int a = 0; a < W; ++a)
      for (int b = a + 1; b < W; ++b)
        bits[size_t(a) * W + b] |=
            static_cast<unsigned char>(1u << (o[a] * 2 + o[b]));
  }
  bool ok(int a, int sa, int b, int sb) const {
    if (a > b) {
      std::swap(a, b);
      std::swap(sa, sb);
    }
    return bits[size_t(a) * W + b] >> (sa * 2 + sb) & 1;
  }
  // All walls keep a witnessed combination with wall w moved to side s.
  bool flip_ok(const Orientation& o, int w, int s) const {
    for (int b = 0; b < W; ++b)
      if (b != w && !ok(w, s, b, o[b])) return false;
    return true;
  }
};

std::vector<int> bfs_dist(const std::vector<std::vector<int>>& adj,
                          int source) {
  std::vector<int> d(adj.size(), -1);
  d[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : adj[v])
      if (d[u] < 0) {
        d[u] = d[v] + 1;
        queue.push_back(u);
      }
  }
  return d;
}

bool unique_median(const std::vector<int>& da, const std::vector<int>& db,
                   const std::vector<int>& dc, int a, int b, int c) {
  int found = 0;
  for (size_t m = 0; m < da.size(); ++m) {
    if (da[m] + db[m] != da[b]) continue;
    if (db[m] + dc[m] != db[c]) continue;
    if (da[m] + dc[m] != da[c]) continue;
    if (++found > 1) return false;
  }
  return found == 1;
}

// Grows one wall set S (all chosen walls on side 0 at the root corner) and
// counts a cube of dimension |S| whenever every corner orientation exists.
void count_cubes_rec(const std::vector<std::vector<int>>& neighbor,
                     const std::vector<int>& flippable, size_t next,
                     std::vector<int>& corners, int dim, int max_dim,
                     std::vector<long>& cubes) {
  if (dim >= 2) ++cubes[dim];
  if (dim == max_dim) return;
  for (size_t i = next; i < flippable.size(); ++i) {
    int w = flippable[i];
    size_t half = corners.size();
    bool closed = true;
    for (size_t j = 0; j < half && closed; ++j) {
      int u = neighbor[corners[j]][w];
      if (u < 0)
        closed = false;
      else
        corners.push_back(u);
    }
    if (closed)
      count_cubes_rec(neighbor, flippable, i + 1, corners, dim + 1, max_dim,
                      cubes);
    corners.resize(half);
  }
}

}  // namespace

int DualComplex::vertex(const Orientation& o) const {
  auto it = index.find(o);
  return it == index.end() ? -1 : it->second;
}

DualComplex build_dual(const WallSpace& ws,
                       const std::vector<CoverVertex>& points, int max_dim,
                       long budget) {
  if (points.empty()) throw ContractError("dual complex needs seed points");
  if (max_dim < 1) throw ContractError("max_dim must be at least 1");
  int W = static_cast<int>(ws.walls.size());
  int P = static_cast<int>(points.size());
  DualComplex C;
  C.cubes.assign(max_dim + 1, 0);

  std::vector<Orientation> seeds;
  seeds.reserve(points.size());
  for (const CoverVertex& v : points) {
    Orientation o(W);
    for (int w = 0; w < W; ++w)
      o[w] = static_cast<signed char>(wall_side(ws, w, v));
    seeds.push_back(std::move(o));
  }

  // Parallel classes: walls with the same seed partition (up to swapping
  // sides) cannot be separated by any consistent orientation and flip as
  // one. The polarity records which side of the class a wall calls side 0.
  std::vector<int> cls(W), polarity(W), rep, cls_size;
  std::map<Orientation, int> class_of;
  for (int w = 0; w < W; ++w) {
    Orientation column(P);
    for (int i = 0; i < P; ++i) column[i] = seeds[i][w];
    int pol = column.empty() ? 0 : column[0];
    if (pol)
      for (signed char& s : column) s = static_cast<signed char>(1 - s);
    auto [it, fresh] =
        class_of.try_emplace(std::move(column), static_cast<int>(rep.size()));
    if (fresh) {
      rep.push_back(w);
      cls_size.push_back(0);
    }
    cls[w] = it->second;
    polarity[w] = pol;
    ++cls_size[it->second];
  }
  int K = static_cast<int>(rep.size());

  auto expand = [&](const Orientation& by_class) {
    Orientation o(W);
    for (int w = 0; w < W; ++w)
      o[w] = static_cast<signed char>(by_class[cls[w]] ^ polarity[w]);
    return o;
  };
  Compat compat(K);
  std::vector<Orientation> class_seeds(P, Orientation(K));
  for (int i = 0; i < P; ++i) {
    for (int w = 0; w < W; ++w)
      class_seeds[i][cls[w]] =
          static_cast<signed char>(seeds[i][w] ^ polarity[w]);
    compat.witness(class_seeds[i]);
  }

  // 0-cubes: seed orientations closed under consistent class flips.
  std::vector<Orientation> by_class;
  std::map<Orientation, int> class_index;
  std::deque<int> queue;
  auto intern = [&](Orientation o) {
    auto [it, fresh] = class_index.try_emplace(std::move(o), -1);
    if (!fresh) return it->second;
    if (static_cast<long>(by_class.size()) >= budget) {
      C.complete = false;
      class_index.erase(it);
      return -1;
    }
    it->second = static_cast<int>(by_class.size());
    by_class.push_back(it->first);
    queue.push_back(it->second);
    return it->second;
  };
  for (int i = 0; i < P; ++i) C.principal.push_back(intern(class_seeds[i]));
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    for (int k = 0; k < K; ++k) {
      Orientation o = by_class[id];  // copy: by_class may reallocate
      int s = 1 - o[k];
      if (!compat.flip_ok(o, k, s)) continue;
      o[k] = static_cast<signed char>(s);
      intern(std::move(o));
    }
  }

  int V = static_cast<int>(by_class.size());
  for (int v = 0; v < V; ++v) {
    C.cubes0.push_back(expand(by_class[v]));
    C.index.emplace(C.cubes0.back(), v);
  }

  // 1-cubes: orientations differing on exactly one parallel class.
  std::vector<std::vector<int>> neighbor(V, std::vector<int>(K, -1));
  C.adj.assign(V, {});
  for (int v = 0; v < V; ++v)
    for (int k = 0; k < K; ++k) {
      Orientation o = by_class[v];
      o[k] = static_cast<signed char>(1 - o[k]);
      auto it = class_index.find(o);
      if (it == class_index.end()) continue;
      int u = it->second;
      neighbor[v][k] = u;
      if (v < u) {
        C.edges.push_back({v, u});
        C.edge_wall.push_back(rep[k]);
        C.edge_weight.push_back(cls_size[k]);
        C.adj[v].push_back(u);
        C.adj[u].push_back(v);
      }
    }
  C.cubes[0] = V;
  if (max_dim >= 1) C.cubes[1] = static_cast<long>(C.edges.size());

  // Higher cubes, rooted at their all-side-0 corner so each counts once.
  for (int v = 0; v < V; ++v) {
    std::vector<int> flippable;
    for (int k = 0; k < K; ++k)
      if (by_class[v][k] == 0 && neighbor[v][k] >= 0) flippable.push_back(k);
    std::vector<int> corners{v};
    count_cubes_rec(neighbor, flippable, 0, corners, 0, max_dim, C.cubes);
  }
  for (int d = 0; d <= max_dim; ++d)
    if (C.cubes[d] > 0) C.dimension = d;
  return C;
}

bool is_median(const std::vector<std::vector<int>>& adj,
               unsigned long long seed) {
  int V = static_cast<int>(adj.size());
  if (V == 0) throw ContractError("median check needs a nonempty graph");
  std::vector<int> d0 = bfs_dist(adj, 0);
  for (int v = 0; v < V; ++v)
    if (d0[v] < 0) throw ContractError("median check needs a connected graph");
  if (V == 1) return true;

  if (V <= 200) {
    std::vector<std::vector<int>> dist(V);
    for (int v = 0; v < V; ++v) dist[v] = bfs_dist(adj, v);
    for (int a = 0; a < V; ++a)
      for (int b = a + 1; b < V; ++b)
        for (int c = b + 1; c < V; ++c)
          if (!unique_median(dist[a], dist[b], dist[c], a, b, c)) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, V - 1);
  std::map<int, std::vector<int>> cache;
  auto dist_from = [&](int v) -> const std::vector<int>& {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, bfs_dist(adj, v)).first;
    return it->second;
  };
  for (int trial = 0; trial < 10000; ++trial) {
    int a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || b == c || a == c) continue;
    if (!unique_median(dist_from(a), dist_from(b), dist_from(c), a, b, c))
      return false;
  }
  return true;
}

DistanceReport verify_distance(
    const DualComplex& complex, const WallSpace& ws,
    const std::vector<std::pair<CoverVertex, CoverVertex>>& pairs) {
  DistanceReport report;
  int W = static_cast<int>(ws.walls.size());
  auto cube_of = [&](const CoverVertex& v) {
    Orientation o(W);
    for (int w = 0; w < W; ++w)
      o[w] = static_cast<signed char>(wall_side(ws, w, v));
    return complex.vertex(o);
  };
  // edges weighted by parallel class size: distance counts walls crossed
  std::vector<std::vector<std::pair<int, int>>> wadj(complex.cubes0.size());
  for (size_t i = 0; i < complex.edges.size(); ++i) {
    auto [a, b] = complex.edges[i];
    wadj[a].push_back({b, complex.edge_weight[i]});
    wadj[b].push_back({a, complex.edge_weight[i]});
  }
  auto dijkstra = [&](int source) {
    std::vector<int> d(wadj.size(), -1);
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                        std::greater<>>
        heap;
    heap.push({0, source});
    while (!heap.empty()) {
      auto [dv, v] = heap.top();
      heap.pop();
      if (d[v] >= 0) continue;
      d[v] = dv;
      for (auto [u, weight] : wadj[v])
        if (d[u] < 0) heap.push({dv + weight, u});
    }
    return d;
  };
  std::map<int, std::vector<int>> cache;
  for (const auto& [x, y] : pairs) {
    DistanceReport::Entry e;
    e.x = x;
    e.y = y;
    try {
      e.separation = separation_count(ws, x, y);
      int cx = cube_of(x), cy = cube_of(y);
      if (cx >= 0 && cy >= 0) {
        auto it = cache.find(cx);
        if (it == cache.end()) it = cache.emplace(cx, dijkstra(cx)).first;
        e.distance = it->second[cy];
        e.ok = e.distance == e.separation;
      }
    } catch (const Error&) {
      // unlabeled pair: reported as a failure, never an exception
    }
    report.all_ok = report.all_ok && e.ok;
    report.entries.push_back(std::move(e));
  }
  return report;
}

namespace {

// One attempt at an n-fold witness; empty path on failure.
bool try_witness(const CoverBall& cover, const WallSpace& ws, int n,
                 GrowthWitness& out) {
  const CayleyBall& ball = cover.base;
  int V = static_cast<int>(ball.vertices.size());

  // Separating analyses, nearest translates first.
  std::vector<int> order;
  for (size_t i = 0; i < ws.analyses.size(); ++i)
    if (ws.analyses[i].separating) order.push_back(static_cast<int>(i));
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int da = ball.dist[ball.vertex(ws.analyses[a].cutset.translate)];
    int db = ball.dist[ball.vertex(ws.analyses[b].cutset.translate)];
    return da != db ? da < db : a < b;
  });

  // Longest chain of pairwise disjoint cutsets labeling one base vertex
  // (first such vertex). Fixing the chain and truncating it to n keeps the
  // witnesses for different n nested, so the counts are nondecreasing.
  std::vector<int> chain;
  int v0 = -1;
  for (int v = 0; v < V; ++v) {
    std::vector<int> chosen;
    for (int idx : order) {
      const ComponentAnalysis& an = ws.analyses[idx];
      if (an.base_component[v] < 0) continue;
      bool disjoint = true;
      for (int other : chosen) {
        for (int u : ws.analyses[other].cutset.vertices)
          if (an.cutset.vertices.count(u)) {
            disjoint = false;
            break;
          }
        if (!disjoint) break;
      }
      if (disjoint) chosen.push_back(idx);
    }
    if (chosen.size() > chain.size()) {
      chain = std::move(chosen);
      v0 = v;
    }
  }
  if (static_cast<int>(chain.size()) < n) return false;
  std::vector<int> chosen(chain.begin(), chain.begin() + n);

  // Cross each cutset through one loop edge carrying its self key (exact
  // key preferred); travel between crossings along the spanning tree, whose
  // edges are voltage free, so the endpoint fiber flips exactly the n keys.
  Word path;
  int cur = v0;
  auto walk_to = [&](int target) {
    Word back = inverse_word(ball.vertices[cur]);
    path.insert(path.end(), back.begin(), back.end());
    const Word& fwd = ball.vertices[target];
    path.insert(path.end(), fwd.begin(), fwd.end());
    cur = target;
  };
  for (int idx : chosen) {
    const ComponentAnalysis& an = ws.analyses[idx];
    int eu = -1, eslot = -1;
    std::pair<int, int> fallback{-1, -1};
    for (const auto& [u, slot] : an.cutset.cut_edges) {
      const QVec& w = cover.weight(u, slot);
      if (!w.bits.count(an.self_key)) continue;
      if (w.bits.size() == 1) {
        eu = u;
        eslot = slot;
        break;
      }
      if (fallback.first < 0) fallback = {u, slot};
    }
    if (eu < 0) std::tie(eu, eslot) = fallback;
    if (eu < 0) return false;  // no loop edge carries the self key
    walk_to(eu);
    path.push_back(slot_letter(eslot));
    cur = ball.adj[eu][eslot];
  }
  walk_to(v0);

  out = GrowthWitness{};
  out.x = {v0, {}};
  out.y = lift_path(cover, path, out.x);
  if (out.y.base != v0)
    throw ContractError("growth witness path does not close over its base");
  out.path = std::move(path);
  out.cutsets = chosen;

  // Certified crossings: traversals of loop edges whose voltage carries the
  // cutset's self key.
  out.crossings.assign(chosen.size(), 0);
  cur = v0;
  for (Letter s : out.path) {
    int slot = letter_slot(s);
    for (size_t i = 0; i < chosen.size(); ++i) {
      const ComponentAnalysis& an = ws.analyses[chosen[i]];
      if (an.cutset.cut_edges.count({cur, slot}) &&
          cover.weight(cur, slot).bits.count(an.self_key))
        ++out.crossings[i];
    }
    cur = ball.adj[cur][slot];
  }
  for (size_t i = 0; i < chosen.size(); ++i)
    if (!out.y.fiber.bits.count(ws.analyses[chosen[i]].self_key))
      return false;  // a foreign voltage cancelled this key

  for (int w = 0; w < static_cast<int>(ws.walls.size()); ++w) {
    if (std::find(chosen.begin(), chosen.end(), ws.walls[w].cutset) ==
        chosen.end())
      continue;
    try {
      if (wall_side(ws, w, out.x) != wall_side(ws, w, out.y))
        out.walls.push_back(w);
    } catch (const RangeError&) {
      // wall cannot place one of the labels; it contributes no separation
    }
  }
  out.separation = static_cast<int>(out.walls.size());
  return out.separation >= n;
}

}  // namespace

GrowthWitness growth_witness(const CoverBall& cover, const WallSpace& ws,
                             int n) {
  if (n < 1) throw ContractError("growth witness needs n >= 1");
  GrowthWitness w;
  if (try_witness(cover, ws, n, w)) return w;
  int feasible = 0;
  for (int m = n - 1; m >= 1 && feasible == 0; --m)
    if (try_witness(cover, ws, m, w)) feasible = m;
  throw RangeError("ball cannot host " + std::to_string(n) +
                   " disjoint separating cutsets over a common base; max "
                   "feasible n = " +
                   std::to_string(feasible));
}

}  // namespace relsep
