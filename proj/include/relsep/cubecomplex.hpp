#pragma once

#include "relsep/walls.hpp"

namespace relsep {

// Side choice (0 or 1) per wall of a WallSpace, indexed like ws.walls. An
// orientation is consistent when every pair of chosen sides is witnessed by
// some seed point: consistency over a single finite ground set is what makes
// the dual a genuine wallspace dual, hence median.
using Orientation = std::vector<signed char>;

struct DualComplex {
  std::vector<Orientation> cubes0;  // vertex orientations (0-cubes)
  std::map<Orientation, int> index;
  std::vector<std::pair<int, int>> edges;  // 1-cubes, endpoints by vertex id
  std::vector<int> edge_wall;    // representative wall flipped along the edge
  std::vector<int> edge_weight;  // parallel walls flipped along the edge
  std::vector<std::vector<int>> adj;  // 1-skeleton adjacency
  std::vector<long> cubes;            // count per dimension (0..max_dim)
  int dimension = 0;     // top dimension with a cube
  bool complete = true;  // false when the flip closure hit its budget
  std::vector<int> principal;  // 0-cube id of each seed point, input order

  int vertex(const Orientation& o) const;  // -1 when absent
};

// Dual cube complex of the wallspace over the given seed points: 0-cubes are
// the principal orientations of the seeds plus the closure under flips that
// keep every wall pair on a seed-witnessed side combination. Walls whose
// seed partitions coincide (up to swapping sides) are parallel over this
// ground set and can only flip together, so flips act on parallel classes
// and each edge records how many walls it crosses. Higher cubes are filled
// greedily up to max_dim. Every seed must be labeled on every wall
// (RangeError otherwise); exceeding the vertex budget leaves a partial
// complex flagged via `complete`.
DualComplex build_dual(const WallSpace& ws,
                       const std::vector<CoverVertex>& points,
                       int max_dim = 4, long budget = 100000);

// Every triple of vertices has a unique median (a vertex on geodesics
// between all three pairs). Exhaustive for <= 200 vertices, otherwise 10^4
// sampled triples. ContractError on an empty or disconnected graph.
bool is_median(const std::vector<std::vector<int>>& adj,
               unsigned long long seed = 12345);

// Per-pair comparison of 1-skeleton distance between principal 0-cubes with
// the wall separation count. Edges count with their parallel-class weight,
// so the distance is the number of walls crossed.
struct DistanceReport {
  struct Entry {
    CoverVertex x, y;
    int distance = -1;  // -1 when a principal cube is missing or unlabeled
    int separation = 0;
    bool ok = false;
  };
  std::vector<Entry> entries;
  bool all_ok = true;
};

DistanceReport verify_distance(
    const DualComplex& complex, const WallSpace& ws,
    const std::vector<std::pair<CoverVertex, CoverVertex>>& pairs);

// Unbounded-orbit witness: a closed-projection path from x over a common
// base vertex, crossing n pairwise disjoint separating cutsets through one
// voltage-carrying loop edge each, so the endpoint fiber flips every chosen
// self key and at least n walls separate x from y.
struct GrowthWitness {
  CoverVertex x, y;
  Word path;                   // edge path from x to y in the cover
  std::vector<int> cutsets;    // chosen analysis indices, crossing order
  std::vector<int> crossings;  // certified loop-edge crossings per cutset
  std::vector<int> walls;      // separating walls of the chosen cutsets
  int separation = 0;
};

// RangeError naming the maximum feasible n when the ball cannot host n
// disjoint separating cutsets with a common labeled base vertex.
GrowthWitness growth_witness(const CoverBall& cover, const WallSpace& ws,
                             int n);

}  // namespace relsep
