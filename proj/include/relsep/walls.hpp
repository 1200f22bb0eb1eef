#pragma once

#include <set>

#include "relsep/cover.hpp"

namespace relsep {

// Cutset A_{r,r'} at translate k: the two half loops (as a subgraph: their
// vertices and edges) plus every component of the ball minus the loop EDGES
// that does not touch the ball boundary. A component missing the boundary
// has all its neighbors inside the ball, hence is a genuine finite component
// of the infinite complement.
struct CutsetA {
  int pair = 0;
  Word translate;               // canonical name of a ball vertex
  std::set<int> loop_vertices;  // k sigma_r union k sigma_r'
  std::set<std::pair<int, int>> cut_edges;  // loop edges as (vertex, slot)
  std::set<int> finite_vertices;  // vertices of finite complement components
  std::set<int> vertices;         // loop_vertices + finite_vertices
  int boundary_components = 0;  // potentially infinite complement components
  int finite_components = 0;
  int max_dist = 0;             // deepest ball distance reached by A
  int diameter = 0;             // ambient-ball diameter of A's vertex set
  bool finite_certified = false;

  // True when the edge (or its reverse) belongs to the removed subgraph.
  bool cuts(int v, int slot, int u) const {
    return cut_edges.count({v, slot}) || finite_vertices.count(v) ||
           finite_vertices.count(u);
  }
};

// Closed path at vertex k reading half j of pair i; returns the |r| visited
// vertices starting at k. RangeError if the loop exits the ball.
std::vector<int> sigma_loop(const CayleyBall& ball,
                            const HalvedPresentation& hp, int pair,
                            HalfRole which, const Word& k);

// margin: required annulus width between A and the ball boundary for the
// finite/infinite dichotomy to be trusted (uncertified otherwise, never an
// error).
CutsetA compute_A(const CayleyBall& ball, const HalvedPresentation& hp,
                  int pair, const Word& k, int margin);

// Translated half loops kappa sigma_rho meeting A, enumerated algebraically
// from A's vertices (kappa = v . prefix^-1), deduplicated by canonical name.
struct LSet {
  std::vector<std::pair<Word, int>> entries;  // (canonical kappa, half j)
  std::set<std::pair<Word, int>> keys;        // pairing keys (kappa, pair)
};

LSet compute_L(const CayleyBall& ball, const HalvedPresentation& hp,
               const WordProblemOracle& oracle, const CutsetA& A);

// Pairing profile of a fiber on the L keys: the coordinates, in the Psi
// basis, that the cutset's translated loops can see. Equal profiles certify
// the same component; the converse holds only for the cutset's own key (the
// "self key"), whose parity is a genuine component invariant.
using Profile = std::set<std::pair<Word, int>>;
// (base component of the ball minus A, representative profile of the class)
using ComponentLabel = std::pair<int, Profile>;

struct ComponentAnalysis {
  CutsetA cutset;
  LSet L;
  int inner_radius = 0;       // region radius around the cutset's translate
  bool region_complete = false;  // region untouched by the ball truncation
  std::pair<Word, int> self_key;    // (translate, pair): certified separator
  std::vector<int> base_component;  // per ball vertex, -1 outside the region
  std::vector<QVec> tree_offset;    // A-avoiding BFS tree voltages
  std::vector<int> component_root;  // BFS tree root per base component
  int base_components = 0;
  // profile -> representative of its merge class (profiles merge when the
  // exploration connects them; merged classes are certainly one component)
  std::map<Profile, Profile> class_rep;
  std::set<ComponentLabel> observed;  // labels seen on explored cover points
  std::vector<CoverVertex> sample;    // explored cover points (capped)
  long explored = 0;
  long merges = 0;            // profile-class merges found by exploration
  bool separating = false;    // both self-key parities observed, no clash
  bool within_bound = true;   // observed <= base_components * 2^{|keys|}
  bool consistent = true;     // no merge across self-key parity
};

// Dual-route component analysis over the inner region (base distance from
// the cutset's translate <= inner_radius): an explicit budgeted BFS in the
// cover minus the cutset
// preimage (removed as a subgraph, vertices included) merges profiles into
// component classes; the pairing certificate forbids merges across the
// self-key parity. `consistent` = false is a falsification event. Component
// claims are only made about the inner region: paths through the outer
// annulus or outside the ball could merge further.
ComponentAnalysis cover_components(const CoverBall& cover, const CutsetA& A,
                                   const LSet& L, int inner_radius,
                                   long budget);

// RangeError when v projects into A or outside the labeled region.
ComponentLabel label_of(const ComponentAnalysis& an, const CoverVertex& v);

// P_{T,R} of the projected loop of any cover path between two points over
// the same base vertex; ContractError if the bases differ.
QVec q_between(const CoverVertex& x, const CoverVertex& y);

struct Wall {
  int cutset = 0;  // index into WallSpace::analyses
  std::set<ComponentLabel> side0, side1;
  // Principal walls (one label vs everything else) assign labels never seen
  // during the analysis to side 1; parity-aligned walls (sides split exactly
  // along the certified self-key parity) place them by parity; other walls
  // reject them.
  bool principal = false;
  int parity_side0 = -1;  // self-key parity shared by side0, -1 if mixed
};

struct WallSpace {
  std::vector<ComponentAnalysis> analyses;
  std::vector<Wall> walls;
  std::vector<std::pair<int, int>> transverse;  // empirically transverse pairs
  int max_transverse_family = 0;                // M_emp
  bool capped = false;  // principal-partition cap applied somewhere
};

// Enumerates walls for the given (translate, pair) cutsets. Partitions are
// complete for <= 6 labels and capped to the principal (one-vs-rest)
// partitions plus the certified self-parity partition beyond that.
WallSpace enumerate_walls(const CoverBall& cover,
                          const std::vector<std::pair<Word, int>>& cutsets,
                          const WordProblemOracle& oracle, int margin,
                          int inner_radius, long budget);

// 0 or 1; RangeError if the vertex is unlabeled for the wall's cutset or its
// label is on neither side.
int wall_side(const WallSpace& ws, int wall, const CoverVertex& v);

// Number of walls separating the two cover vertices.
int separation_count(const WallSpace& ws, const CoverVertex& x,
                     const CoverVertex& y);

}  // namespace relsep
