#pragma once

#include "planemorph/geometry.hpp"
#include "planemorph/plane_graph.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace planemorph {

struct Drawing {
  PlaneGraph graph;
  std::map<int, Point> pos;

  const Point& at(int v) const { return pos.at(v); }
};

struct Violation {
  std::string kind;  // structure | coincident-points | vertex-on-edge |
                     // edge-crossing | rotation-mismatch | outer-face-mismatch |
                     // frame-chain
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;
  std::string detail;
  bool timed = false;
  Rat t_lo, t_hi;  // violation time window when timed
  int step = -1;   // index of the offending step inside a morph
};

struct ValidityReport {
  bool valid = true;
  std::vector<Violation> violations;
  void add(Violation v) {
    valid = false;
    violations.push_back(std::move(v));
  }
  std::string summary() const;
};

// full check of the drawing invariants: sound embedding, pairwise distinct
// points, no vertex on a non-incident open edge, no two edges properly
// crossing, clockwise angular order matching rotation, unbounded face
// matching outer. stop_early trades the full violation list for speed.
ValidityReport validate_drawing(const Drawing& d, bool stop_early = false);

struct ContractResult {
  bool ok = false;
  Drawing out;
  ValidityReport report;  // why the contracted drawing is not planar, on failure
};

// contraction of v onto x in the drawn graph; when (v,x) is not an edge the
// merge redirects v's edges to x with rotation slots read off the geometry.
// fails (with the validator's report) when the contracted drawing is not planar
ContractResult contract(const Drawing& d, int v, int x);

// re-insert v at p; the combinatorial embedding, v's slots included, comes
// from the recorded target graph
Drawing uncontract(const Drawing& d, const PlaneGraph& target, int v, const Point& p);

// true iff every open segment p-neighbor misses all edges and vertices of
// d_minus_v (endpoints excepted)
bool kernel_contains(const Drawing& d_minus_v, const std::vector<int>& neighbors,
                     const Point& p);

// drawing on the induced subgraph, outer face recomputed from geometry
Drawing induced_subdrawing(const Drawing& d, const std::set<int>& keep);

// add edge (u,w); rotation slots at both ends are picked by exact angular
// order. the caller guarantees the open segment is unobstructed.
void insert_edge_geometric(Drawing& d, int u, int w);
// add isolated vertex (transient state, connect it before validating)
void insert_vertex(Drawing& d, int v, const Point& p);
void remove_edge(Drawing& d, int u, int w);
void remove_vertex(Drawing& d, int v);  // drops incident edges

// vertex with the lexicographically least position; lies on the unbounded face
int leftmost_vertex(const Drawing& d);

// recompute the outer walk as the non-positive-area face through the
// leftmost non-isolated vertex
void set_outer_geometric(Drawing& d);

// clockwise angular order of neighbors around v induced by the positions;
// starts at the least neighbor id among direction ties broken by id
std::vector<int> geometric_cw_order(const Drawing& d, int v);

}  // namespace planemorph
