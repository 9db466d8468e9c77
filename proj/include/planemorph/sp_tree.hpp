#pragma once

#include "planemorph/drawing.hpp"

namespace planemorph {

// biconnected components; every edge lies in exactly one block
struct BlockStructure {
  std::vector<std::vector<std::pair<int, int>>> blocks;
  std::set<int> cut_vertices;
};

BlockStructure block_structure(const PlaneGraph& g);

// sp holds iff every block reduces to a single edge by series and parallel
// reductions; otherwise witness lists the four branch vertices of a
// subdivided complete graph on four vertices found inside some block
struct SpCheck {
  bool sp = false;
  std::vector<int> witness;
};

SpCheck recognize_series_parallel(const PlaneGraph& g);

struct DecompNode {
  enum Kind { Q, S, P };
  Kind kind = Q;
  int s = -1, t = -1;          // poles, oriented parent-source to parent-target
  std::vector<int> children;   // S: series order s to t; P: embedding order
};

// rooted at a distinguished outer-face edge; adjacent same-kind nodes merged,
// so S-nodes never parent S-nodes and P-nodes never parent P-nodes
struct DecompositionTree {
  PlaneGraph graph;
  std::vector<DecompNode> nodes;
  int root = -1;
  const DecompNode& at(int i) const { return nodes[i]; }
};

// g must be connected, biconnected, series-parallel, with edge (s,t) on the
// outer face; the result is deterministic in g's rotation lists
DecompositionTree build_decomposition_tree(const PlaneGraph& g, int s, int t);

// edges of the subgraph hanging below a node (the root yields every edge)
std::vector<std::pair<int, int>> tree_edges(const DecompositionTree& t, int node);

struct AugmentResult {
  PlaneGraph graph;
  std::vector<Drawing> drawings;
  std::vector<int> added;
};

// joins blocks of a connected series-parallel graph by inserting one new
// degree-2 vertex per excess block, placed near its cut vertex inside the
// angular gap between two blocks; every drawing stays valid and restricts
// back to the input exactly
AugmentResult biconnect_augment(const PlaneGraph& g, const std::vector<Drawing>& drawings);

}  // namespace planemorph
