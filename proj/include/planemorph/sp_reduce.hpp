#pragma once

#include "planemorph/canonical.hpp"
#include "planemorph/morph.hpp"
#include "planemorph/sp_tree.hpp"

namespace planemorph {

// one elimination round. Two branches of the innermost parallel split bound a
// cycle with nothing drawn inside; triangulating that cycle either exposes a
// degree-two corner to contract away (ear_*), or proves every corner carries
// a chord, in which case the corner next to the source pole is detached over
// a dummy chord (braced_*)
struct ReductionCase {
  enum Kind {
    ear_path,      // removed corner leaves its path with two or more edges
    ear_drop,      // two-edge path collapses onto the parallel edge already present
    ear_new_edge,  // two-edge path is replaced by an edge new to the graph
    braced_split,  // pole corner detached, the split keeps several branches
    braced_chain,  // pole corner detached, the two-branch split dissolves
  };
  Kind kind = ear_path;
  int nu = -1;              // split node in the pre-reduction tree, -1 for a bare cycle
  std::vector<int> p1, p2;  // branch paths pole to pole, contracted vertex on p2
  int v = -1;               // contracted vertex
  int host = -1;            // neighbor it merges onto
  int u3 = -1;              // far neighbor of v along p2 in a braced case, else -1
  std::vector<std::pair<int, int>> chords;  // dummy triangulation edges of the cycle
};

struct ReduceResult {
  PseudoMorphTrace prefix;  // the contraction event, geometrically valid at d
  Drawing after;            // d with record.v merged onto record.host
  DecompositionTree tree;   // decomposition of the reduced graph, same root edge
  ReductionCase record;
};

// d must be a valid drawing of t.graph with at least three vertices. The
// choice of cycle, triangulation and corner is deterministic in (d, t)
ReduceResult reduce(const Drawing& d, const DecompositionTree& t);

// events from the canonical drawing of the reduced graph to
// canonical_drawing(t) exactly: verified linear steps around one
// uncontraction of rc.v, a constant number per call
PseudoMorphTrace restore(const Drawing& canonical_reduced, const ReductionCase& rc,
                         const DecompositionTree& t);

// pseudo-morph from d to the canonical drawing of its decomposition tree,
// rooted at the lexicographically least outer edge: an opening step, one
// contraction per reduction down to a single edge, the straightening of that
// edge onto the poles, and the mirrored uncontraction cascade. Every linear
// step passes verify_linear_step
PseudoMorphTrace sp_pseudo_morph_to_canonical(const PlaneGraph& g, const Drawing& d);

}  // namespace planemorph
