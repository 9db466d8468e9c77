#pragma once

#include "planemorph/drawing.hpp"
#include "planemorph/sp_tree.hpp"

namespace planemorph {

// quadrilateral cell of the canonical layout. N and S carry the poles of the
// owning tree node; boomerangs are nonconvex at their dent corner (E for a
// left boomerang, W for a right one), diamonds are rhombi with perpendicular
// diagonals NS and EW crossing at their midpoints.
struct Region {
  enum Kind { left_boomerang, right_boomerang, diamond };
  Kind kind = diamond;
  Point n, e, s, w;
};

// corners in boundary order N, E, S, W
std::vector<Point> region_polygon(const Region& r);

// exact tests on simple polygons given in boundary order; boundaries may
// touch, interiors may not
bool point_in_convex(const std::vector<Point>& poly, const Point& p, bool strict);
bool convex_interiors_disjoint(const std::vector<Point>& a, const std::vector<Point>& b);
bool region_contains(const Region& outer, const Region& inner);
bool region_interiors_disjoint(const Region& a, const Region& b);

// canonical straight-line drawing of the graph behind a decomposition tree,
// plus the region assigned to every tree node. Coordinates depend on the tree
// alone, so equal trees give identical frames.
struct CanonicalLayout {
  Drawing drawing;
  std::vector<Region> regions;  // indexed like t.nodes
};

CanonicalLayout canonical_layout(const DecompositionTree& t);
Drawing canonical_drawing(const DecompositionTree& t);

}  // namespace planemorph
