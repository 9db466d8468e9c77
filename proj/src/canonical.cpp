#include "planemorph/canonical.hpp"

#include <algorithm>
#include <stdexcept>

namespace planemorph {

std::vector<Point> region_polygon(const Region& r) { return {r.n, r.e, r.s, r.w}; }

namespace {

Point midpoint(const Point& a, const Point& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

// east lies to the left of the north-to-south axis
Point perp_east(const Point& d) { return {-d.y, d.x}; }

Point tip_of(const Region& r) {
  return r.kind == Region::left_boomerang ? r.w : r.e;
}
Point dent_of(const Region& r) {
  return r.kind == Region::left_boomerang ? r.e : r.w;
}
// boomerang = pole_tri(tip) minus the open pole_tri(dent)
std::vector<Point> pole_tri(const Region& r, const Point& apex) {
  return {r.n, apex, r.s};
}

Rat dist2_point_seg(const Point& p, const Point& a, const Point& b) {
  Point d = b - a;
  Rat len2 = dot(d, d);
  if (sign(len2) == 0) {
    Point w = p - a;
    return dot(w, w);
  }
  Rat t = dot(p - a, d) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  Point w = p - (a + t * d);
  return dot(w, w);
}

Rat dist2_to_boundary(const Point& p, const Region& r) {
  auto poly = region_polygon(r);
  Rat best;
  for (size_t i = 0; i < poly.size(); ++i) {
    Rat d2 = dist2_point_seg(p, poly[i], poly[(i + 1) % poly.size()]);
    if (i == 0 || d2 < best) best = d2;
  }
  return best;
}

// true when some edge line of p has every vertex of q on its non-interior side
bool separated_by(const std::vector<Point>& p, const std::vector<Point>& q) {
  int s = sign(signed_area2(p));
  if (s == 0) throw std::logic_error("degenerate region polygon");
  for (size_t i = 0; i < p.size(); ++i) {
    const Point& a = p[i];
    const Point& b = p[(i + 1) % p.size()];
    bool out = true;
    for (const Point& v : q)
      if (orient(a, b, v) * s > 0) {
        out = false;
        break;
      }
    if (out) return true;
  }
  return false;
}

}  // namespace

bool point_in_convex(const std::vector<Point>& poly, const Point& p, bool strict) {
  int s = sign(signed_area2(poly));
  if (s == 0) throw std::logic_error("degenerate region polygon");
  for (size_t i = 0; i < poly.size(); ++i) {
    int o = orient(poly[i], poly[(i + 1) % poly.size()], p);
    if (o * s < 0 || (strict && o == 0)) return false;
  }
  return true;
}

bool convex_interiors_disjoint(const std::vector<Point>& a, const std::vector<Point>& b) {
  return separated_by(a, b) || separated_by(b, a);
}

bool region_contains(const Region& outer, const Region& inner) {
  auto ip = region_polygon(inner);
  if (outer.kind == Region::diamond) {
    auto op = region_polygon(outer);
    for (const Point& p : ip)
      if (!point_in_convex(op, p, false)) return false;
    return true;
  }
  // a boomerang hosts only convex cells, so corner checks settle the hull and
  // a separation test keeps the cell out of the dent hole
  if (inner.kind != Region::diamond)
    throw std::logic_error("boomerang nested directly inside a boomerang");
  auto hull = pole_tri(outer, tip_of(outer));
  for (const Point& p : ip)
    if (!point_in_convex(hull, p, false)) return false;
  return convex_interiors_disjoint(ip, pole_tri(outer, dent_of(outer)));
}

bool region_interiors_disjoint(const Region& a, const Region& b) {
  if (a.kind == Region::diamond && b.kind == Region::diamond)
    return convex_interiors_disjoint(region_polygon(a), region_polygon(b));
  if (a.kind != Region::diamond && b.kind != Region::diamond) {
    if (convex_interiors_disjoint(pole_tri(a, tip_of(a)), pole_tri(b, tip_of(b))))
      return true;
    auto inside_hole = [](const Region& x, const Region& hole_owner) {
      auto hole = pole_tri(hole_owner, dent_of(hole_owner));
      return point_in_convex(hole, x.n, false) && point_in_convex(hole, x.s, false) &&
             point_in_convex(hole, tip_of(x), false);
    };
    return inside_hole(a, b) || inside_hole(b, a);
  }
  // diamond against a boomerang: each diamond half either clears the hull
  // triangle or sits inside the dent hole
  const Region& c = a.kind == Region::diamond ? b : a;
  const Region& d = a.kind == Region::diamond ? a : b;
  auto hull = pole_tri(c, tip_of(c));
  auto hole = pole_tri(c, dent_of(c));
  auto half_clear = [&](const std::vector<Point>& h) {
    if (convex_interiors_disjoint(h, hull)) return true;
    for (const Point& p : h)
      if (!point_in_convex(hole, p, false)) return false;
    return true;
  };
  return half_clear({d.n, d.e, d.s}) && half_clear({d.n, d.s, d.w});
}

namespace {

struct Builder {
  const DecompositionTree& t;
  CanonicalLayout out;

  explicit Builder(const DecompositionTree& tree) : t(tree) {
    out.drawing.graph = tree.graph;
    out.regions.resize(tree.nodes.size());
  }

  const DecompNode& node(int i) const { return t.nodes[i]; }

  void put(int v, const Point& p) {
    auto [it, fresh] = out.drawing.pos.emplace(v, p);
    if (!fresh && !(it->second == p))
      throw std::logic_error("canonical layout placed a vertex at two points");
  }

  bool outer_has_dart(int u, int v) const {
    for (auto& e : t.graph.outer)
      if (e.first == u && e.second == v) return true;
    return false;
  }

  CanonicalLayout run() {
    const DecompNode& root = node(t.root);
    if (root.kind != DecompNode::Q)
      throw std::logic_error("decomposition root is not an edge node");
    Point N{Rat(0), Rat(1)}, S{Rat(0), Rat(-1)};
    put(root.s, N);
    put(root.t, S);
    out.regions[t.root] = {Region::diamond, N, Point{Rat(2), Rat(0)}, S,
                           Point{Rat(-2), Rat(0)}};
    if (!root.children.empty()) {
      if (root.children.size() != 1)
        throw std::logic_error("edge root must carry a single child");
      int c = root.children[0];
      // the graph hangs east of the root segment exactly when the outer walk
      // runs t to s there, leaving the west side unbounded
      bool east = outer_has_dart(root.t, root.s);
      if (node(c).kind == DecompNode::S) {
        Region r;
        r.kind = east ? Region::right_boomerang : Region::left_boomerang;
        r.n = N;
        r.s = S;
        if (east) {
          r.e = {Rat(2), Rat(0)};
          r.w = {Rat(1), Rat(0)};
        } else {
          r.e = {Rat(-1), Rat(0)};
          r.w = {Rat(-2), Rat(0)};
        }
        out.regions[c] = r;
        series(c);
      } else if (node(c).kind == DecompNode::P) {
        out.regions[c] = out.regions[t.root];
        parallel(c, !east);
      } else {
        throw std::logic_error("edge root cannot parent another edge");
      }
    }
    if (out.drawing.pos.size() != t.graph.vertex_count())
      throw std::logic_error("canonical layout missed vertices");
    return std::move(out);
  }

  // chains live in boomerangs: vertices are spread over the polyline
  // N -> C -> S with ceil(k/2) equal parts above the bend and floor(k/2) below
  void series(int idx) {
    const DecompNode& nd = node(idx);
    const Region& R = out.regions[idx];
    if (R.kind == Region::diamond)
      throw std::logic_error("chain node assigned a diamond");
    Point C = midpoint(R.e, R.w);
    int k = (int)nd.children.size();
    if (k < 2) throw std::logic_error("chain node with a single child");
    int a = (k + 1) / 2;
    int b = k - a;
    auto joint = [&](int j) -> Point {
      if (j <= a) return R.n + frac(j, a) * (C - R.n);
      return C + frac(j - a, b) * (R.s - C);
    };
    if (!(out.drawing.pos.at(nd.s) == R.n) || !(out.drawing.pos.at(nd.t) == R.s))
      throw std::logic_error("chain poles differ from the region poles");
    for (int i = 0; i + 1 < k; ++i) {
      if (node(nd.children[i]).t != node(nd.children[i + 1]).s)
        throw std::logic_error("chain children out of series order");
      put(node(nd.children[i]).t, joint(i + 1));
    }

    // one rhombus cell per child, half-width bounded by a quarter of the
    // segment-to-boundary distance, then shrunk until the cells are inside
    // the chain's region and pairwise internally disjoint
    std::vector<Region> cell(k);
    for (int i = 0; i < k; ++i) {
      Point A = joint(i), B = joint(i + 1);
      Point d = B - A;
      Point M = midpoint(A, B);
      Rat len2 = dot(d, d);
      Rat d2 = dist2_to_boundary(M, R);
      if (sign(len2) <= 0 || sign(d2) <= 0)
        throw std::logic_error("degenerate chain segment");
      Rat v = d2 / (16 * len2);
      Rat h = sqrt_lower(v);
      if (sign(h) <= 0) h = v < 1 ? v : Rat(1);
      Point off = h * perp_east(d);
      cell[i] = {Region::diamond, A, M + off, B, M - off};
    }
    for (int round = 0;; ++round) {
      if (round > 256) throw std::logic_error("chain cells failed to separate");
      bool again = false;
      auto halve = [&](int i) {
        Point M = midpoint(cell[i].n, cell[i].s);
        cell[i].e = midpoint(M, cell[i].e);
        cell[i].w = midpoint(M, cell[i].w);
        again = true;
      };
      for (int i = 0; i < k; ++i)
        if (!region_contains(R, cell[i])) halve(i);
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (!region_interiors_disjoint(cell[i], cell[j])) {
            halve(i);
            halve(j);
          }
      if (!again) break;
    }
    for (int i = 0; i < k; ++i) {
      int c = nd.children[i];
      out.regions[c] = cell[i];
      if (node(c).kind == DecompNode::P)
        parallel(c, false);
      else if (node(c).kind == DecompNode::S)
        throw std::logic_error("chain nested directly inside a chain");
    }
  }

  // branches live in a diamond: crescents anchored at the east corner before
  // the direct edge in child order, at the west corner after it; without a
  // direct edge everything goes east (west at the root when the outer walk
  // demands it)
  void parallel(int idx, bool root_west) {
    const DecompNode& nd = node(idx);
    const Region R = out.regions[idx];
    if (R.kind != Region::diamond)
      throw std::logic_error("branch node assigned a boomerang");
    Point C = midpoint(R.e, R.w);
    int qi = -1;
    for (size_t i = 0; i < nd.children.size(); ++i)
      if (node(nd.children[i]).kind == DecompNode::Q) {
        if (qi >= 0) throw std::logic_error("branch node with two direct edges");
        qi = (int)i;
      }
    std::vector<int> east, west;
    if (qi >= 0) {
      east.assign(nd.children.begin(), nd.children.begin() + qi);
      west.assign(nd.children.begin() + qi + 1, nd.children.end());
      std::reverse(west.begin(), west.end());  // stored west side runs inside out
    } else if (root_west) {
      west.assign(nd.children.begin(), nd.children.end());
      std::reverse(west.begin(), west.end());
    } else {
      east.assign(nd.children.begin(), nd.children.end());
    }
    side(east, R, C, true);
    side(west, R, C, false);
    if (qi >= 0) {
      // thin rhombus for the direct edge, symmetric inside the two innermost
      // gaps so it stays clear of every crescent
      Rat le = east.empty() ? frac(1, 2) : frac(1, 2 * (2 * (long)east.size() + 1));
      Rat lw = west.empty() ? frac(1, 2) : frac(1, 2 * (2 * (long)west.size() + 1));
      Rat lam = le < lw ? le : lw;
      Point off = lam * (R.e - C);
      out.regions[nd.children[qi]] = {Region::diamond, R.n, C + off, R.s, C - off};
    }
  }

  // crescents between nested pole triangles with apexes on the half diagonal:
  // 2m+2 equidistant points from the corner to the center, child i from the
  // outside taking apexes 2i and 2i+1, one buffer point between neighbors
  void side(const std::vector<int>& kids, const Region& R, const Point& C, bool east) {
    int m = (int)kids.size();
    Point X = east ? R.e : R.w;
    for (int i = 1; i <= m; ++i) {
      int c = kids[i - 1];
      if (node(c).kind != DecompNode::S)
        throw std::logic_error("branch child is not a chain");
      Point tip = X + frac(2 * i - 1, 2 * m + 1) * (C - X);
      Point dent = X + frac(2 * i, 2 * m + 1) * (C - X);
      Region r;
      r.kind = east ? Region::right_boomerang : Region::left_boomerang;
      r.n = R.n;
      r.s = R.s;
      if (east) {
        r.e = tip;
        r.w = dent;
      } else {
        r.w = tip;
        r.e = dent;
      }
      out.regions[c] = r;
      series(c);
    }
  }
};

}  // namespace

CanonicalLayout canonical_layout(const DecompositionTree& t) {
  return Builder(t).run();
}

Drawing canonical_drawing(const DecompositionTree& t) {
  return canonical_layout(t).drawing;
}

}  // namespace planemorph
