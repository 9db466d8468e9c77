#include "planemorph/geometry.hpp"

#include <cassert>
#include <utility>

namespace planemorph {

Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(const Rat& s, const Point& p) { return {s * p.x, s * p.y}; }

Rat cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
Rat dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

int orient(const Point& p, const Point& q, const Point& r) {
  return sign(cross(q - p, r - p));
}

bool on_closed_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  return dot(p - a, b - a) >= 0 && dot(p - b, a - b) >= 0;
}

bool on_open_segment(const Point& p, const Point& a, const Point& b) {
  if (orient(a, b, p) != 0) return false;
  return dot(p - a, b - a) > 0 && dot(p - b, a - b) > 0;
}

bool properly_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool closed_segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (properly_cross(a, b, c, d)) return true;
  return on_closed_segment(c, a, b) || on_closed_segment(d, a, b) ||
         on_closed_segment(a, c, d) || on_closed_segment(b, c, d);
}

// half 0 covers angles in [0, pi), half 1 the rest
static int angular_half(const Point& d) {
  assert(d.x != 0 || d.y != 0);
  if (d.y > 0 || (d.y == 0 && d.x > 0)) return 0;
  return 1;
}

bool ccw_less(const Point& u, const Point& v) {
  int hu = angular_half(u), hv = angular_half(v);
  if (hu != hv) return hu < hv;
  return cross(u, v) > 0;
}

Rat signed_area2(const std::vector<Point>& poly) {
  Rat s = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    s += cross(p, q);
  }
  return s;
}

Lin lin_sub(const Lin& a, const Lin& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }

Quad mul(const Lin& a, const Lin& b) {
  return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c1 * b.c1};
}

Quad add(const Quad& a, const Quad& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
Quad sub(const Quad& a, const Quad& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }

Point MovingPoint::at(const Rat& t) const {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

Quad orient_poly(const MovingPoint& p, const MovingPoint& q, const MovingPoint& r) {
  Lin ux = lin_sub(q.x(), p.x()), uy = lin_sub(q.y(), p.y());
  Lin vx = lin_sub(r.x(), p.x()), vy = lin_sub(r.y(), p.y());
  return sub(mul(ux, vy), mul(uy, vx));
}

Quad dot_poly(const MovingPoint& base, const MovingPoint& p1, const MovingPoint& p2) {
  Lin ux = lin_sub(p1.x(), base.x()), uy = lin_sub(p1.y(), base.y());
  Lin vx = lin_sub(p2.x(), base.x()), vy = lin_sub(p2.y(), base.y());
  return add(mul(ux, vx), mul(uy, vy));
}

Quad dist2_poly(const MovingPoint& p, const MovingPoint& q) {
  Lin dx = lin_sub(q.x(), p.x()), dy = lin_sub(q.y(), p.y());
  return add(mul(dx, dx), mul(dy, dy));
}

// one bisection step keeping the sign change invariant; midpoints are rational
// and the enclosed root is not, so f(mid) never vanishes
static void bisect(QuadRoot& r) {
  Rat mid = (r.lo + r.hi) / 2;
  int sm = sign(r.f.at(mid));
  assert(sm != 0);
  if (sm == sign(r.f.at(r.lo)))
    r.lo = mid;
  else
    r.hi = mid;
}

void refine_excluding(QuadRoot& r, const Rat& p) {
  if (r.rational) return;
  while (r.lo <= p && p <= r.hi) bisect(r);
}

void refine_to_width(QuadRoot& r, const Rat& width) {
  if (r.rational) return;
  while (r.hi - r.lo > width) bisect(r);
}

static QuadRoot rational_root(const Quad& f, const Rat& v) {
  return {f, true, v, v, v};
}

std::vector<QuadRoot> roots_in_unit(const Quad& f) {
  assert(!f.is_zero());
  std::vector<QuadRoot> out;
  auto keep = [&](const Rat& v) {
    if (v >= 0 && v <= 1) out.push_back(rational_root(f, v));
  };
  if (f.c2 == 0) {
    if (f.c1 == 0) return out;  // nonzero constant
    keep(Rat(-f.c0 / f.c1));
    return out;
  }
  Rat disc = f.c1 * f.c1 - 4 * f.c2 * f.c0;
  int ds = sign(disc);
  if (ds < 0) return out;
  Rat vertex = -f.c1 / (2 * f.c2);
  if (ds == 0) {
    keep(vertex);
    return out;
  }
  if (auto sd = sqrt_exact(disc)) {
    Rat r1 = (-f.c1 - *sd) / (2 * f.c2);
    Rat r2 = (-f.c1 + *sd) / (2 * f.c2);
    if (r1 > r2) std::swap(r1, r2);
    keep(r1);
    keep(r2);
    return out;
  }
  // irrational pair straddling the vertex; outer bound strictly beyond both
  Rat bound = 1 + rat_abs(f.c1 / f.c2) + rat_abs(f.c0 / f.c2);
  QuadRoot low{f, false, 0, vertex - bound, vertex};
  QuadRoot high{f, false, 0, vertex, vertex + bound};
  for (QuadRoot* r : {&low, &high}) {
    // f is nonzero at the vertex (disc > 0 would force a double root there)
    // and at the outer bound, so the sign change invariant holds already
    refine_excluding(*r, 0);
    refine_excluding(*r, 1);
    if (r->hi <= 0 || r->lo >= 1) continue;
    out.push_back(*r);
  }
  return out;
}

int sign_at(const Quad& g, QuadRoot& r) {
  if (r.rational) return sign(g.at(r.value));
  // remainder of g modulo r.f is linear and agrees with g at the root
  Rat q = g.c2 / r.f.c2;
  Rat r1 = g.c1 - q * r.f.c1;
  Rat r0 = g.c0 - q * r.f.c0;
  if (r1 == 0) return sign(r0);
  Rat rho = -r0 / r1;
  refine_excluding(r, rho);
  int side = rho <= r.lo ? 1 : -1;  // sign of root - rho
  return sign(r1) * side;
}

Rat root_lb(const QuadRoot& r) { return r.rational ? r.value : r.lo; }
Rat root_ub(const QuadRoot& r) { return r.rational ? r.value : r.hi; }

static bool proportional(const Quad& f, const Quad& g) {
  return f.c2 * g.c1 == f.c1 * g.c2 && f.c2 * g.c0 == f.c0 * g.c2;
}

int root_compare(QuadRoot& a, QuadRoot& b) {
  if (a.rational && b.rational) return sign(Rat(a.value - b.value));
  if (a.rational) {
    // b's polynomial has no rational roots, so the values differ
    refine_excluding(b, a.value);
    return a.value <= b.lo ? -1 : 1;
  }
  if (b.rational) return -root_compare(b, a);
  if (proportional(a.f, b.f)) {
    // same real roots; construction keeps each interval on one side of the
    // shared vertex, so compare sides
    Rat vertex = -a.f.c1 / (2 * a.f.c2);
    int sa = a.hi <= vertex ? 0 : 1;
    int sb = b.hi <= vertex ? 0 : 1;
    return sa - sb;
  }
  // distinct quadratics never share an irrational root: the remainder of one
  // modulo the other is a nonzero linear with a rational zero
  for (;;) {
    if (a.hi <= b.lo) return -1;
    if (b.hi <= a.lo) return 1;
    if (a.hi - a.lo >= b.hi - b.lo)
      bisect(a);
    else
      bisect(b);
  }
}

void separate_roots(std::vector<QuadRoot>& roots) {
  // insertion sort so the mutating comparator is safe
  for (size_t i = 1; i < roots.size(); ++i)
    for (size_t j = i; j > 0 && root_compare(roots[j - 1], roots[j]) > 0; --j)
      std::swap(roots[j - 1], roots[j]);
  std::vector<QuadRoot> dedup;
  for (auto& r : roots) {
    if (!dedup.empty() && root_compare(dedup.back(), r) == 0) continue;
    dedup.push_back(r);
  }
  roots.swap(dedup);
}

}  // namespace planemorph
