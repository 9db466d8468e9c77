#pragma once

#include "planemorph/rational.hpp"

#include <vector>

namespace planemorph {

struct Point {
  Rat x, y;
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rat& s, const Point& p);

Rat cross(const Point& u, const Point& v);
Rat dot(const Point& u, const Point& v);

// sign of the turn p -> q -> r: +1 left, -1 right, 0 collinear
int orient(const Point& p, const Point& q, const Point& r);

bool on_closed_segment(const Point& p, const Point& a, const Point& b);
bool on_open_segment(const Point& p, const Point& a, const Point& b);

// interiors cross transversally in one point, no endpoint involved
bool properly_cross(const Point& a, const Point& b, const Point& c, const Point& d);
// any contact between closed segments, collinear overlap included
bool closed_segments_touch(const Point& a, const Point& b, const Point& c, const Point& d);

// strict weak order of nonzero directions by counterclockwise angle from the
// positive x axis; parallel same-sense directions compare equivalent
bool ccw_less(const Point& u, const Point& v);

// twice the signed area of a closed polygon, positive when counterclockwise
Rat signed_area2(const std::vector<Point>& poly);

// c0 + c1 t
struct Lin {
  Rat c0, c1;
  Rat at(const Rat& t) const { return c0 + c1 * t; }
};

// c0 + c1 t + c2 t^2
struct Quad {
  Rat c0, c1, c2;
  Rat at(const Rat& t) const { return c0 + (c1 + c2 * t) * t; }
  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
};

Lin lin_sub(const Lin& a, const Lin& b);
Quad mul(const Lin& a, const Lin& b);
Quad add(const Quad& a, const Quad& b);
Quad sub(const Quad& a, const Quad& b);

// linear motion from a to b as t runs over [0,1]
struct MovingPoint {
  Point a, b;
  Point at(const Rat& t) const;
  Lin x() const { return {a.x, b.x - a.x}; }
  Lin y() const { return {a.y, b.y - a.y}; }
};

// cross(q(t) - p(t), r(t) - p(t)); zero exactly at collinearity times
Quad orient_poly(const MovingPoint& p, const MovingPoint& q, const MovingPoint& r);
// dot(p1(t) - base(t), p2(t) - base(t))
Quad dot_poly(const MovingPoint& base, const MovingPoint& p1, const MovingPoint& p2);
// squared distance between p(t) and q(t)
Quad dist2_poly(const MovingPoint& p, const MovingPoint& q);

// one real root of a quadratic, exact or isolated in an open interval
struct QuadRoot {
  Quad f;         // f(root) == 0; irrational roots keep f.c2 != 0
  bool rational;
  Rat value;      // rational case only
  Rat lo, hi;     // irrational case: lo < root < hi, f(lo) f(hi) < 0, no other
                  // root inside, interval strictly inside (0,1)
};

// ascending real roots of f within [0,1]; f must not be identically zero
std::vector<QuadRoot> roots_in_unit(const Quad& f);

// shrink an irrational root interval until p lies strictly outside [lo, hi]
void refine_excluding(QuadRoot& r, const Rat& p);

// shrink an irrational root interval to at most the given width
void refine_to_width(QuadRoot& r, const Rat& width);

// exact sign of g at the root
int sign_at(const Quad& g, QuadRoot& r);

// total order of the real numbers behind two roots; refines intervals so that
// unequal irrational roots end up with disjoint intervals
int root_compare(QuadRoot& a, QuadRoot& b);

Rat root_lb(const QuadRoot& r);  // <= root, equal only when rational
Rat root_ub(const QuadRoot& r);  // >= root, equal only when rational

// sort ascending, drop duplicates, and refine until consecutive intervals
// share at most a single boundary point
void separate_roots(std::vector<QuadRoot>& roots);

}  // namespace planemorph
