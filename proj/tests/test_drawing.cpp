#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "planemorph/drawing.hpp"

#include <random>

using namespace planemorph;

static Point pt(long x, long y) { return {Rat(x), Rat(y)}; }

static Drawing triangle_drawing() {
  Drawing d;
  d.graph.rotation = {{0, {1, 2}}, {1, {0, 2}}, {2, {0, 1}}};
  d.graph.outer = face_from_vertex_walk({0, 2, 1});
  d.graph.normalize();
  d.pos = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(0, 4)}};
  return d;
}

static Drawing k4_drawing() {
  Drawing d;
  d.graph.rotation = {{0, {1, 2, 3}}, {1, {0, 3, 2}}, {2, {0, 1, 3}}, {3, {0, 2, 1}}};
  d.graph.outer = face_from_vertex_walk({0, 2, 1});
  d.graph.normalize();
  d.pos = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(2, 4)}, {3, pt(2, 1)}};
  return d;
}

// ---- independent planarity oracle, raw gmp arithmetic only ----

static int o_orient(const Point& p, const Point& q, const Point& r) {
  mpq_class v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return sgn(v);
}

static bool o_strictly_between(const Point& z, const Point& a, const Point& b) {
  if (o_orient(a, b, z) != 0) return false;
  mpq_class d1 = (z.x - a.x) * (b.x - a.x) + (z.y - a.y) * (b.y - a.y);
  mpq_class d2 = (z.x - b.x) * (a.x - b.x) + (z.y - b.y) * (a.y - b.y);
  return sgn(d1) > 0 && sgn(d2) > 0;
}

// geometric planarity of the straight-line drawing, ignoring the embedding
static bool oracle_planar(const Drawing& d) {
  std::vector<int> ids = d.graph.vertex_ids();
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j)
      if (d.at(ids[i]) == d.at(ids[j])) return false;
  auto edges = d.graph.edge_list();
  for (int z : ids)
    for (auto& [a, b] : edges)
      if (z != a && z != b && o_strictly_between(d.at(z), d.at(a), d.at(b)))
        return false;
  for (size_t i = 0; i < edges.size(); ++i)
    for (size_t j = i + 1; j < edges.size(); ++j) {
      auto [a, b] = edges[i];
      auto [c, e] = edges[j];
      if (a == c || a == e || b == c || b == e) {
        // sharing one endpoint s: contact beyond s means collinear same-side
        int s = (a == c || a == e) ? a : b;
        int p = a == s ? b : a, q = c == s ? e : c;
        if (o_orient(d.at(s), d.at(p), d.at(q)) == 0) {
          mpq_class dp = (d.at(p).x - d.at(s).x) * (d.at(q).x - d.at(s).x) +
                         (d.at(p).y - d.at(s).y) * (d.at(q).y - d.at(s).y);
          if (sgn(dp) > 0) return false;
        }
        continue;
      }
      int o1 = o_orient(d.at(a), d.at(b), d.at(c));
      int o2 = o_orient(d.at(a), d.at(b), d.at(e));
      int o3 = o_orient(d.at(c), d.at(e), d.at(a));
      int o4 = o_orient(d.at(c), d.at(e), d.at(b));
      if (o1 * o2 < 0 && o3 * o4 < 0) return false;
      // endpoint of one resting on the other (T contact or overlap)
      if (o_strictly_between(d.at(c), d.at(a), d.at(b)) ||
          o_strictly_between(d.at(e), d.at(a), d.at(b)) ||
          o_strictly_between(d.at(a), d.at(c), d.at(e)) ||
          o_strictly_between(d.at(b), d.at(c), d.at(e)))
        return false;
      if (d.at(a) == d.at(c) || d.at(a) == d.at(e) || d.at(b) == d.at(c) ||
          d.at(b) == d.at(e))
        return false;
    }
  return true;
}

TEST_CASE("hand built drawings validate") {
  CHECK(validate_drawing(triangle_drawing()).valid);
  CHECK(validate_drawing(k4_drawing()).valid);
}

TEST_CASE("crossing independent edges are reported") {
  Drawing d;
  d.graph.rotation = {{0, {1}}, {1, {0}}, {2, {3}}, {3, {2}}};
  d.pos = {{0, pt(0, 0)}, {1, pt(2, 2)}, {2, pt(0, 2)}, {3, pt(2, 0)}};
  set_outer_geometric(d);
  auto rep = validate_drawing(d);
  CHECK(!rep.valid);
  bool crossing = false;
  for (auto& v : rep.violations) crossing = crossing || v.kind == "edge-crossing";
  CHECK(crossing);
  CHECK(!oracle_planar(d));
}

TEST_CASE("violation kinds are distinguished") {
  Drawing d = k4_drawing();
  d.pos[3] = d.pos[1];
  auto rep = validate_drawing(d);
  CHECK(!rep.valid);
  CHECK(rep.violations[0].kind == "coincident-points");

  d = k4_drawing();
  d.pos[3] = pt(2, 0);  // on outer edge 0-1
  rep = validate_drawing(d);
  CHECK(!rep.valid);
  bool on_edge = false;
  for (auto& v : rep.violations) on_edge = on_edge || v.kind == "vertex-on-edge";
  CHECK(on_edge);

  d = k4_drawing();
  d.pos[3] = pt(20, 1);  // outside the outer triangle: rotation flips
  rep = validate_drawing(d);
  CHECK(!rep.valid);

  d = triangle_drawing();
  d.graph.outer = face_from_vertex_walk({0, 1, 2});  // bounded walk declared outer
  rep = validate_drawing(d);
  CHECK(!rep.valid);
  CHECK(rep.violations[0].kind == "outer-face-mismatch");
}

TEST_CASE("validator is invariant under translation") {
  Drawing d = k4_drawing();
  CHECK(validate_drawing(d).valid);
  for (auto& [v, p] : d.pos) p = p + Point{frac(7, 3), frac(-5, 2)};
  CHECK(validate_drawing(d).valid);
}

// path on x = 0..n-1 with random heights: planar by construction since the
// open x ranges of non-adjacent path edges are disjoint
static Drawing monotone_path(int n, std::mt19937_64& rng, int chords) {
  std::uniform_int_distribution<int> h(0, 9);
  Drawing d;
  for (int v = 0; v < n; ++v) {
    d.pos[v] = pt(v, h(rng));
    d.graph.rotation[v] = {};
  }
  for (int v = 0; v + 1 < n; ++v) {
    d.graph.rotation[v].push_back(v + 1);
    d.graph.rotation[v + 1].push_back(v);
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int c = 0; c < chords; ++c) {
    int u = pick(rng), v = pick(rng);
    if (u > v) std::swap(u, v);
    if (v - u >= 2 && !d.graph.has_edge(u, v)) {
      d.graph.rotation[u].push_back(v);
      d.graph.rotation[v].push_back(u);
    }
  }
  for (int v = 0; v < n; ++v) d.graph.rotation[v] = geometric_cw_order(d, v);
  d.graph.normalize();
  set_outer_geometric(d);
  return d;
}

TEST_CASE("validator agrees with the naive oracle on random drawings") {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> coord(0, 9);
  int valid_seen = 0, invalid_seen = 0;
  for (int it = 0; it < 300; ++it) {
    int n = 10;
    Drawing d;
    if (it % 2 == 1) {
      // x-monotone path bearing 0-2 chords: valid unless a chord misbehaves
      d = monotone_path(n, rng, it % 6 == 1 ? 0 : 2);
    } else {
      // unconstrained clutter: a spanning tree plus extras at random spots
      for (int v = 0; v < n; ++v) {
        d.pos[v] = pt(coord(rng), coord(rng));
        d.graph.rotation[v] = {};
      }
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int v = 1; v < n; ++v) {
        int u = pick(rng) % v;
        if (!d.graph.has_edge(u, v)) {
          d.graph.rotation[u].push_back(v);
          d.graph.rotation[v].push_back(u);
        }
      }
      for (int extra = 0; extra < 4; ++extra) {
        int u = pick(rng), v = pick(rng);
        if (u != v && !d.graph.has_edge(u, v)) {
          d.graph.rotation[u].push_back(v);
          d.graph.rotation[v].push_back(u);
        }
      }
      // embedding read off the geometry, so only geometric planarity is at stake
      bool coincident = false;
      for (int u = 0; u < n && !coincident; ++u)
        for (int v = u + 1; v < n; ++v) coincident = coincident || d.pos[u] == d.pos[v];
      if (!coincident) {
        for (int v = 0; v < n; ++v) d.graph.rotation[v] = geometric_cw_order(d, v);
        d.graph.normalize();
        set_outer_geometric(d);
      }
    }
    bool want = oracle_planar(d);
    bool got = validate_drawing(d).valid;
    CHECK(got == want);
    (want ? valid_seen : invalid_seen)++;
  }
  // the sample must exercise both outcomes to mean anything
  CHECK(valid_seen > 20);
  CHECK(invalid_seen > 20);
}

TEST_CASE("contract merges and keeps everyone else in place") {
  // path 0-1-2: contract 1 onto 0
  Drawing d;
  d.graph.rotation = {{0, {1}}, {1, {0, 2}}, {2, {1}}};
  d.pos = {{0, pt(0, 0)}, {1, pt(1, 0)}, {2, pt(2, 1)}};
  set_outer_geometric(d);
  REQUIRE(validate_drawing(d).valid);
  auto res = contract(d, 1, 0);
  REQUIRE(res.ok);
  CHECK(res.out.graph.edge_list() == std::vector<std::pair<int, int>>{{0, 2}});
  CHECK(res.out.at(2) == pt(2, 1));
  CHECK(res.out.at(0) == pt(0, 0));

  // K4 middle onto corner: triangle with parallel edges merged
  Drawing k = k4_drawing();
  auto rk = contract(k, 3, 0);
  REQUIRE(rk.ok);
  CHECK(rk.out.graph.edge_count() == 3);
  CHECK(validate_drawing(rk.out).valid);

  // contract then uncontract restores the drawing field for field
  Drawing back = uncontract(rk.out, k.graph, 3, k.at(3));
  CHECK(back.graph == k.graph);
  CHECK(back.pos == k.pos);
}

TEST_CASE("contraction rejects geometry that breaks planarity") {
  // zigzag path: merging 1 into 0 puts vertex 3 on the repointed edge 0-2
  Drawing d;
  d.graph.rotation = {{0, {1}}, {1, {0, 2}}, {2, {1, 3}}, {3, {2}}};
  d.pos = {{0, pt(0, 0)}, {1, pt(2, 0)}, {2, pt(2, 2)}, {3, pt(1, 1)}};
  set_outer_geometric(d);
  REQUIRE(validate_drawing(d).valid);
  auto res = contract(d, 1, 0);
  CHECK(!res.ok);
  CHECK(!res.report.valid);
}

TEST_CASE("random contractions agree with rebuild plus validate") {
  std::mt19937_64 rng(777);
  int accepted = 0, rejected = 0;
  for (int it = 0; it < 300; ++it) {
    Drawing d = monotone_path(10, rng, it % 4);
    if (!validate_drawing(d).valid) continue;

    auto edges = d.graph.edge_list();
    // long edges drag their whole fan on contraction, so favor them a bit
    auto [v, x] = edges[std::uniform_int_distribution<size_t>(0, edges.size() - 1)(rng)];
    if (it % 2) {
      for (auto& [a, b] : edges)
        if (b - a > x - v && b - a > v - x) v = a, x = b;
      std::swap(v, x);
    }
    auto res = contract(d, v, x);
    // oracle: rebuild the contracted drawing by hand and validate it
    Drawing hand;
    hand.graph = contract_graph(d.graph, v, x);
    hand.pos = d.pos;
    hand.pos.erase(v);
    auto faces = trace_faces(hand.graph);
    bool planar_rotation =
        faces.size() == hand.graph.edge_count() + 2 * component_count(hand.graph) -
                            hand.graph.vertex_count();
    if (planar_rotation) set_outer_geometric(hand);
    bool want = planar_rotation && validate_drawing(hand).valid;
    CHECK(res.ok == want);
    if (res.ok) {
      CHECK(res.out.pos == hand.pos);
      ++accepted;
    } else {
      ++rejected;
    }
  }
  CHECK(accepted > 10);
  CHECK(rejected > 10);
}

TEST_CASE("kernel membership") {
  // square, v was joined to all corners from the center
  Drawing d;
  d.graph.rotation = {{0, {1, 3}}, {1, {0, 2}}, {2, {1, 3}}, {3, {0, 2}}};
  d.pos = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(4, 4)}, {3, pt(0, 4)}};
  set_outer_geometric(d);
  REQUIRE(validate_drawing(d).valid);
  std::vector<int> corners = {0, 1, 2, 3};
  CHECK(kernel_contains(d, corners, pt(2, 2)));
  CHECK(!kernel_contains(d, corners, pt(5, 2)));   // outside
  CHECK(!kernel_contains(d, corners, pt(2, 0)));   // on an edge: blocked sight
  CHECK(kernel_contains(d, corners, pt(1, 1)));

  // random agreement with a brute force check
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coord(-1, 5);
  for (int it = 0; it < 200; ++it) {
    Point p = pt(coord(rng), coord(rng));
    bool brute = true;
    for (int w : corners) {
      if (p == d.at(w)) brute = false;
      for (auto& [a, b] : d.graph.edge_list()) {
        // sample open segment p-w densely and test membership in a-b closed
        for (int k = 1; k < 64 && brute; ++k) {
          Rat t = frac(k, 64);
          Point z = {p.x + t * (d.at(w).x - p.x), p.y + t * (d.at(w).y - p.y)};
          if (z != d.at(w) && on_closed_segment(z, d.at(a), d.at(b))) brute = false;
        }
      }
      for (int u : corners)
        if (u != w && on_open_segment(d.at(u), p, d.at(w))) brute = false;
    }
    bool got = kernel_contains(d, corners, p);
    // dense sampling can miss a crossing but never invents one: one-way check,
    // plus exactness on the sampled grid the other way
    if (got) CHECK(brute);
  }
}

TEST_CASE("induced subdrawing and geometric edge insertion") {
  Drawing k = k4_drawing();
  Drawing sub = induced_subdrawing(k, {0, 1, 2});
  CHECK(validate_drawing(sub).valid);
  CHECK(sub.graph.edge_count() == 3);
  CHECK(sub.at(2) == pt(2, 4));

  // removing and reinserting the spokes of 3 reproduces K4's embedding
  Drawing d = sub;
  insert_vertex(d, 3, pt(2, 1));
  insert_edge_geometric(d, 3, 0);
  insert_edge_geometric(d, 3, 1);
  insert_edge_geometric(d, 3, 2);
  CHECK(validate_drawing(d).valid);
  CHECK(d.graph == k.graph);

  remove_edge(d, 3, 1);
  CHECK(validate_drawing(d).valid);
  remove_vertex(d, 3);
  CHECK(validate_drawing(d).valid);
  CHECK(d.graph == sub.graph);
}
