#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "planemorph/morph.hpp"

#include <random>

using namespace planemorph;

static Point pt(long x, long y) { return {Rat(x), Rat(y)}; }

// independent check: dense time grid, full static validation per sample
static bool oracle_finds_violation(const LinearStep& s, int grid = 512) {
  for (int k = 0; k <= grid; ++k) {
    Drawing d{s.graph, interpolate(s, frac(k, grid))};
    if (!validate_drawing(d, true).valid) return true;
  }
  return false;
}

static Drawing triangle_drawing() {
  Drawing d;
  d.graph.rotation = {{0, {1, 2}}, {1, {0, 2}}, {2, {0, 1}}};
  d.pos = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(0, 4)}};
  set_outer_geometric(d);
  d.graph.normalize();
  return d;
}

// hub 0 strictly inside a convex hexagon, joined to every corner
static Drawing wheel_drawing() {
  Drawing d;
  d.pos = {{0, pt(0, 0)},  {1, pt(4, 0)},  {2, pt(2, 3)},  {3, pt(-2, 3)},
           {4, pt(-4, 0)}, {5, pt(-2, -3)}, {6, pt(2, -3)}};
  for (int v = 0; v <= 6; ++v) d.graph.rotation[v] = {};
  for (int r = 1; r <= 6; ++r) {
    int nxt = r == 6 ? 1 : r + 1;
    d.graph.rotation[r].push_back(nxt);
    d.graph.rotation[nxt].push_back(r);
    d.graph.rotation[0].push_back(r);
    d.graph.rotation[r].push_back(0);
  }
  for (int v = 0; v <= 6; ++v) d.graph.rotation[v] = geometric_cw_order(d, v);
  d.graph.normalize();
  set_outer_geometric(d);
  return d;
}

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

TEST_CASE("identity and reversal basics") {
  Drawing d = triangle_drawing();
  LinearStep id = identity_step(d);
  CHECK(verify_linear_step(id).valid);
  CHECK(step_start(id).pos == d.pos);
  CHECK(step_end(reversed_step(id)).pos == d.pos);
  CHECK(interpolate(id, frac(1, 3)) == d.pos);
}

TEST_CASE("head-on vertices collide at the midpoint") {
  LinearStep s;
  s.graph.rotation = {{0, {1}}, {1, {0}}};
  s.graph.outer = face_from_vertex_walk({0, 1});
  s.graph.normalize();
  s.start = {{0, pt(0, 0)}, {1, pt(1, 0)}};
  s.end = {{0, pt(1, 0)}, {1, pt(0, 0)}};
  auto rep = verify_linear_step(s);
  REQUIRE(!rep.valid);
  CHECK(rep.violations[0].kind == "coincident-points");
  CHECK(rep.violations[0].timed);
  CHECK(rep.violations[0].t_lo == frac(1, 2));
  CHECK(rep.violations[0].t_hi == frac(1, 2));
  CHECK(oracle_finds_violation(s));
}

TEST_CASE("a sweeping edge runs over a stationary vertex") {
  // two disjoint vertical edges; the left one slides right across the other's
  // top endpoint at t = 1/2 exactly
  LinearStep s;
  s.graph.rotation = {{0, {1}}, {1, {0}}, {2, {3}}, {3, {2}}};
  s.start = {{0, pt(4, -4)}, {1, pt(4, 4)}, {2, pt(8, 0)}, {3, pt(8, -10)}};
  s.end = {{0, pt(12, -4)}, {1, pt(12, 4)}, {2, pt(8, 0)}, {3, pt(8, -10)}};
  Drawing d0{s.graph, s.start};
  set_outer_geometric(d0);
  s.graph = d0.graph;
  REQUIRE(validate_drawing(d0).valid);
  auto rep = verify_linear_step(s);
  REQUIRE(!rep.valid);
  for (auto& v : rep.violations) {
    CHECK(v.kind == "vertex-on-edge");
    CHECK(v.t_lo == frac(1, 2));
    CHECK(v.t_hi == frac(1, 2));
  }
  // vertex 2 inside the sweeping edge, and vertex 0 inside edge 2-3
  CHECK(rep.violations.size() == 2);
  CHECK(oracle_finds_violation(s));
}

TEST_CASE("transversal crossing window is pinned exactly") {
  // static diagonal 2-3; horizontal edge 0-1 glides left to right through it,
  // properly crossing for t strictly between 1/2 and 6/7
  LinearStep s;
  s.graph.rotation = {{0, {1}}, {1, {0}}, {2, {3}}, {3, {2}}};
  s.start = {{0, pt(-6, 6)}, {1, pt(-1, 6)}, {2, pt(0, 0)}, {3, pt(10, 10)}};
  s.end = {{0, pt(8, 6)}, {1, pt(13, 6)}, {2, pt(0, 0)}, {3, pt(10, 10)}};
  Drawing d0{s.graph, s.start};
  set_outer_geometric(d0);
  s.graph = d0.graph;
  REQUIRE(validate_drawing(d0).valid);
  REQUIRE(validate_drawing(Drawing{s.graph, s.end}).valid);
  auto rep = verify_linear_step(s);
  REQUIRE(!rep.valid);
  bool crossing = false;
  for (auto& v : rep.violations)
    if (v.kind == "edge-crossing") {
      crossing = true;
      CHECK(v.t_lo == frac(1, 2));
      CHECK(v.t_hi == frac(6, 7));
    }
  CHECK(crossing);
  CHECK(oracle_finds_violation(s));
}

TEST_CASE("touch at an irrational time is caught") {
  // edge 0-1 tilts upward while vertex 2 drifts across; collinearity happens
  // at the positive root of t^2 + 3t - 2, inside the segment
  LinearStep s;
  s.graph.rotation = {{0, {1}}, {1, {0}}, {2, {3}}, {3, {2}}};
  s.start = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(1, 2)}, {3, pt(-3, -3)}};
  s.end = {{0, pt(0, 0)}, {1, pt(4, 4)}, {2, pt(2, 0)}, {3, pt(-3, -3)}};
  Drawing d0{s.graph, s.start};
  set_outer_geometric(d0);
  s.graph = d0.graph;
  REQUIRE(validate_drawing(d0).valid);
  REQUIRE(validate_drawing(Drawing{s.graph, s.end}).valid);
  auto rep = verify_linear_step(s);
  REQUIRE(!rep.valid);
  // (sqrt(17) - 3) / 2 = 0.56155...
  bool touch = false;
  for (auto& v : rep.violations)
    if (v.kind == "vertex-on-edge" && v.vertices == std::vector<int>{2}) {
      touch = true;
      CHECK(v.t_lo > frac(56, 100));
      CHECK(v.t_hi < frac(57, 100));
      CHECK(v.t_lo < v.t_hi);  // irrational root comes as a proper interval
    }
  CHECK(touch);
}

TEST_CASE("hub motion inside a convex wheel is always accepted") {
  Drawing w = wheel_drawing();
  REQUIRE(validate_drawing(w).valid);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> q(-8, 8);
  for (int it = 0; it < 30; ++it) {
    LinearStep s;
    s.graph = w.graph;
    s.start = w.pos;
    s.end = w.pos;
    s.start[0] = {frac(q(rng), 4), frac(q(rng), 4)};
    s.end[0] = {frac(q(rng), 4), frac(q(rng), 4)};
    auto rep = verify_linear_step(s);
    CHECK(rep.valid);
    CHECK(!oracle_finds_violation(s, 128));
  }
}

TEST_CASE("verifier agrees with the dense sampling oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coord(0, 9);
  int valid_seen = 0, invalid_seen = 0, oracle_hits = 0;
  for (int it = 0; it < 120; ++it) {
    Drawing d = monotone_path(8, rng, it % 3);
    if (!validate_drawing(d).valid) continue;
    LinearStep s;
    s.graph = d.graph;
    s.start = d.pos;
    s.end = d.pos;
    std::uniform_int_distribution<int> pick(0, 7);
    int movers = 1 + it % 2;
    for (int k = 0; k < movers; ++k) s.end[pick(rng)] = pt(coord(rng), coord(rng));
    bool ok = verify_linear_step(s).valid;
    bool hit = oracle_finds_violation(s);
    // sampling can only miss violations, never invent them
    CHECK(!(ok && hit));
    (ok ? valid_seen : invalid_seen)++;
    if (hit) ++oracle_hits;
  }
  CHECK(valid_seen > 15);
  CHECK(invalid_seen > 15);
  CHECK(oracle_hits > 10);
}

TEST_CASE("time reversal and translation leave the verdict unchanged") {
  std::mt19937_64 rng(555);
  std::uniform_int_distribution<int> coord(0, 9);
  Point shift{frac(7, 3), frac(-5, 2)};
  for (int it = 0; it < 40; ++it) {
    Drawing d = monotone_path(7, rng, it % 3);
    if (!validate_drawing(d).valid) continue;
    LinearStep s;
    s.graph = d.graph;
    s.start = d.pos;
    s.end = d.pos;
    std::uniform_int_distribution<int> pick(0, 6);
    s.end[pick(rng)] = pt(coord(rng), coord(rng));
    bool ok = verify_linear_step(s).valid;
    CHECK(verify_linear_step(reversed_step(s)).valid == ok);
    LinearStep moved = s;
    for (auto& [v, p] : moved.start) p = p + shift;
    for (auto& [v, p] : moved.end) p = p + shift;
    CHECK(verify_linear_step(moved).valid == ok);
  }
}

TEST_CASE("every restriction of a verified step to a subinterval is verified") {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> coord(0, 9);
  std::uniform_int_distribution<int> num(0, 16);
  int tried = 0;
  for (int it = 0; it < 200 && tried < 25; ++it) {
    Drawing d = monotone_path(7, rng, it % 2);
    if (!validate_drawing(d).valid) continue;
    LinearStep s;
    s.graph = d.graph;
    s.start = d.pos;
    s.end = d.pos;
    std::uniform_int_distribution<int> pick(0, 6);
    s.end[pick(rng)] = pt(coord(rng), coord(rng));
    if (!verify_linear_step(s).valid) continue;
    Rat t1 = frac(num(rng), 16), t2 = frac(num(rng), 16);
    if (t2 < t1) std::swap(t1, t2);
    LinearStep sub{s.graph, interpolate(s, t1), interpolate(s, t2)};
    CHECK(verify_linear_step(sub).valid);
    ++tried;
  }
  CHECK(tried == 25);
}

TEST_CASE("corrupted steps are rejected") {
  Drawing w = wheel_drawing();
  LinearStep s;
  s.graph = w.graph;
  s.start = w.pos;
  s.end = w.pos;
  s.end[0] = pt(1, 1);
  REQUIRE(verify_linear_step(s).valid);

  LinearStep bad = s;
  bad.end[0] = bad.end[2];  // lands on another vertex
  CHECK(!verify_linear_step(bad).valid);

  bad = s;
  bad.end[0] = pt(3, -3);  // midpoint of the rim edge 1-6 while joined to both
  CHECK(!verify_linear_step(bad).valid);

  bad = s;
  bad.end[2] = w.pos.at(3);  // two rim vertices swap, spokes must tangle
  bad.end[3] = w.pos.at(2);
  CHECK(!verify_linear_step(bad).valid);
}

TEST_CASE("morph chaining is checked exactly") {
  Morph m;
  CHECK(verify_morph(m).valid);  // nothing to do

  Drawing w = wheel_drawing();
  m.graph = w.graph;
  LinearStep s1{w.graph, w.pos, w.pos};
  s1.end[0] = pt(1, 1);
  LinearStep s2{w.graph, s1.end, s1.end};
  s2.end[0] = pt(-1, 0);
  m.steps = {s1, s2};
  CHECK(verify_morph(m).valid);

  Morph broken = m;
  broken.steps[1].start[0].x += frac(1, 1000000);
  auto rep = verify_morph(broken);
  REQUIRE(!rep.valid);
  CHECK(rep.violations[0].kind == "frame-chain");
  CHECK(rep.violations[0].step == 1);

  Morph alien = m;
  alien.steps[1].graph.rotation[0] = {1, 2, 3, 4, 5, 6};  // hub order flipped
  alien.steps[1].graph.normalize();
  rep = verify_morph(alien);
  REQUIRE(!rep.valid);
  CHECK(rep.violations[0].kind == "structure");
}

TEST_CASE("restriction projects a verified morph onto a subgraph") {
  Drawing w = wheel_drawing();
  Morph m;
  m.graph = w.graph;
  LinearStep s{w.graph, w.pos, w.pos};
  s.end[0] = pt(1, -1);
  m.steps = {s};
  REQUIRE(verify_morph(m).valid);

  std::set<int> all = {0, 1, 2, 3, 4, 5, 6};
  Morph same = restrict_morph(m, all);
  CHECK(same.graph == m.graph);
  CHECK(same.steps.size() == 1);
  CHECK(same.steps[0].end == m.steps[0].end);

  std::set<int> keep = {0, 1, 2, 3, 4, 5};  // drop one rim vertex
  Morph sub = restrict_morph(m, keep);
  CHECK(sub.graph.vertex_count() == 6);
  CHECK(!sub.graph.has_vertex(6));
  CHECK(verify_morph(sub).valid);
  CHECK(sub.steps[0].end.at(0) == pt(1, -1));

  CHECK_THROWS_AS(restrict_morph(m, std::set<int>{0, 99}), std::invalid_argument);
}

TEST_CASE("clearance bounds") {
  // static pair at distance 2: epsilon is exactly half of it
  Morph m;
  m.graph.rotation = {{0, {1}}, {1, {0}}};
  m.graph.outer = face_from_vertex_walk({0, 1});
  m.graph.normalize();
  Drawing d{m.graph, {{0, pt(0, 0)}, {1, pt(2, 0)}}};
  m.steps = {identity_step(d)};
  Clearance c = certified_clearance(m, 0, {});
  CHECK(c.certified);
  CHECK(c.epsilon == 1);

  // the other vertex passes at distance 1: epsilon halves that exactly
  Morph mv = m;
  mv.steps[0].start[1] = pt(1, 1);
  mv.steps[0].end[1] = pt(1, -1);
  c = certified_clearance(mv, 0, {});
  CHECK(c.epsilon == frac(1, 2));
  CHECK(c.epsilon <= 1);

  // ignoring the only other vertex removes the constraint
  c = certified_clearance(mv, 0, {1});
  CHECK(c.epsilon == 1);

  // random morphs: epsilon stays below the sampled minimum and above zero
  Drawing w = wheel_drawing();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> q(-8, 8);
  for (int it = 0; it < 20; ++it) {
    Morph r;
    r.graph = w.graph;
    LinearStep s{w.graph, w.pos, w.pos};
    s.start[0] = {frac(q(rng), 4), frac(q(rng), 4)};
    s.end[0] = {frac(q(rng), 4), frac(q(rng), 4)};
    r.steps = {s};
    Clearance cc = certified_clearance(r, 0, {});
    CHECK(cc.epsilon > 0);
    for (int k = 0; k <= 256; ++k) {
      auto pos = interpolate(s, frac(k, 256));
      for (int v = 1; v <= 6; ++v) {
        Rat dx = pos.at(v).x - pos.at(0).x, dy = pos.at(v).y - pos.at(0).y;
        CHECK(cc.epsilon * cc.epsilon < dx * dx + dy * dy);
      }
    }
  }
}

TEST_CASE("traces chain, reverse, and compose") {
  Drawing k;
  k.graph.rotation = {{0, {1, 2, 3}}, {1, {0, 3, 2}}, {2, {0, 1, 3}}, {3, {0, 2, 1}}};
  k.graph.outer = face_from_vertex_walk({0, 2, 1});
  k.graph.normalize();
  k.pos = {{0, pt(0, 0)}, {1, pt(4, 0)}, {2, pt(2, 4)}, {3, pt(2, 1)}};
  REQUIRE(validate_drawing(k).valid);
  auto res = contract(k, 3, 0);
  REQUIRE(res.ok);
  Drawing kc = res.out;

  // forward half: settle, contract 3, settle in the contracted graph
  PseudoMorphTrace a;
  a.events.push_back(linear_event(identity_step(k)));
  a.events.push_back(contract_event(k, 3, 0));
  a.events.push_back(linear_event(identity_step(kc)));
  CHECK(validate_trace(a, true) == std::nullopt);
  auto err = validate_trace(a, false);
  REQUIRE(err.has_value());
  CHECK(err->find("unmatched") != std::string::npos);

  // second half from a different placement of 3, same contracted frame
  Drawing k2 = k;
  k2.pos[3] = pt(1, 1);
  REQUIRE(validate_drawing(k2).valid);
  PseudoMorphTrace b;
  b.events.push_back(linear_event(identity_step(k2)));
  b.events.push_back(contract_event(k2, 3, 0));
  b.events.push_back(linear_event(identity_step(kc)));

  PseudoMorphTrace both = concat_traces(a, reverse_trace(b));
  CHECK(validate_trace(both) == std::nullopt);
  CHECK(trace_first_drawing(both).pos == k.pos);
  CHECK(trace_last_drawing(both).pos == k2.pos);

  // reversal is an involution
  PseudoMorphTrace twice = reverse_trace(reverse_trace(both));
  REQUIRE(twice.events.size() == both.events.size());
  for (size_t i = 0; i < both.events.size(); ++i) {
    const TraceEvent& x = both.events[i];
    const TraceEvent& y = twice.events[i];
    CHECK(x.kind == y.kind);
    if (x.kind == TraceEvent::linear) {
      CHECK(x.step.start == y.step.start);
      CHECK(x.step.end == y.step.end);
      CHECK(x.step.graph == y.step.graph);
    } else {
      CHECK(x.v == y.v);
      CHECK(x.x == y.x);
      CHECK(x.placement == y.placement);
    }
  }

  // a reversed half validates as the loose-ended half it is
  PseudoMorphTrace rb = reverse_trace(b);
  CHECK(validate_trace(rb, true) == std::nullopt);
  CHECK(validate_trace(rb, false).has_value());

  // tampering with the placement breaks the chain
  PseudoMorphTrace bad = both;
  bad.events[1].placement = pt(9, 9);
  CHECK(validate_trace(bad).has_value());
}
