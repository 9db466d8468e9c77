#include "planemorph/drawing.hpp"

#include <algorithm>
#include <cassert>

namespace planemorph {

std::string ValidityReport::summary() const {
  if (valid) return "valid";
  std::string s;
  for (auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.kind;
    if (v.step >= 0) s += " (step " + std::to_string(v.step) + ")";
    if (!v.detail.empty()) s += ": " + v.detail;
    if (v.timed)
      s += " at t in [" + rat_to_string(v.t_lo) + ", " + rat_to_string(v.t_hi) + "]";
  }
  return s;
}

struct Box {
  Rat xlo, xhi, ylo, yhi;
};

static Box seg_box(const Point& a, const Point& b) {
  return {a.x < b.x ? a.x : b.x, a.x < b.x ? b.x : a.x,
          a.y < b.y ? a.y : b.y, a.y < b.y ? b.y : a.y};
}

static bool boxes_meet(const Box& a, const Box& b) {
  return !(a.xhi < b.xlo || b.xhi < a.xlo || a.yhi < b.ylo || b.yhi < a.ylo);
}

static bool point_in_box(const Point& p, const Box& b) {
  return !(p.x < b.xlo || p.x > b.xhi || p.y < b.ylo || p.y > b.yhi);
}

std::vector<int> geometric_cw_order(const Drawing& d, int v) {
  std::vector<int> nbrs = d.graph.neighbors(v);
  const Point& c = d.at(v);
  std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) {
    Point da = d.at(a) - c, db = d.at(b) - c;
    if (ccw_less(da, db)) return true;
    if (ccw_less(db, da)) return false;
    return a < b;
  });
  std::reverse(nbrs.begin(), nbrs.end());
  if (!nbrs.empty()) {
    auto it = std::min_element(nbrs.begin(), nbrs.end());
    std::rotate(nbrs.begin(), it, nbrs.end());
  }
  return nbrs;
}

ValidityReport validate_drawing(const Drawing& d, bool stop_early) {
  ValidityReport rep;
  if (auto err = check_embedding(d.graph)) {
    rep.add({"structure", {}, {}, *err});
    return rep;
  }
  for (auto& [v, nbrs] : d.graph.rotation)
    if (!d.pos.count(v)) {
      rep.add({"structure", {v}, {}, "vertex " + std::to_string(v) + " has no point"});
      return rep;
    }
  if (d.pos.size() != d.graph.vertex_count()) {
    rep.add({"structure", {}, {}, "position map names vertices outside the graph"});
    return rep;
  }

  // coincident points via exact lexicographic sort
  std::vector<int> ids = d.graph.vertex_ids();
  {
    std::vector<int> by_pos = ids;
    std::sort(by_pos.begin(), by_pos.end(), [&](int a, int b) {
      const Point& pa = d.at(a);
      const Point& pb = d.at(b);
      if (pa.x != pb.x) return pa.x < pb.x;
      if (pa.y != pb.y) return pa.y < pb.y;
      return a < b;
    });
    for (size_t i = 0; i + 1 < by_pos.size(); ++i)
      if (d.at(by_pos[i]) == d.at(by_pos[i + 1])) {
        rep.add({"coincident-points",
                 {by_pos[i], by_pos[i + 1]},
                 {},
                 "vertices " + std::to_string(by_pos[i]) + " and " +
                     std::to_string(by_pos[i + 1]) + " share a point"});
        if (stop_early) return rep;
      }
  }

  auto edges = d.graph.edge_list();
  std::vector<Box> boxes;
  boxes.reserve(edges.size());
  for (auto& [a, b] : edges) boxes.push_back(seg_box(d.at(a), d.at(b)));

  // vertex resting on a non-incident open edge
  for (int v : ids) {
    const Point& p = d.at(v);
    for (size_t i = 0; i < edges.size(); ++i) {
      auto [a, b] = edges[i];
      if (a == v || b == v) continue;
      if (!point_in_box(p, boxes[i])) continue;
      if (on_open_segment(p, d.at(a), d.at(b))) {
        rep.add({"vertex-on-edge",
                 {v},
                 {edges[i]},
                 "vertex " + std::to_string(v) + " lies on edge " +
                     std::to_string(a) + "-" + std::to_string(b)});
        if (stop_early) return rep;
      }
    }
  }

  // proper crossings between vertex-disjoint edges
  for (size_t i = 0; i < edges.size(); ++i)
    for (size_t j = i + 1; j < edges.size(); ++j) {
      auto [a, b] = edges[i];
      auto [c, e] = edges[j];
      if (a == c || a == e || b == c || b == e) continue;
      if (!boxes_meet(boxes[i], boxes[j])) continue;
      if (properly_cross(d.at(a), d.at(b), d.at(c), d.at(e))) {
        rep.add({"edge-crossing",
                 {},
                 {edges[i], edges[j]},
                 "edges " + std::to_string(a) + "-" + std::to_string(b) + " and " +
                     std::to_string(c) + "-" + std::to_string(e) + " cross"});
        if (stop_early) return rep;
      }
    }

  // embedding realization: exact angular order around every vertex
  for (int v : ids) {
    if (d.graph.degree(v) == 0) continue;
    std::vector<int> want = d.graph.neighbors(v);
    std::rotate(want.begin(), std::min_element(want.begin(), want.end()), want.end());
    std::vector<int> got = geometric_cw_order(d, v);
    if (got != want) {
      rep.add({"rotation-mismatch",
               {v},
               {},
               "angular order around vertex " + std::to_string(v) +
                   " disagrees with the rotation list"});
      if (stop_early) return rep;
    }
  }

  // the declared outer walk must be the non-positive-area walk through the
  // leftmost vertex of its own component; tying it to the globally leftmost
  // vertex would flip the verdict when disjoint components slide past each
  // other
  if (d.graph.vertex_count() > 1 && !d.graph.outer.empty()) {
    std::set<int> comp;
    std::vector<int> queue = {d.graph.outer.front().first};
    comp.insert(queue[0]);
    while (!queue.empty()) {
      int u = queue.back();
      queue.pop_back();
      for (int w : d.graph.neighbors(u))
        if (comp.insert(w).second) queue.push_back(w);
    }
    int vmin = -1;
    for (int v : comp)
      if (vmin < 0 || d.at(v).x < d.at(vmin).x ||
          (d.at(v).x == d.at(vmin).x && d.at(v).y < d.at(vmin).y))
        vmin = v;
    auto faces = trace_faces(d.graph);
    FaceWalk outer_geo;
    bool found = false;
    for (auto& f : faces) {
      bool through = false;
      for (auto& e : f) through = through || e.first == vmin;
      if (!through) continue;
      std::vector<Point> poly;
      for (auto& e : f) poly.push_back(d.at(e.first));
      if (sign(signed_area2(poly)) <= 0) {
        if (!found) {
          outer_geo = f;
          found = true;
        } else {
          rep.add({"outer-face-mismatch", {}, {},
                   "several non-positive-area faces at the leftmost vertex"});
          if (stop_early) return rep;
        }
      }
    }
    if (!found) {
      rep.add({"outer-face-mismatch", {}, {}, "no face has non-positive area"});
    } else if (outer_geo != canonical_face(d.graph.outer)) {
      rep.add({"outer-face-mismatch",
               {},
               {},
               "unbounded face does not match the declared outer walk"});
    }
  }
  return rep;
}

// lexicographically least position (x, then y); always on the unbounded face
static int leftmost_vertex_of(const std::map<int, Point>& pos,
                              const PlaneGraph& g, bool skip_isolated) {
  int best = -1;
  for (auto& [v, p] : pos) {
    if (skip_isolated && g.has_vertex(v) && g.degree(v) == 0) continue;
    if (best < 0) {
      best = v;
      continue;
    }
    const Point& q = pos.at(best);
    if (p.x < q.x || (p.x == q.x && p.y < q.y)) best = v;
  }
  return best;
}

int leftmost_vertex(const Drawing& d) {
  return leftmost_vertex_of(d.pos, d.graph, false);
}

void set_outer_geometric(Drawing& d) {
  auto faces = trace_faces(d.graph);
  assert(!faces.empty());
  if (d.graph.vertex_count() == 1) {
    d.graph.outer = {};
    return;
  }
  int vmin = leftmost_vertex_of(d.pos, d.graph, true);
  size_t best = faces.size();
  Rat best_area;
  for (size_t i = 0; i < faces.size(); ++i) {
    bool through = false;
    for (auto& e : faces[i]) through = through || e.first == vmin;
    if (!through) continue;
    std::vector<Point> poly;
    for (auto& e : faces[i]) poly.push_back(d.at(e.first));
    Rat a = signed_area2(poly);
    if (best == faces.size() || a < best_area) {
      best_area = a;
      best = i;
    }
  }
  assert(best < faces.size());
  d.graph.outer = faces[best];
}

ContractResult contract(const Drawing& d, int v, int x) {
  ContractResult res;
  if (d.graph.has_edge(v, x)) {
    res.out.graph = contract_graph(d.graph, v, x);
    res.out.pos = d.pos;
    res.out.pos.erase(v);
  } else {
    // bare merge: v's edges are redirected to x, slots read off the geometry
    Drawing work = d;
    std::vector<int> fan = d.graph.neighbors(v);
    remove_vertex(work, v);
    for (int w : fan)
      if (w != x && !work.graph.has_edge(x, w)) insert_edge_geometric(work, x, w);
    res.out = std::move(work);
  }
  // outer face only recoverable when the rotation system stays planar; the
  // validator reports the failure either way
  auto faces = trace_faces(res.out.graph);
  if (faces.size() == res.out.graph.edge_count() + 2 - res.out.graph.vertex_count())
    set_outer_geometric(res.out);
  res.report = validate_drawing(res.out, true);
  res.ok = res.report.valid;
  return res;
}

Drawing uncontract(const Drawing& d, const PlaneGraph& target, int v, const Point& p) {
  Drawing out;
  out.graph = target;
  out.pos = d.pos;
  out.pos[v] = p;
  return out;
}

// does the open segment p-w meet the closed segment a-b?
static bool open_segment_blocked(const Point& p, const Point& w, const Point& a,
                                 const Point& b) {
  if (properly_cross(p, w, a, b)) return true;
  if (on_open_segment(a, p, w) || on_open_segment(b, p, w)) return true;
  // collinear cover: a-b contains the whole sight line
  return on_closed_segment(p, a, b) && on_closed_segment(w, a, b);
}

bool kernel_contains(const Drawing& d_minus_v, const std::vector<int>& neighbors,
                     const Point& p) {
  for (int w : neighbors) {
    const Point& q = d_minus_v.at(w);
    if (p == q) return false;
    for (auto& [a, b] : d_minus_v.graph.edge_list())
      if (open_segment_blocked(p, q, d_minus_v.at(a), d_minus_v.at(b))) return false;
    for (auto& [z, zp] : d_minus_v.pos)
      if (z != w && on_open_segment(zp, p, q)) return false;
  }
  return true;
}

Drawing induced_subdrawing(const Drawing& d, const std::set<int>& keep) {
  Drawing out;
  for (int v : keep) {
    assert(d.graph.has_vertex(v));
    std::vector<int> nbrs;
    for (int u : d.graph.neighbors(v))
      if (keep.count(u)) nbrs.push_back(u);
    out.graph.rotation[v] = nbrs;
    out.pos[v] = d.at(v);
  }
  out.graph.normalize();
  set_outer_geometric(out);
  return out;
}

void insert_edge_geometric(Drawing& d, int u, int w) {
  assert(!d.graph.has_edge(u, w) && u != w);
  d.graph.rotation.at(u).push_back(w);
  d.graph.rotation.at(w).push_back(u);
  d.graph.rotation.at(u) = geometric_cw_order(d, u);
  d.graph.rotation.at(w) = geometric_cw_order(d, w);
  d.graph.normalize();
  set_outer_geometric(d);
}

void insert_vertex(Drawing& d, int v, const Point& p) {
  assert(!d.graph.has_vertex(v));
  d.graph.rotation[v] = {};
  d.pos[v] = p;
}

void remove_edge(Drawing& d, int u, int w) {
  auto& ru = d.graph.rotation.at(u);
  auto& rw = d.graph.rotation.at(w);
  ru.erase(std::find(ru.begin(), ru.end(), w));
  rw.erase(std::find(rw.begin(), rw.end(), u));
  d.graph.normalize();
  set_outer_geometric(d);
}

void remove_vertex(Drawing& d, int v) {
  for (int u : d.graph.rotation.at(v)) {
    auto& ru = d.graph.rotation.at(u);
    ru.erase(std::find(ru.begin(), ru.end(), v));
  }
  d.graph.rotation.erase(v);
  d.pos.erase(v);
  d.graph.normalize();
  set_outer_geometric(d);
}

}  // namespace planemorph
