#include "planemorph/morph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace planemorph {

Drawing step_start(const LinearStep& s) { return {s.graph, s.start}; }
Drawing step_end(const LinearStep& s) { return {s.graph, s.end}; }

std::map<int, Point> interpolate(const LinearStep& s, const Rat& t) {
  std::map<int, Point> out;
  for (auto& [v, a] : s.start) {
    const Point& b = s.end.at(v);
    out.emplace(v, Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  }
  return out;
}

LinearStep reversed_step(const LinearStep& s) { return {s.graph, s.end, s.start}; }
LinearStep identity_step(const Drawing& d) { return {d.graph, d.pos, d.pos}; }

Morph reversed_morph(const Morph& m) {
  Morph out{m.graph, {}};
  for (auto it = m.steps.rbegin(); it != m.steps.rend(); ++it)
    out.steps.push_back(reversed_step(*it));
  return out;
}

Morph concat_morphs(Morph a, const Morph& b) {
  a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
  return a;
}

Drawing first_frame(const Morph& m) {
  if (m.steps.empty()) throw std::invalid_argument("first_frame: morph has no steps");
  return step_start(m.steps.front());
}

Drawing last_frame(const Morph& m) {
  if (m.steps.empty()) throw std::invalid_argument("last_frame: morph has no steps");
  return step_end(m.steps.back());
}

namespace {

struct MBox {
  Rat xlo, xhi, ylo, yhi;
};

MBox box2(const Point& a, const Point& b) {
  return {a.x < b.x ? a.x : b.x, a.x < b.x ? b.x : a.x,
          a.y < b.y ? a.y : b.y, a.y < b.y ? b.y : a.y};
}

MBox join(const MBox& a, const MBox& b) {
  return {std::min(a.xlo, b.xlo), std::max(a.xhi, b.xhi),
          std::min(a.ylo, b.ylo), std::max(a.yhi, b.yhi)};
}

bool meet(const MBox& a, const MBox& b) {
  return !(a.xhi < b.xlo || b.xhi < a.xlo || a.yhi < b.ylo || b.yhi < a.ylo);
}

void file_violation(ValidityReport& rep, Violation v, int step) {
  v.step = step;
  v.timed = true;
  rep.add(std::move(v));
}

// reported windows narrow enough to be meaningful to a reader
const Rat kWindow = frac(1, 4096);

// Exhaustive kinetic scan of one step. Requires both endpoint frames to be
// valid drawings; that makes the three checks below complete:
//   - vertex pairs are checked on the closed interval, so any two objects
//     that ever touch must first trigger a vertex-vertex or vertex-edge event
//   - a proper edge crossing over an open time interval is bracketed by
//     roots of the four orientation polynomials, and between consecutive
//     roots the sign pattern is constant, so one exact sample per gap decides
//     the gap
void kinetic_step_checks(const LinearStep& s, int stepi, ValidityReport& rep,
                         bool stop_early, int focus = -1) {
  std::vector<int> ids = s.graph.vertex_ids();
  auto edges = s.graph.edge_list();
  std::map<int, MovingPoint> mv;
  std::map<int, MBox> vb;
  std::map<int, bool> moved;
  for (int v : ids) {
    const Point& a = s.start.at(v);
    const Point& b = s.end.at(v);
    mv.emplace(v, MovingPoint{a, b});
    vb.emplace(v, box2(a, b));
    moved[v] = !(a == b);
  }
  std::vector<MBox> eb;
  eb.reserve(edges.size());
  for (auto& [a, b] : edges) eb.push_back(join(vb.at(a), vb.at(b)));

  // no two vertices meet at any time in [0,1]
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j) {
      int u = ids[i], v = ids[j];
      if (focus >= 0 && u != focus && v != focus) continue;
      if (!moved[u] && !moved[v]) continue;
      if (!meet(vb.at(u), vb.at(v))) continue;
      Quad D = dist2_poly(mv.at(u), mv.at(v));
      // c2 = |relative motion|^2, and c2 = 0 forces a constant distance
      if (sign(D.c2) <= 0) continue;
      Rat tv = -D.c1 / (2 * D.c2);
      if (sign(tv) <= 0 || tv >= 1) continue;  // interior minimum only
      int sv = sign(D.at(tv));
      if (sv > 0) continue;
      Violation viol;
      viol.kind = "coincident-points";
      viol.vertices = {u, v};
      if (sv == 0) {
        viol.t_lo = viol.t_hi = tv;
      } else {
        auto rs = roots_in_unit(D);
        for (auto& r : rs) refine_to_width(r, kWindow);
        viol.t_lo = root_lb(rs.front());
        viol.t_hi = root_ub(rs.back());
      }
      file_violation(rep, std::move(viol), stepi);
      if (stop_early) return;
    }

  // no vertex sits strictly inside an edge at any collinearity time
  for (int w : ids)
    for (size_t e = 0; e < edges.size(); ++e) {
      auto [a, b] = edges[e];
      if (focus >= 0 && w != focus && a != focus && b != focus) continue;
      if (w == a || w == b) continue;
      if (!moved[w] && !moved[a] && !moved[b]) continue;
      if (!meet(vb.at(w), eb[e])) continue;
      Quad F = orient_poly(mv.at(a), mv.at(b), mv.at(w));
      // identically collinear: w can only enter the segment through one of
      // its endpoints or through a collapse of a and b, and the vertex-pair
      // check above already rules both out on the closed interval
      if (F.is_zero()) continue;
      Quad G1 = dot_poly(mv.at(a), mv.at(w), mv.at(b));
      Quad G2 = dot_poly(mv.at(b), mv.at(w), mv.at(a));
      for (QuadRoot& r : roots_in_unit(F)) {
        // strict betweenness; touching an endpoint is a vertex-pair event
        if (sign_at(G1, r) > 0 && sign_at(G2, r) > 0) {
          refine_to_width(r, kWindow);
          Violation viol;
          viol.kind = "vertex-on-edge";
          viol.vertices = {w};
          viol.edges = {{a, b}};
          viol.t_lo = root_lb(r);
          viol.t_hi = root_ub(r);
          file_violation(rep, std::move(viol), stepi);
          if (stop_early) return;
        }
      }
    }

  // no two vertex-disjoint edges properly cross; pairs sharing a vertex can
  // only touch, which the two checks above cover
  for (size_t e = 0; e < edges.size(); ++e)
    for (size_t g = e + 1; g < edges.size(); ++g) {
      auto [a, b] = edges[e];
      auto [c, d] = edges[g];
      if (focus >= 0 && a != focus && b != focus && c != focus && d != focus)
        continue;
      if (a == c || a == d || b == c || b == d) continue;
      if (!moved[a] && !moved[b] && !moved[c] && !moved[d]) continue;
      if (!meet(eb[e], eb[g])) continue;
      Quad f[4] = {orient_poly(mv.at(a), mv.at(b), mv.at(c)),
                   orient_poly(mv.at(a), mv.at(b), mv.at(d)),
                   orient_poly(mv.at(c), mv.at(d), mv.at(a)),
                   orient_poly(mv.at(c), mv.at(d), mv.at(b))};
      std::vector<QuadRoot> rs;
      for (auto& fk : f)
        if (!fk.is_zero())
          for (auto& r : roots_in_unit(fk)) rs.push_back(r);
      separate_roots(rs);
      // tight intervals both narrow the reported windows and widen the gaps,
      // keeping every gap sample strictly between the neighbouring roots
      for (auto& r : rs) refine_to_width(r, kWindow);
      auto proper_at = [&f](const Rat& t) {
        int s1 = sign(f[0].at(t)), s2 = sign(f[1].at(t));
        if (s1 * s2 >= 0) return false;
        int s3 = sign(f[2].at(t)), s4 = sign(f[3].at(t));
        return s3 * s4 < 0;
      };
      for (size_t k = 0; k <= rs.size(); ++k) {
        Rat lo = k == 0 ? Rat(0) : root_ub(rs[k - 1]);
        Rat hi = k == rs.size() ? Rat(1) : root_lb(rs[k]);
        // lo == hi either at a degenerate boundary gap (harmless: endpoint
        // frames are valid) or between two irrational roots sharing one
        // interval bound, which then lies strictly between the roots
        Rat t = lo < hi ? Rat((lo + hi) / 2) : lo;
        if (!proper_at(t)) continue;
        Violation viol;
        viol.kind = "edge-crossing";
        viol.edges = {{a, b}, {c, d}};
        viol.t_lo = k == 0 ? Rat(0) : root_lb(rs[k - 1]);
        viol.t_hi = k == rs.size() ? Rat(1) : root_ub(rs[k]);
        file_violation(rep, std::move(viol), stepi);
        if (stop_early) return;
      }
    }
}

// drawing checks limited to one vertex: coincidences, incidences and
// crossings touching it or its edges, angular order at it and its neighbors,
// plus the outer guard when it takes over as the extreme vertex. complete
// relative to a drawing that was valid before the vertex arrived.
void focused_frame_checks(const Drawing& d, int focus, ValidityReport& rep,
                          bool stop_early) {
  const Point& p = d.at(focus);
  std::vector<int> ids = d.graph.vertex_ids();
  for (int u : ids) {
    if (u == focus) continue;
    if (d.at(u) == p) {
      rep.add({"coincident-points",
               {focus, u},
               {},
               "vertices " + std::to_string(focus) + " and " + std::to_string(u) +
                   " share a point"});
      if (stop_early) return;
    }
  }
  auto edges = d.graph.edge_list();
  for (auto& [a, b] : edges) {
    if (a == focus || b == focus) continue;
    if (on_open_segment(p, d.at(a), d.at(b))) {
      rep.add({"vertex-on-edge",
               {focus},
               {{a, b}},
               "vertex " + std::to_string(focus) + " lies on edge " +
                   std::to_string(a) + "-" + std::to_string(b)});
      if (stop_early) return;
    }
  }
  for (int w : d.graph.neighbors(focus)) {
    int lo = std::min(focus, w), hi = std::max(focus, w);
    for (int u : ids) {
      if (u == focus || u == w) continue;
      if (on_open_segment(d.at(u), p, d.at(w))) {
        rep.add({"vertex-on-edge",
                 {u},
                 {{lo, hi}},
                 "vertex " + std::to_string(u) + " lies on edge " +
                     std::to_string(lo) + "-" + std::to_string(hi)});
        if (stop_early) return;
      }
    }
    for (auto& [a, b] : edges) {
      if (a == focus || b == focus || a == w || b == w) continue;
      if (properly_cross(p, d.at(w), d.at(a), d.at(b))) {
        rep.add({"edge-crossing",
                 {},
                 {{lo, hi}, {a, b}},
                 "edges " + std::to_string(lo) + "-" + std::to_string(hi) +
                     " and " + std::to_string(a) + "-" + std::to_string(b) +
                     " cross"});
        if (stop_early) return;
      }
    }
  }
  std::vector<int> ring = d.graph.neighbors(focus);
  ring.push_back(focus);
  for (int v : ring) {
    if (d.graph.degree(v) == 0) continue;
    std::vector<int> want = d.graph.neighbors(v);
    std::rotate(want.begin(), std::min_element(want.begin(), want.end()), want.end());
    if (geometric_cw_order(d, v) != want) {
      rep.add({"rotation-mismatch",
               {v},
               {},
               "angular order around vertex " + std::to_string(v) +
                   " disagrees with the rotation list"});
      if (stop_early) return;
    }
  }
  bool least = true;
  for (int u : ids) {
    if (u == focus) continue;
    const Point& q = d.at(u);
    if (q.x < p.x || (q.x == p.x && q.y < p.y)) {
      least = false;
      break;
    }
  }
  if (least) {
    bool on_outer = false;
    for (auto& [a, b] : d.graph.outer)
      if (a == focus || b == focus) on_outer = true;
    if (!on_outer)
      rep.add({"outer-face-mismatch",
               {focus},
               {},
               "vertex " + std::to_string(focus) +
                   " is leftmost but missing from the outer walk"});
  }
}

}  // namespace

ValidityReport verify_linear_step_around(const LinearStep& s, int focus,
                                         bool stop_early) {
  ValidityReport rep;
  if (!s.graph.has_vertex(focus) || !s.start.count(focus) || !s.end.count(focus)) {
    rep.add({"structure", {focus}, {}, "focus vertex missing from the step"});
    return rep;
  }
  auto stamp = [&rep](ValidityReport r, const Rat& t, const char* frame) {
    for (auto& v : r.violations) {
      v.timed = true;
      v.t_lo = v.t_hi = t;
      v.detail = v.detail.empty() ? frame : std::string(frame) + ", " + v.detail;
      rep.add(std::move(v));
    }
  };
  ValidityReport r0;
  focused_frame_checks(step_start(s), focus, r0, stop_early);
  if (!r0.valid) {
    stamp(std::move(r0), 0, "start frame");
    if (stop_early) return rep;
  }
  ValidityReport r1;
  focused_frame_checks(step_end(s), focus, r1, stop_early);
  if (!r1.valid) stamp(std::move(r1), 1, "end frame");
  if (!rep.valid) return rep;
  kinetic_step_checks(s, -1, rep, stop_early, focus);
  return rep;
}

ValidityReport verify_linear_step(const LinearStep& s, bool stop_early) {
  ValidityReport rep;
  auto stamp = [&rep](ValidityReport r, const Rat& t, const char* frame) {
    for (auto& v : r.violations) {
      v.timed = true;
      v.t_lo = v.t_hi = t;
      v.detail = v.detail.empty() ? frame : std::string(frame) + ", " + v.detail;
      rep.add(std::move(v));
    }
  };
  auto r0 = validate_drawing(step_start(s), stop_early);
  if (!r0.valid) {
    stamp(std::move(r0), 0, "start frame");
    if (stop_early) return rep;
  }
  auto r1 = validate_drawing(step_end(s), stop_early);
  if (!r1.valid) stamp(std::move(r1), 1, "end frame");
  // an invalid endpoint preempts the kinetic scan, which assumes valid frames
  if (!rep.valid) return rep;
  kinetic_step_checks(s, -1, rep, stop_early);
  return rep;
}

ValidityReport verify_morph(const Morph& m, bool stop_early) {
  ValidityReport rep;
  size_t k = m.steps.size();
  if (k == 0) return rep;
  std::vector<char> graph_ok(k, 1);
  for (size_t i = 0; i < k; ++i) {
    if (m.steps[i].graph == m.graph) continue;
    graph_ok[i] = 0;
    Violation v;
    v.kind = "structure";
    v.detail = "step graph differs from the morph graph";
    v.step = (int)i;
    rep.add(std::move(v));
    if (stop_early) return rep;
  }
  std::vector<char> chained(k, 1);
  for (size_t i = 1; i < k; ++i) {
    if (m.steps[i - 1].end == m.steps[i].start) continue;
    chained[i] = 0;
    Violation v;
    v.kind = "frame-chain";
    v.detail = "start frame differs from the previous end frame";
    v.step = (int)i;
    rep.add(std::move(v));
    if (stop_early) return rep;
  }
  // each distinct frame is validated once; a chained start reuses the verdict
  // of the previous end
  auto check_frame = [&](const Drawing& d, size_t stepi, const Rat& t) {
    auto r = validate_drawing(d, stop_early);
    for (auto& v : r.violations) {
      v.step = (int)stepi;
      v.timed = true;
      v.t_lo = v.t_hi = t;
      rep.add(std::move(v));
    }
    return r.valid;
  };
  std::vector<char> sv(k, 0), ev(k, 0);
  for (size_t i = 0; i < k; ++i) {
    if (!graph_ok[i]) continue;
    if (i == 0 || !chained[i] || !graph_ok[i - 1])
      sv[i] = check_frame(step_start(m.steps[i]), i, 0);
    else
      sv[i] = ev[i - 1];
    if (!rep.valid && stop_early) return rep;
    ev[i] = check_frame(step_end(m.steps[i]), i, 1);
    if (!rep.valid && stop_early) return rep;
  }
  for (size_t i = 0; i < k; ++i) {
    if (!graph_ok[i] || !sv[i] || !ev[i]) continue;
    kinetic_step_checks(m.steps[i], (int)i, rep, stop_early);
    if (!rep.valid && stop_early) return rep;
  }
  return rep;
}

Morph restrict_morph(const Morph& m, const std::set<int>& keep) {
  for (int v : keep)
    if (!m.graph.has_vertex(v))
      throw std::invalid_argument("restrict_morph: vertex not in the graph");
  if ((int)keep.size() == m.graph.vertex_count()) return m;
  if (m.steps.empty())
    throw std::invalid_argument("restrict_morph: no frame to anchor the outer face");
  Drawing base = induced_subdrawing(step_start(m.steps.front()), keep);
  Morph out{base.graph, {}};
  for (auto& s : m.steps) {
    LinearStep r;
    r.graph = base.graph;
    for (int v : keep) {
      r.start.emplace(v, s.start.at(v));
      r.end.emplace(v, s.end.at(v));
    }
    out.steps.push_back(std::move(r));
  }
  return out;
}

Clearance certified_clearance(const Morph& m, int x, const std::set<int>& ignore) {
  if (!m.graph.has_vertex(x))
    throw std::invalid_argument("certified_clearance: x not in the graph");
  bool found = false;
  Rat min2;
  for (auto& s : m.steps) {
    MovingPoint xm{s.start.at(x), s.end.at(x)};
    for (int v : m.graph.vertex_ids()) {
      if (v == x || ignore.count(v)) continue;
      Quad D = dist2_poly(xm, MovingPoint{s.start.at(v), s.end.at(v)});
      // exact minimum of the quadratic on the closed interval
      Rat lo = D.at(0);
      Rat e1 = D.at(1);
      if (e1 < lo) lo = e1;
      if (sign(D.c2) > 0) {
        Rat tv = -D.c1 / (2 * D.c2);
        if (sign(tv) > 0 && tv < 1) {
          Rat dv = D.at(tv);
          if (dv < lo) lo = dv;
        }
      }
      if (!found || lo < min2) {
        min2 = lo;
        found = true;
      }
    }
  }
  if (!found) return {Rat(1), true};  // nothing constrains the disk
  if (sign(min2) <= 0)
    throw std::logic_error("certified_clearance: vertex meets x during the morph");
  return {sqrt_lower(min2) / 2, true};
}

TraceEvent linear_event(LinearStep s) {
  TraceEvent e;
  e.kind = TraceEvent::linear;
  e.step = std::move(s);
  return e;
}

TraceEvent contract_event(const Drawing& before, int v, int x) {
  TraceEvent e;
  e.kind = TraceEvent::contract;
  e.v = v;
  e.x = x;
  e.before = before.graph;
  ContractResult res = contract(before, v, x);
  if (!res.ok)
    throw std::invalid_argument("contract_event: contraction breaks the drawing");
  e.after = res.out.graph;
  e.placement = before.at(v);
  return e;
}

TraceEvent uncontract_event(int v, int x, const Point& p) {
  TraceEvent e;
  e.kind = TraceEvent::uncontract;
  e.v = v;
  e.x = x;
  e.placement = p;
  return e;
}

std::optional<std::string> validate_trace(const PseudoMorphTrace& t, bool half) {
  auto err = [](size_t i, const std::string& what) {
    return "event " + std::to_string(i) + ": " + what;
  };
  if (t.events.empty()) return "trace has no events";
  if (t.events.front().kind != TraceEvent::linear)
    return "trace must open with a linear step";
  PlaneGraph cur;
  bool graph_known = false;
  std::map<int, Point> pos = t.events.front().step.start;
  std::vector<const TraceEvent*> open;
  for (size_t i = 0; i < t.events.size(); ++i) {
    const TraceEvent& e = t.events[i];
    switch (e.kind) {
      case TraceEvent::linear:
        if (graph_known && e.step.graph != cur)
          return err(i, "step graph breaks the chain");
        cur = e.step.graph;
        graph_known = true;
        if (e.step.start != pos) return err(i, "step start breaks the frame chain");
        pos = e.step.end;
        break;
      case TraceEvent::contract: {
        if (graph_known && e.before != cur)
          return err(i, "contraction graph breaks the chain");
        cur = e.before;
        graph_known = true;
        if (!cur.has_vertex(e.v) || !cur.has_vertex(e.x) || e.v == e.x)
          return err(i, "contraction endpoints missing from the graph");
        auto it = pos.find(e.v);
        if (it == pos.end() || !(it->second == e.placement))
          return err(i, "contraction placement differs from the current frame");
        ContractResult res = contract(Drawing{cur, pos}, e.v, e.x);
        if (!res.ok) return err(i, "contraction breaks the drawing at this frame");
        if (e.after != res.out.graph)
          return err(i, "after-graph differs from the contraction of this frame");
        open.push_back(&e);
        cur = e.after;
        pos.erase(e.v);
        break;
      }
      case TraceEvent::uncontract:
        if (open.empty()) {
          if (!half) return err(i, "uncontraction without a matching contraction");
          graph_known = false;  // the next graph-bearing event re-anchors
        } else {
          const TraceEvent* top = open.back();
          open.pop_back();
          if (top->v != e.v || top->x != e.x)
            return err(i, "uncontraction out of nesting order");
          cur = top->before;
        }
        if (pos.count(e.v)) return err(i, "uncontracted vertex already placed");
        pos.emplace(e.v, e.placement);
        break;
    }
  }
  if (!open.empty() && !half) return "unmatched contraction left open at the end";
  return std::nullopt;
}

PseudoMorphTrace reverse_trace(const PseudoMorphTrace& t) {
  std::vector<TraceEvent> rev;
  rev.reserve(t.events.size());
  std::vector<const TraceEvent*> open;
  for (const TraceEvent& e : t.events) {
    switch (e.kind) {
      case TraceEvent::linear:
        rev.push_back(linear_event(reversed_step(e.step)));
        break;
      case TraceEvent::contract:
        open.push_back(&e);
        rev.push_back(uncontract_event(e.v, e.x, e.placement));
        break;
      case TraceEvent::uncontract: {
        if (open.empty())
          throw std::invalid_argument("reverse_trace: uncontraction without its contraction");
        const TraceEvent* top = open.back();
        open.pop_back();
        TraceEvent c;
        c.kind = TraceEvent::contract;
        c.v = e.v;
        c.x = e.x;
        c.before = top->before;
        c.after = top->after;  // LIFO nesting restores this exact graph
        c.placement = e.placement;
        rev.push_back(std::move(c));
        break;
      }
    }
  }
  std::reverse(rev.begin(), rev.end());
  return {std::move(rev)};
}

PseudoMorphTrace concat_traces(PseudoMorphTrace a, const PseudoMorphTrace& b) {
  a.events.insert(a.events.end(), b.events.begin(), b.events.end());
  return a;
}

Drawing trace_first_drawing(const PseudoMorphTrace& t) {
  if (t.events.empty() || t.events.front().kind != TraceEvent::linear)
    throw std::logic_error("trace_first_drawing: trace does not open with a step");
  return step_start(t.events.front().step);
}

Drawing trace_last_drawing(const PseudoMorphTrace& t) {
  if (t.events.empty() || t.events.back().kind != TraceEvent::linear)
    throw std::logic_error("trace_last_drawing: trace does not close with a step");
  return step_end(t.events.back().step);
}

}  // namespace planemorph
