#include "planemorph/sp_reduce.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

namespace planemorph {

namespace {

// first parallel node in preorder with no parallel node below it, -1 if none
int lowest_split(const DecompositionTree& t) {
  std::vector<char> deep(t.nodes.size(), 0);
  std::function<void(int)> mark = [&](int i) {
    for (int c : t.at(i).children) {
      mark(c);
      if (deep[c] || t.at(c).kind == DecompNode::P) deep[i] = 1;
    }
  };
  mark(t.root);
  int found = -1;
  std::function<void(int)> scan = [&](int i) {
    if (found >= 0) return;
    if (t.at(i).kind == DecompNode::P && !deep[i]) {
      found = i;
      return;
    }
    for (int c : t.at(i).children) scan(c);
  };
  scan(t.root);
  return found;
}

// pole-to-pole vertices of a branch whose cells are all single edges
std::vector<int> path_of(const DecompositionTree& t, int node) {
  const DecompNode& n = t.at(node);
  std::vector<int> out = {n.s};
  if (n.kind == DecompNode::Q) {
    out.push_back(n.t);
    return out;
  }
  if (n.kind != DecompNode::S)
    throw std::logic_error("path_of: branch below the innermost split is not a chain");
  for (int c : n.children) {
    if (t.at(c).kind != DecompNode::Q)
      throw std::logic_error("path_of: cell below the innermost split is not an edge");
    out.push_back(t.at(c).t);
  }
  if (out.back() != n.t) throw std::logic_error("path_of: chain does not reach its pole");
  return out;
}

bool in_closed_triangle(const Point& a, const Point& b, const Point& c, const Point& z) {
  int o = orient(a, b, c);
  if (o < 0) return in_closed_triangle(a, c, b, z);
  if (o == 0) {
    // flat triangle: containment means lying on the covering segment
    auto less = [](const Point& p, const Point& q) {
      return p.x < q.x || (p.x == q.x && p.y < q.y);
    };
    Point lo = a, hi = a;
    for (const Point& p : {b, c}) {
      if (less(p, lo)) lo = p;
      if (less(hi, p)) hi = p;
    }
    return on_closed_segment(z, lo, hi);
  }
  return orient(a, b, z) >= 0 && orient(b, c, z) >= 0 && orient(c, a, z) >= 0;
}

// triangulation bookkeeping over one drawn cycle
struct Fan {
  std::vector<std::pair<int, int>> chords;  // vertex ids, lower first
  std::map<int, int> load;                  // chords touching each vertex
  std::vector<int> clips;                   // removal order
};

int load_of(const Fan& f, int v) {
  auto it = f.load.find(v);
  return it == f.load.end() ? 0 : it->second;
}

// clip strictly convex empty ears until only a triangle is left. Preference
// for the next corner: corners no chord touches yet, then chord-touched
// corners, then the poles, ties by rank. Each leading stage of forced instead
// names candidates for that round in order; the first that is an ear wins.
// Flat corners are never ears here, so a clipped corner always leaves the
// remaining region entirely and every face stays free of the other corners
Fan triangulate_cycle(std::vector<int> cycle, const std::map<int, Point>& pos,
                      const std::map<int, int>& rank, int cs, int ct,
                      std::vector<std::vector<int>> forced) {
  std::vector<Point> poly;
  poly.reserve(cycle.size());
  for (int v : cycle) poly.push_back(pos.at(v));
  if (sign(signed_area2(poly)) < 0) std::reverse(cycle.begin(), cycle.end());

  int n = cycle.size();
  Fan fan;
  if (n == 3) return fan;
  std::vector<int> nxt(n), prv(n);
  for (int i = 0; i < n; ++i) {
    nxt[i] = (i + 1) % n;
    prv[i] = (i + n - 1) % n;
  }
  std::vector<char> dead(n, 0);
  auto pt = [&](int i) -> const Point& { return pos.at(cycle[i]); };
  auto is_ear = [&](int i) {
    int a = prv[i], b = nxt[i];
    if (orient(pt(a), pt(i), pt(b)) <= 0) return false;
    for (int j = nxt[b]; j != a; j = nxt[j])
      if (in_closed_triangle(pt(a), pt(i), pt(b), pt(j))) return false;
    return true;
  };

  for (int alive = n; alive > 3; --alive) {
    int pick = -1;
    if (!forced.empty()) {
      for (int want : forced.front()) {
        for (int i = 0; i < n && pick < 0; ++i)
          if (!dead[i] && cycle[i] == want && is_ear(i)) pick = i;
        if (pick >= 0) break;
      }
      if (pick < 0) throw std::logic_error("triangulate_cycle: no forced corner is an ear");
      forced.erase(forced.begin());
    } else {
      std::vector<std::pair<std::pair<int, int>, int>> cand;  // ((class, rank), index)
      for (int i = 0; i < n; ++i) {
        if (dead[i]) continue;
        int vid = cycle[i];
        int cls = (vid == cs || vid == ct) ? 2 : (load_of(fan, vid) ? 1 : 0);
        cand.push_back({{cls, rank.at(vid)}, i});
      }
      std::sort(cand.begin(), cand.end());
      for (auto& [key, i] : cand)
        if (is_ear(i)) {
          pick = i;
          break;
        }
      if (pick < 0) throw std::logic_error("triangulate_cycle: no strictly convex ear");
    }
    int a = prv[pick], b = nxt[pick];
    fan.clips.push_back(cycle[pick]);
    fan.chords.push_back(std::minmax(cycle[a], cycle[b]));
    ++fan.load[cycle[a]];
    ++fan.load[cycle[b]];
    dead[pick] = 1;
    nxt[a] = b;
    prv[b] = a;
  }
  return fan;
}

// corner candidates are interior vertices no chord touches; first by rank wins
int pick_corner(const Fan& fan, const std::vector<int>& pref, int cs, int ct) {
  for (int v : pref) {
    if (v == cs || v == ct) continue;
    if (load_of(fan, v) == 0) return v;
  }
  return -1;
}

LinearStep verified_step(const PlaneGraph& g, std::map<int, Point> from,
                         std::map<int, Point> to, const char* what) {
  LinearStep s{g, std::move(from), std::move(to)};
  ValidityReport rep = verify_linear_step(s, true);
  if (!rep.valid)
    throw std::logic_error(std::string(what) + " step rejected: " + rep.summary());
  return s;
}

}  // namespace

ReduceResult reduce(const Drawing& d, const DecompositionTree& t) {
  if (!(d.graph == t.graph))
    throw std::invalid_argument("reduce: drawing and tree disagree on the graph");
  if (t.graph.vertex_count() < 3)
    throw std::invalid_argument("reduce: nothing left to reduce");

  int nu = lowest_split(t);
  int cs, ct;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;  // earlier, later
  if (nu >= 0) {
    const DecompNode& N = t.at(nu);
    cs = N.s;
    ct = N.t;
    int m = N.children.size();
    int q = -1;
    for (int i = 0; i < m; ++i)
      if (t.at(N.children[i]).kind == DecompNode::Q) q = i;
    if (q >= 0) {
      // a branch right next to the parallel edge keeps the cycle one-sided
      if (q + 1 < m) pairs.push_back({path_of(t, N.children[q]), path_of(t, N.children[q + 1])});
      if (q - 1 >= 0) pairs.push_back({path_of(t, N.children[q - 1]), path_of(t, N.children[q])});
    } else {
      for (int i = m - 2; i >= 0; --i)
        pairs.push_back({path_of(t, N.children[i]), path_of(t, N.children[i + 1])});
    }
  } else {
    // no split anywhere: the graph is one cycle through the root edge
    const DecompNode& R = t.at(t.root);
    cs = R.s;
    ct = R.t;
    if (R.children.empty()) throw std::invalid_argument("reduce: bare edge cannot shrink");
    pairs.push_back({{R.s, R.t}, path_of(t, R.children.front())});
  }

  auto cycle_of = [](const std::vector<int>& plo, const std::vector<int>& phi) {
    std::vector<int> cyc = plo;
    for (int i = (int)phi.size() - 2; i >= 1; --i) cyc.push_back(phi[i]);
    return cyc;
  };
  auto pref_of = [&](const std::vector<int>& plo, const std::vector<int>& phi) {
    std::vector<int> pref;
    for (size_t i = 1; i + 1 < phi.size(); ++i) pref.push_back(phi[i]);
    for (size_t i = 1; i + 1 < plo.size(); ++i) pref.push_back(plo[i]);
    pref.push_back(cs);
    pref.push_back(ct);
    return pref;
  };
  auto rank_of = [](const std::vector<int>& pref) {
    std::map<int, int> rank;
    for (size_t i = 0; i < pref.size(); ++i) rank.emplace(pref[i], (int)i);
    return rank;
  };

  ReductionCase rc;
  rc.nu = nu;
  bool found = false;

  // classify a finished triangulation; true when a removable corner exists
  auto classify = [&](const Fan& fan, const std::vector<int>& plo, const std::vector<int>& phi,
                      const std::vector<int>& pref) {
    int v = pick_corner(fan, pref, cs, ct);
    if (v < 0) return false;
    bool on_hi = std::find(phi.begin() + 1, phi.end() - 1, v) != phi.end() - 1;
    rc.p2 = on_hi ? phi : plo;
    rc.p1 = on_hi ? plo : phi;
    size_t at = std::find(rc.p2.begin(), rc.p2.end(), v) - rc.p2.begin();
    rc.v = v;
    rc.host = rc.p2[at - 1];
    rc.u3 = -1;
    rc.chords = fan.chords;
    if (rc.p2.size() > 3)
      rc.kind = ReductionCase::ear_path;
    else
      rc.kind = t.graph.has_edge(cs, ct) ? ReductionCase::ear_drop : ReductionCase::ear_new_edge;
    return true;
  };

  for (auto& [plo, phi] : pairs) {
    std::vector<int> pref = pref_of(plo, phi);
    Fan fan = triangulate_cycle(cycle_of(plo, phi), d.pos, rank_of(pref), cs, ct, {});
    if (classify(fan, plo, phi, pref)) {
      found = true;
      break;
    }
  }
  if (!found) {
    // no corner could stay chord-free, so the cycle has no interior ear at
    // all and both poles are ears. Clip the source pole, then the neighbor
    // beside it; that neighbor detaches over the chord its clip left behind
    if (nu < 0) throw std::logic_error("reduce: a bare cycle kept every corner braced");
    auto& [plo, phi] = pairs.front();
    if (plo.size() < 3 || phi.size() < 3)
      throw std::logic_error("reduce: braced cycle with a single-edge branch");
    std::vector<int> pref = pref_of(plo, phi);
    Fan fan = triangulate_cycle(cycle_of(plo, phi), d.pos, rank_of(pref), cs, ct,
                                {{cs}, {phi[1], plo[1]}});
    if (classify(fan, plo, phi, pref)) {
      found = true;
    } else {
      if (fan.clips.empty() || fan.clips.front() != cs)
        throw std::logic_error("reduce: pole clip missing from the braced cycle");
      int u2 = fan.clips.size() > 1 ? fan.clips[1] : phi[1];
      bool on_hi = u2 == phi[1];
      if (!on_hi && u2 != plo[1])
        throw std::logic_error("reduce: braced detach is not beside the source pole");
      rc.p2 = on_hi ? phi : plo;
      rc.p1 = on_hi ? plo : phi;
      rc.v = u2;
      rc.host = rc.p1[1];
      rc.u3 = rc.p2[2];
      rc.chords = fan.chords;
      rc.kind = t.at(nu).children.size() > 2 ? ReductionCase::braced_split
                                             : ReductionCase::braced_chain;
      found = true;
    }
  }

  ContractResult res = contract(d, rc.v, rc.host);
  if (!res.ok)
    throw std::logic_error("reduce: contraction rejected: " + res.report.summary());

  TraceEvent ev;
  ev.kind = TraceEvent::contract;
  ev.v = rc.v;
  ev.x = rc.host;
  ev.before = d.graph;
  ev.after = res.out.graph;
  ev.placement = d.at(rc.v);

  ReduceResult out;
  out.prefix.events.push_back(std::move(ev));
  out.after = std::move(res.out);
  out.tree = build_decomposition_tree(out.after.graph, t.at(t.root).s, t.at(t.root).t);
  out.record = std::move(rc);
  return out;
}

PseudoMorphTrace restore(const Drawing& canonical_reduced, const ReductionCase& rc,
                         const DecompositionTree& t) {
  const Drawing& start = canonical_reduced;
  if (start.pos.count(rc.v))
    throw std::invalid_argument("restore: the removed corner is already drawn");
  if (start.pos.size() + 1 != t.graph.vertex_count())
    throw std::invalid_argument("restore: drawing does not match the reduced graph");

  Drawing target = canonical_drawing(t);
  std::map<int, Point> goal;
  for (auto& [u, p] : start.pos) goal.emplace(u, target.at(u));

  PseudoMorphTrace tr;
  if (rc.kind == ReductionCase::ear_path) {
    // the shortened chain lies on the same two-leg polyline as the full one,
    // with a joint pinned to the bend on both sides, and everything off the
    // chain already sits at its final spot; drop the corner onto the open
    // cell between its neighbors, then respace all joints along the legs in
    // one slide
    auto it = std::find(rc.p2.begin(), rc.p2.end(), rc.v);
    if (it == rc.p2.begin() || it == rc.p2.end() || it + 1 == rc.p2.end())
      throw std::logic_error("restore: corner missing from its chain");
    Point a = start.at(*(it - 1)), b = start.at(*(it + 1));
    Point q{(a.x + b.x) / 2, (a.y + b.y) / 2};
    tr.events.push_back(linear_event(identity_step(start)));
    tr.events.push_back(uncontract_event(rc.v, rc.host, q));
    std::map<int, Point> mid = start.pos;
    mid.emplace(rc.v, q);
    tr.events.push_back(
        linear_event(verified_step(t.graph, mid, target.pos, "restore: respace")));
    tr.events.push_back(linear_event(identity_step(target)));
    return tr;
  }
  LinearStep slide{start.graph, start.pos, goal};
  ValidityReport rep = verify_linear_step(slide, true);
  if (rep.valid) {
    tr.events.push_back(linear_event(std::move(slide)));
    tr.events.push_back(uncontract_event(rc.v, rc.host, target.at(rc.v)));
  } else if (rc.kind == ReductionCase::ear_new_edge && rc.nu >= 0) {
    // the fresh parallel edge sits on the pole axis, and branches past the
    // replaced one change sides around it; park those, bring everything else
    // home, then walk each parked branch across the now-open axis, innermost
    // target first
    const DecompNode& N = t.at(rc.nu);
    Point pn = target.at(N.s);
    Point axis = target.at(N.t) - pn;
    auto side_of = [&](const Point& p) { return sign(cross(axis, p - pn)); };
    std::vector<std::vector<int>> movers;  // interior vertices per parked branch
    for (int c : N.children) {
      if (t.at(c).kind == DecompNode::Q) continue;
      std::vector<int> pv = path_of(t, c);
      if (pv == rc.p2) continue;
      if (side_of(start.at(pv[1])) != side_of(target.at(pv[1])))
        movers.push_back({pv.begin() + 1, pv.end() - 1});
    }
    std::map<int, Point> parked = goal;
    for (auto& pv : movers)
      for (int u : pv) parked[u] = start.at(u);
    tr.events.push_back(
        linear_event(verified_step(start.graph, start.pos, parked, "restore: park")));
    tr.events.push_back(uncontract_event(rc.v, rc.host, target.at(rc.v)));
    std::map<int, Point> cur = parked;
    cur.emplace(rc.v, target.at(rc.v));
    for (auto& pv : movers) {
      std::map<int, Point> nxt = cur;
      for (int u : pv) nxt[u] = target.at(u);
      tr.events.push_back(linear_event(verified_step(t.graph, cur, nxt, "restore: crossing")));
      cur = std::move(nxt);
    }
  } else {
    throw std::logic_error("restore: direct step rejected: " + rep.summary());
  }
  tr.events.push_back(linear_event(identity_step(target)));
  return tr;
}

namespace {

// verified steps taking a two-vertex drawing onto the given frame
void straighten_edge(PseudoMorphTrace& tr, const Drawing& d0, const Drawing& goal) {
  if (d0.pos == goal.pos) return;
  {
    LinearStep direct{d0.graph, d0.pos, goal.pos};
    if (verify_linear_step(direct, true).valid) {
      tr.events.push_back(linear_event(std::move(direct)));
      return;
    }
  }
  int a = goal.pos.begin()->first;
  int b = std::next(goal.pos.begin())->first;
  std::map<int, Point> cur = d0.pos;
  Point delta = goal.at(a) - d0.at(a);
  if (!(delta == Point{})) {
    std::map<int, Point> shifted{{a, goal.at(a)}, {b, d0.at(b) + delta}};
    tr.events.push_back(
        linear_event(verified_step(d0.graph, cur, shifted, "straighten: shift")));
    cur = std::move(shifted);
  }
  if (cur == goal.pos) return;
  {
    LinearStep mv{d0.graph, cur, goal.pos};
    if (verify_linear_step(mv, true).valid) {
      tr.events.push_back(linear_event(std::move(mv)));
      return;
    }
  }
  // the straight leg sweeps over the pinned vertex: detour to one side of the
  // segment; at most one of the two candidates can be blocked as well
  Point mid = frac(1, 2) * (goal.at(a) + goal.at(b));
  Point arm = goal.at(b) - goal.at(a);
  for (const Point& w : {mid + Point{-arm.y, arm.x}, mid - Point{-arm.y, arm.x}}) {
    std::map<int, Point> out{{a, goal.at(a)}, {b, w}};
    LinearStep leg1{d0.graph, cur, out};
    LinearStep leg2{d0.graph, out, goal.pos};
    if (verify_linear_step(leg1, true).valid && verify_linear_step(leg2, true).valid) {
      tr.events.push_back(linear_event(std::move(leg1)));
      tr.events.push_back(linear_event(std::move(leg2)));
      return;
    }
  }
  throw std::logic_error("straighten: both detours rejected");
}

}  // namespace

PseudoMorphTrace sp_pseudo_morph_to_canonical(const PlaneGraph& g, const Drawing& d) {
  if (!(d.graph == g))
    throw std::invalid_argument("sp_pseudo_morph_to_canonical: drawing is not on g");
  ValidityReport rep = validate_drawing(d);
  if (!rep.valid)
    throw std::invalid_argument("sp_pseudo_morph_to_canonical: invalid drawing: " +
                                rep.summary());
  if (g.vertex_count() < 2 || g.outer.empty())
    throw std::invalid_argument("sp_pseudo_morph_to_canonical: need a drawn edge");

  std::pair<int, int> re{-1, -1};
  for (auto& [u, w] : g.outer) {
    std::pair<int, int> e{std::min(u, w), std::max(u, w)};
    if (re.first < 0 || e < re) re = e;
  }
  DecompositionTree tree = build_decomposition_tree(g, re.first, re.second);

  PseudoMorphTrace tr;
  tr.events.push_back(linear_event(identity_step(d)));

  std::vector<PseudoMorphTrace> unwind;
  Drawing cur = d;
  while (cur.graph.vertex_count() > 2) {
    ReduceResult rr = reduce(cur, tree);
    tr.events.insert(tr.events.end(), rr.prefix.events.begin(), rr.prefix.events.end());
    unwind.push_back(restore(canonical_drawing(rr.tree), rr.record, tree));
    cur = std::move(rr.after);
    tree = std::move(rr.tree);
  }
  straighten_edge(tr, cur, canonical_drawing(tree));
  for (auto it = unwind.rbegin(); it != unwind.rend(); ++it)
    tr.events.insert(tr.events.end(), it->events.begin(), it->events.end());
  return tr;
}

}  // namespace planemorph
