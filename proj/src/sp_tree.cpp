#include "planemorph/sp_tree.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace planemorph {

namespace {

using Edge = std::pair<int, int>;

Edge norm_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

BlockStructure block_structure(const PlaneGraph& g) {
  BlockStructure out;
  std::map<int, int> num, low;
  std::vector<Edge> stack;
  int counter = 0;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    num[v] = low[v] = ++counter;
    int children = 0;
    for (int w : g.neighbors(v)) {
      if (w == parent) continue;
      if (!num.count(w)) {
        ++children;
        stack.push_back(norm_edge(v, w));
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= num[v]) {
          // v closes a block; a non-root v is a cut vertex, the root only
          // from its second child on (every child block pops at the root)
          if (parent != -1 || children >= 2) out.cut_vertices.insert(v);
          std::vector<Edge> block;
          Edge top = norm_edge(v, w);
          while (true) {
            Edge e = stack.back();
            stack.pop_back();
            block.push_back(e);
            if (e == top) break;
          }
          std::sort(block.begin(), block.end());
          out.blocks.push_back(std::move(block));
        }
      } else if (num[w] < num[v]) {
        stack.push_back(norm_edge(v, w));
        low[v] = std::min(low[v], num[w]);
      }
    }
  };
  for (int root : g.vertex_ids()) {
    if (num.count(root)) continue;
    dfs(root, -1);
  }
  return out;
}

namespace {

// generalized series-parallel reduction on a multigraph; the fixpoint is
// empty exactly when no subdivided complete graph on four vertices hides
// inside (parallel collapse, degree-2 smoothing, and trimming of loops and
// degree <= 1 vertices all preserve that obstruction)
bool reduces_away(std::vector<Edge> edges) {
  std::map<int, std::map<int, int>> adj;
  for (auto& [a, b] : edges)
    if (a != b) {
      adj[a][b]++;
      adj[b][a]++;
    }
  auto drop_edge = [&](int a, int b) {
    if (--adj[a][b] == 0) adj[a].erase(b);
    if (--adj[b][a] == 0) adj[b].erase(a);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = adj.begin(); it != adj.end();) {
      int v = it->first;
      int total = 0;
      for (auto& [w, c] : it->second) total += c;
      if (total == 0) {
        it = adj.erase(it);
        changed = true;
        continue;
      }
      if (total == 1) {
        int w = it->second.begin()->first;
        drop_edge(v, w);
        it = adj.erase(it);
        changed = true;
        continue;
      }
      if (it->second.size() == 1 && total > 1) {
        // all edges parallel to one neighbour: collapses to degree 1
        int w = it->second.begin()->first;
        adj[v][w] = 1;
        adj[w][v] = 1;
        changed = true;
        ++it;
        continue;
      }
      if (total == 2) {
        auto a = it->second.begin();
        int w1 = a->first;
        int w2 = std::next(a)->first;
        drop_edge(v, w1);
        drop_edge(v, w2);
        it = adj.erase(it);
        adj[w1][w2]++;
        adj[w2][w1]++;
        changed = true;
        continue;
      }
      // collapse any parallel bundle
      for (auto& [w, c] : it->second)
        if (c > 1) {
          c = 1;
          adj[w][v] = 1;
          changed = true;
        }
      ++it;
    }
  }
  return adj.empty();
}

std::vector<int> k4_witness(std::vector<Edge> h) {
  // peel edges while the obstruction survives; the minimal survivor is a
  // subdivided complete graph on four vertices, its branch vertices are the
  // degree-3 ones
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (size_t i = 0; i < h.size(); ++i) {
      std::vector<Edge> h2 = h;
      h2.erase(h2.begin() + i);
      if (!reduces_away(h2)) {
        h = std::move(h2);
        shrunk = true;
        break;
      }
    }
  }
  std::map<int, int> deg;
  for (auto& [a, b] : h) {
    deg[a]++;
    deg[b]++;
  }
  std::vector<int> out;
  for (auto& [v, d] : deg)
    if (d >= 3) out.push_back(v);
  assert(out.size() == 4);
  return out;
}

}  // namespace

SpCheck recognize_series_parallel(const PlaneGraph& g) {
  if (g.vertex_count() == 0)
    throw std::invalid_argument("recognize_series_parallel: empty graph");
  if (component_count(g) != 1)
    throw std::invalid_argument("recognize_series_parallel: graph must be connected");
  for (auto& block : block_structure(g).blocks)
    if (!reduces_away(block)) return {false, k4_witness(block)};
  return {true, {}};
}

namespace {

// rotation list of v restricted to an edge subset, linearized by cutting at
// an incident edge outside the subset (poles always have one)
std::vector<int> inside_rotation(const PlaneGraph& g, const std::set<Edge>& es, int v) {
  const std::vector<int>& rot = g.rotation.at(v);
  size_t n = rot.size(), start = 0;
  for (size_t i = 0; i < n; ++i)
    if (!es.count(norm_edge(v, rot[i]))) {
      start = i;
      break;
    }
  std::vector<int> out;
  for (size_t k = 1; k <= n; ++k) {
    int w = rot[(start + k) % n];
    if (es.count(norm_edge(v, w))) out.push_back(w);
  }
  return out;
}

PlaneGraph filtered_graph(const PlaneGraph& g, const std::set<Edge>& es) {
  PlaneGraph sub;
  for (auto& [a, b] : es) {
    sub.rotation[a];
    sub.rotation[b];
  }
  for (auto& [v, rot] : sub.rotation)
    for (int w : g.rotation.at(v))
      if (es.count(norm_edge(v, w))) rot.push_back(w);
  return sub;
}

int add_node(DecompositionTree& tr, DecompNode::Kind k, int s, int t) {
  DecompNode n;
  n.kind = k;
  n.s = s;
  n.t = t;
  tr.nodes.push_back(std::move(n));
  return (int)tr.nodes.size() - 1;
}

int decompose(const PlaneGraph& g, DecompositionTree& tr, const std::set<Edge>& es,
              int s, int t) {
  if (es.size() == 1) {
    assert(*es.begin() == norm_edge(s, t));
    return add_node(tr, DecompNode::Q, s, t);
  }
  PlaneGraph sub = filtered_graph(g, es);
  BlockStructure bs = block_structure(sub);

  // walk the block chain from s to t; anything off the chain means the input
  // was not biconnected series-parallel with this root
  std::vector<std::tuple<int, int, int>> segments;  // block idx, from, to
  std::vector<char> used(bs.blocks.size(), 0);
  int cur = s;
  while (cur != t) {
    int bi = -1;
    for (size_t i = 0; i < bs.blocks.size(); ++i) {
      if (used[i]) continue;
      for (auto& [a, b] : bs.blocks[i])
        if (a == cur || b == cur) {
          bi = (int)i;
          break;
        }
      if (bi >= 0) break;
    }
    if (bi < 0) throw std::invalid_argument("decomposition: blocks do not chain between the poles");
    used[bi] = 1;
    std::set<int> verts;
    for (auto& [a, b] : bs.blocks[bi]) {
      verts.insert(a);
      verts.insert(b);
    }
    int nxt = -1;
    for (int x : verts) {
      if (x == cur) continue;
      if (x == t || bs.cut_vertices.count(x)) {
        if (nxt != -1) throw std::invalid_argument("decomposition: block chain branches");
        nxt = x;
      }
    }
    if (nxt < 0) throw std::invalid_argument("decomposition: block chain dead-ends");
    segments.emplace_back(bi, cur, nxt);
    cur = nxt;
  }
  for (char u : used)
    if (!u) throw std::invalid_argument("decomposition: blocks hang off the pole chain");

  if (segments.size() >= 2) {
    int node = add_node(tr, DecompNode::S, s, t);
    std::vector<int> kids;
    for (auto& [bi, from, to] : segments) {
      std::set<Edge> seg(bs.blocks[bi].begin(), bs.blocks[bi].end());
      int child = decompose(g, tr, seg, from, to);
      if (tr.nodes[child].kind == DecompNode::S)
        throw std::logic_error("decomposition: series node under a series node");
      kids.push_back(child);
    }
    tr.nodes[node].children = std::move(kids);
    return node;
  }

  // single biconnected block with >= 2 edges: split into parallel branches,
  // one per component of the interior plus the direct pole edge
  std::map<int, int> comp;
  int comp_count = 0;
  for (int v : sub.vertex_ids()) {
    if (v == s || v == t || comp.count(v)) continue;
    std::vector<int> queue = {v};
    comp[v] = comp_count;
    while (!queue.empty()) {
      int u = queue.back();
      queue.pop_back();
      for (int w : sub.neighbors(u))
        if (w != s && w != t && !comp.count(w)) {
          comp[w] = comp_count;
          queue.push_back(w);
        }
    }
    ++comp_count;
  }
  std::vector<std::set<Edge>> branch(comp_count);
  bool direct = false;
  for (auto& e : es) {
    auto& [a, b] = e;
    if ((a == s && b == t) || (a == t && b == s)) {
      direct = true;
      continue;
    }
    int inner = comp.count(a) ? a : b;
    branch[comp.at(inner)].insert(e);
  }

  // embedding order: first appearance of each branch in the rotation at s,
  // linearized just past an edge leaving the subgraph
  std::vector<int> order;
  bool direct_placed = false;
  std::vector<char> seen(comp_count, 0);
  for (int w : inside_rotation(g, es, s)) {
    if (w == t) {
      if (direct && !direct_placed) {
        order.push_back(-1);
        direct_placed = true;
      }
      continue;
    }
    int c = comp.at(w);
    if (!seen[c]) {
      seen[c] = 1;
      order.push_back(c);
    }
  }
  if ((int)order.size() < comp_count + (direct ? 1 : 0))
    throw std::invalid_argument("decomposition: parallel branch missing at the pole");
  if (order.size() < 2)
    throw std::invalid_argument("decomposition: parallel split found a single branch");

  int node = add_node(tr, DecompNode::P, s, t);
  std::vector<int> kids;
  for (int c : order) {
    int child;
    if (c < 0) {
      child = add_node(tr, DecompNode::Q, s, t);
    } else {
      child = decompose(g, tr, branch[c], s, t);
      if (tr.nodes[child].kind == DecompNode::P)
        throw std::logic_error("decomposition: parallel node under a parallel node");
    }
    kids.push_back(child);
  }
  tr.nodes[node].children = std::move(kids);
  return node;
}

}  // namespace

DecompositionTree build_decomposition_tree(const PlaneGraph& g, int s, int t) {
  if (!g.has_edge(s, t))
    throw std::invalid_argument("build_decomposition_tree: root edge missing");
  bool on_outer = false;
  for (auto& [a, b] : g.outer)
    on_outer = on_outer || (a == s && b == t) || (a == t && b == s);
  if (!on_outer)
    throw std::invalid_argument("build_decomposition_tree: root edge not on the outer face");
  SpCheck chk = recognize_series_parallel(g);
  if (!chk.sp)
    throw std::invalid_argument("build_decomposition_tree: graph is not series-parallel");
  if (block_structure(g).blocks.size() != 1)
    throw std::invalid_argument("build_decomposition_tree: graph is not biconnected");

  DecompositionTree tr;
  tr.graph = g;
  tr.root = add_node(tr, DecompNode::Q, s, t);
  std::set<Edge> es;
  for (auto& e : g.edge_list()) es.insert(e);
  es.erase(norm_edge(s, t));
  if (!es.empty()) tr.nodes[tr.root].children = {decompose(g, tr, es, s, t)};
  return tr;
}

std::vector<std::pair<int, int>> tree_edges(const DecompositionTree& t, int node) {
  std::vector<Edge> out;
  std::function<void(int)> walk = [&](int i) {
    const DecompNode& n = t.at(i);
    if (n.kind == DecompNode::Q) out.push_back(norm_edge(n.s, n.t));
    for (int c : n.children) walk(c);
  };
  walk(node);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Point linf_unit(const Point& p) {
  Rat m = rat_abs(p.x) > rat_abs(p.y) ? rat_abs(p.x) : rat_abs(p.y);
  return {p.x / m, p.y / m};
}

// squared distance from p to segment [a, b]
Rat seg_dist2(const Point& p, const Point& a, const Point& b) {
  Point ab{b.x - a.x, b.y - a.y};
  Point ap{p.x - a.x, p.y - a.y};
  Rat len2 = ab.x * ab.x + ab.y * ab.y;
  Rat u = ab.x * ap.x + ab.y * ap.y;
  if (sign(u) <= 0 || sign(len2) == 0) return ap.x * ap.x + ap.y * ap.y;
  if (u >= len2) {
    Point bp{p.x - b.x, p.y - b.y};
    return bp.x * bp.x + bp.y * bp.y;
  }
  Point q{a.x + ab.x * u / len2, a.y + ab.y * u / len2};
  Point d{p.x - q.x, p.y - q.y};
  return d.x * d.x + d.y * d.y;
}

// a point strictly inside the clockwise angular gap at v from u to w, close
// enough to v that halving from it converges quickly
Point corner_probe(const Drawing& d, int v, int u, int w) {
  Point pv = d.at(v);
  Point d1{d.at(u).x - pv.x, d.at(u).y - pv.y};
  Point d2{d.at(w).x - pv.x, d.at(w).y - pv.y};
  Point u1 = linf_unit(d1), u2 = linf_unit(d2);
  Point dir{u1.x + u2.x, u1.y + u2.y};
  int cr = sign(d1.x * d2.y - d1.y * d2.x);
  if (cr == 0) {
    dir = {u1.y, -u1.x};  // opposite rays: quarter turn clockwise from u
  } else if (cr > 0) {
    dir = {-dir.x, -dir.y};  // reflex clockwise gap: the sum points outside
  }
  Rat min2;
  bool found = false;
  for (auto& [q, p] : d.pos) {
    if (q == v) continue;
    Rat dd = (p.x - pv.x) * (p.x - pv.x) + (p.y - pv.y) * (p.y - pv.y);
    if (!found || dd < min2) {
      min2 = dd;
      found = true;
    }
  }
  for (auto& [a, b] : d.graph.edge_list()) {
    if (a == v || b == v) continue;
    Rat dd = seg_dist2(pv, d.at(a), d.at(b));
    if (dd < min2) min2 = dd;
  }
  assert(found && sign(min2) > 0);
  Rat lam = sqrt_lower(min2) / 4;  // linf unit has euclidean length <= sqrt(2)
  dir = linf_unit(dir);
  return {pv.x + dir.x * lam, pv.y + dir.y * lam};
}

}  // namespace

AugmentResult biconnect_augment(const PlaneGraph& g, const std::vector<Drawing>& drawings) {
  for (auto& d : drawings)
    if (!(d.graph == g))
      throw std::invalid_argument("biconnect_augment: drawing of a different graph");
  SpCheck chk = recognize_series_parallel(g);
  if (!chk.sp)
    throw std::invalid_argument("biconnect_augment: graph is not series-parallel");

  AugmentResult res{g, drawings, {}};
  while (true) {
    BlockStructure bs = block_structure(res.graph);
    if (bs.blocks.size() <= 1) break;
    int v = *bs.cut_vertices.begin();
    const std::vector<int>& rot = res.graph.rotation.at(v);
    size_t deg = rot.size();
    std::vector<int> bid(deg, -1);
    for (size_t i = 0; i < deg; ++i) {
      Edge e = norm_edge(v, rot[i]);
      for (size_t b = 0; b < bs.blocks.size(); ++b)
        if (std::binary_search(bs.blocks[b].begin(), bs.blocks[b].end(), e)) {
          bid[i] = (int)b;
          break;
        }
    }
    size_t gap = deg;
    for (size_t i = 0; i < deg; ++i)
      if (bid[i] != bid[(i + 1) % deg]) {
        gap = i;
        break;
      }
    if (gap == deg) throw std::logic_error("biconnect_augment: cut vertex without a block gap");
    int u = rot[gap], w = rot[(gap + 1) % deg];
    int z = res.graph.vertex_ids().back() + 1;

    // z bridges the gap: at u it slots just before v, at w just after v,
    // splitting the corner face (u, v, w) with the quadrilateral u, v, w, z
    PlaneGraph g2 = res.graph;
    g2.rotation[z] = {u, w};
    {
      std::vector<int>& ru = g2.rotation[u];
      ru.insert(std::find(ru.begin(), ru.end(), v), z);
      std::vector<int>& rw = g2.rotation[w];
      rw.insert(std::next(std::find(rw.begin(), rw.end(), v)), z);
    }
    for (size_t i = 0; i < g2.outer.size(); ++i) {
      auto& [a, b] = g2.outer[i];
      auto& [b2, c] = g2.outer[(i + 1) % g2.outer.size()];
      if (a == u && b == v && b2 == v && c == w) {
        FaceWalk detour;
        for (size_t k = 0; k < g2.outer.size(); ++k) {
          if (k == i) {
            detour.emplace_back(u, z);
            detour.emplace_back(z, w);
          } else if (k != (i + 1) % g2.outer.size()) {
            detour.push_back(g2.outer[k]);
          }
        }
        g2.outer = canonical_face(detour);
        break;
      }
    }
    g2.normalize();

    for (Drawing& d : res.drawings) {
      Point probe = corner_probe(d, v, u, w);
      Point pv = d.at(v);
      Drawing cand;
      bool ok = false;
      for (int half = 0; half < 64 && !ok; ++half) {
        cand = d;
        cand.graph = g2;
        cand.pos[z] = probe;
        ok = validate_drawing(cand, true).valid;
        probe = {pv.x + (probe.x - pv.x) / 2, pv.y + (probe.y - pv.y) / 2};
      }
      if (!ok) throw std::logic_error("biconnect_augment: no valid placement found");
      d = cand;
    }
    res.graph = g2;
    res.added.push_back(z);
  }
  return res;
}

}  // namespace planemorph
