#include "planemorph/plane_graph.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace planemorph {

FaceWalk canonical_face(const FaceWalk& w) {
  if (w.empty()) return w;
  FaceWalk best = w;
  FaceWalk cur = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

FaceWalk face_from_vertex_walk(const std::vector<int>& verts) {
  FaceWalk w;
  for (size_t i = 0; i < verts.size(); ++i)
    w.push_back({verts[i], verts[(i + 1) % verts.size()]});
  return canonical_face(w);
}

std::vector<int> vertex_walk(const FaceWalk& w) {
  std::vector<int> out;
  for (auto& e : w) out.push_back(e.first);
  return out;
}

bool PlaneGraph::has_edge(int u, int v) const {
  auto it = rotation.find(u);
  if (it == rotation.end()) return false;
  return std::find(it->second.begin(), it->second.end(), v) != it->second.end();
}

int PlaneGraph::degree(int v) const { return (int)rotation.at(v).size(); }

size_t PlaneGraph::edge_count() const {
  size_t half = 0;
  for (auto& [v, nbrs] : rotation) half += nbrs.size();
  return half / 2;
}

std::vector<int> PlaneGraph::vertex_ids() const {
  std::vector<int> out;
  for (auto& [v, nbrs] : rotation) out.push_back(v);
  return out;
}

std::vector<std::pair<int, int>> PlaneGraph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (auto& [v, nbrs] : rotation)
    for (int u : nbrs)
      if (v < u) out.push_back({v, u});
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<int>& PlaneGraph::neighbors(int v) const { return rotation.at(v); }

int PlaneGraph::rot_index(int v, int u) const {
  const auto& r = rotation.at(v);
  auto it = std::find(r.begin(), r.end(), u);
  return it == r.end() ? -1 : (int)(it - r.begin());
}

int PlaneGraph::cw_next(int v, int u) const {
  const auto& r = rotation.at(v);
  int i = rot_index(v, u);
  assert(i >= 0);
  return r[(i + 1) % r.size()];
}

int PlaneGraph::cw_prev(int v, int u) const {
  const auto& r = rotation.at(v);
  int i = rot_index(v, u);
  assert(i >= 0);
  return r[(i + r.size() - 1) % r.size()];
}

void PlaneGraph::normalize() {
  for (auto& [v, nbrs] : rotation) {
    if (nbrs.empty()) continue;
    auto it = std::min_element(nbrs.begin(), nbrs.end());
    std::rotate(nbrs.begin(), it, nbrs.end());
  }
  outer = canonical_face(outer);
}

std::pair<int, int> face_next(const PlaneGraph& g, int u, int v) {
  return {v, g.cw_next(v, u)};
}

FaceWalk trace_face_from(const PlaneGraph& g, int u, int v) {
  FaceWalk w;
  std::pair<int, int> cur{u, v};
  do {
    w.push_back(cur);
    cur = face_next(g, cur.first, cur.second);
  } while (cur != std::make_pair(u, v));
  return w;
}

std::vector<FaceWalk> trace_faces(const PlaneGraph& g) {
  std::set<std::pair<int, int>> seen;
  std::vector<FaceWalk> out;
  for (auto& [v, nbrs] : g.rotation)
    for (int u : nbrs) {
      if (seen.count({v, u})) continue;
      FaceWalk w = trace_face_from(g, v, u);
      for (auto& e : w) seen.insert(e);
      out.push_back(canonical_face(w));
    }
  if (g.rotation.size() == 1 && out.empty()) out.push_back({});  // lone vertex
  std::sort(out.begin(), out.end());
  return out;
}

int component_count(const PlaneGraph& g) {
  std::set<int> seen;
  int comps = 0;
  for (auto& [start, nbrs] : g.rotation) {
    if (seen.count(start)) continue;
    ++comps;
    std::vector<int> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.rotation.at(v))
        if (seen.insert(u).second) stack.push_back(u);
    }
  }
  return comps;
}

bool connected(const PlaneGraph& g) {
  return !g.rotation.empty() && component_count(g) == 1;
}

std::optional<std::string> check_embedding(const PlaneGraph& g) {
  if (g.rotation.empty()) return "graph has no vertices";
  for (auto& [v, nbrs] : g.rotation) {
    std::set<int> dist(nbrs.begin(), nbrs.end());
    if (dist.size() != nbrs.size())
      return "duplicate neighbor around vertex " + std::to_string(v);
    if (dist.count(v)) return "self loop at vertex " + std::to_string(v);
    for (int u : nbrs) {
      if (!g.has_vertex(u))
        return "rotation of " + std::to_string(v) + " names missing vertex " +
               std::to_string(u);
      if (!g.has_edge(u, v))
        return "edge " + std::to_string(v) + "-" + std::to_string(u) +
               " missing its reverse direction";
    }
  }
  size_t n = g.vertex_count(), m = g.edge_count();
  if (n > 1)
    for (auto& [v, nbrs] : g.rotation)
      if (nbrs.empty()) return "isolated vertex " + std::to_string(v);
  auto faces = trace_faces(g);
  size_t expect = m + 2 * component_count(g) - n;
  if (faces.size() != expect)
    return "rotation system is not planar: traced " + std::to_string(faces.size()) +
           " faces, planarity needs " + std::to_string(expect);
  FaceWalk canon = canonical_face(g.outer);
  if (!std::binary_search(faces.begin(), faces.end(), canon))
    return "outer walk is not a face of the rotation system";
  return std::nullopt;
}

PlaneGraph contract_graph(const PlaneGraph& g, int v, int x) {
  assert(g.has_edge(v, x));
  const auto& rv = g.rotation.at(v);
  int ix = g.rot_index(v, x);
  std::vector<int> fan;  // v's neighbors clockwise starting after x
  for (size_t k = 1; k < rv.size(); ++k) fan.push_back(rv[(ix + k) % rv.size()]);

  PlaneGraph out = g;
  out.rotation.erase(v);
  auto& rx = out.rotation.at(x);
  auto slot = std::find(rx.begin(), rx.end(), v);
  size_t at = slot - rx.begin();
  rx.erase(slot);
  std::vector<int> fresh;
  for (int a : fan)
    if (std::find(rx.begin(), rx.end(), a) == rx.end()) fresh.push_back(a);
  rx.insert(rx.begin() + at, fresh.begin(), fresh.end());

  for (int a : fan) {
    auto& ra = out.rotation.at(a);
    auto pv = std::find(ra.begin(), ra.end(), v);
    if (std::find(ra.begin(), ra.end(), x) != ra.end())
      ra.erase(pv);  // parallel edge collapses, keep the existing (a,x)
    else
      *pv = x;
  }
  out.outer.clear();
  out.normalize();
  return out;
}

}  // namespace planemorph
