#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace planemorph {

// directed boundary walk: consecutive directed edges around one face
using FaceWalk = std::vector<std::pair<int, int>>;

// lexicographically least rotation of the walk
FaceWalk canonical_face(const FaceWalk& w);
FaceWalk face_from_vertex_walk(const std::vector<int>& verts);
std::vector<int> vertex_walk(const FaceWalk& w);

// plane graph: clockwise neighbor order per vertex plus the outer face walk.
// rotation lists stay normalized (least neighbor first), outer stays in
// canonical form, so embedding equality is plain field equality.
struct PlaneGraph {
  std::map<int, std::vector<int>> rotation;
  FaceWalk outer;

  bool operator==(const PlaneGraph&) const = default;

  bool has_vertex(int v) const { return rotation.count(v) != 0; }
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  size_t vertex_count() const { return rotation.size(); }
  size_t edge_count() const;
  std::vector<int> vertex_ids() const;
  std::vector<std::pair<int, int>> edge_list() const;  // u < v, sorted

  const std::vector<int>& neighbors(int v) const;
  int rot_index(int v, int u) const;  // position of u around v, -1 if absent
  int cw_next(int v, int u) const;    // neighbor after u clockwise around v
  int cw_prev(int v, int u) const;

  void normalize();
};

// directed edge following (u,v) on its face: (v, cw successor of u at v);
// bounded faces come out counterclockwise, the outer face clockwise
std::pair<int, int> face_next(const PlaneGraph& g, int u, int v);
// full walk through directed edge (u,v), starting there (not canonicalized)
FaceWalk trace_face_from(const PlaneGraph& g, int u, int v);
// every face walk, canonicalized, sorted
std::vector<FaceWalk> trace_faces(const PlaneGraph& g);

bool connected(const PlaneGraph& g);
int component_count(const PlaneGraph& g);

// structural soundness: symmetric simple rotation lists, no isolated vertices
// (except the one-vertex graph), the planarity face count f = m - n + 2 per
// component, outer listed among the traced faces. nullopt when sound, else a
// description of the first failure.
std::optional<std::string> check_embedding(const PlaneGraph& g);

// contraction of v onto x: v's clockwise fan is spliced into x's slot for v,
// duplicate edges merged keeping x's originals. outer is cleared; the caller
// recomputes it from geometry.
PlaneGraph contract_graph(const PlaneGraph& g, int v, int x);

}  // namespace planemorph
