#include "planemorph/gen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace planemorph {

namespace {

using Rng = std::mt19937_64;

long pick(Rng& rng, size_t n) { return (long)(rng() % (unsigned long)n); }

bool valid_now(Drawing& d) {
  set_outer_geometric(d);
  return validate_drawing(d, true).valid;
}

// x strictly inside segment a-b; always legal since the open segment was clear
bool place_on_edge(Drawing& d, int x, int a, int b, Rng& rng) {
  for (int k = 0; k < 12; ++k) {
    Rat t = frac(1 + pick(rng, 15), 16);
    d.pos[x] = d.at(a) + t * (d.at(b) - d.at(a));
    if (valid_now(d)) return true;
  }
  d.pos.erase(x);
  return false;
}

// x beside edge a-b; the rotation already pins which face the new two-edge
// path runs through, so probe the angular order once per side and then
// shrink the offset until nothing is hit
bool place_beside(Drawing& d, int x, int a, int b, Rng& rng) {
  Point pa = d.at(a), pb = d.at(b);
  Rat t = frac(1 + pick(rng, 15), 16);
  Point base = pa + t * (pb - pa);
  Point nrm{pa.y - pb.y, pb.x - pa.x};
  auto side_ok = [&] {
    std::vector<int> want = d.graph.neighbors(a);
    std::rotate(want.begin(), std::min_element(want.begin(), want.end()), want.end());
    return geometric_cw_order(d, a) == want;
  };
  Rat eps0 = frac(1 + pick(rng, 8), 4);
  for (int side = 0; side < 2; ++side) {
    Rat eps = eps0;
    d.pos[x] = base + eps * (side ? Point{-nrm.x, -nrm.y} : nrm);
    if (!side_ok()) continue;
    for (int k = 0; k < 48; ++k, eps /= 2) {
      d.pos[x] = base + eps * (side ? Point{-nrm.x, -nrm.y} : nrm);
      if (valid_now(d)) return true;
    }
  }
  d.pos.erase(x);
  return false;
}

// random accepted single-vertex moves; every intermediate state is valid
Drawing shuffled(const Drawing& d0, Rng& rng, int rounds) {
  Drawing d = d0;
  std::vector<int> ids = d.graph.vertex_ids();
  for (int i = 0; i < rounds; ++i) {
    int v = ids[pick(rng, ids.size())];
    Point save = d.at(v);
    long den = 1 + pick(rng, 3);
    d.pos[v] = save + Point{frac(pick(rng, 13) - 6, den), frac(pick(rng, 13) - 6, den)};
    if (!valid_now(d)) {
      d.pos[v] = save;
      set_outer_geometric(d);
    }
  }
  return d;
}

}  // namespace

GenPair gen_sp_pair(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_sp_pair: need n >= 2");
  Rng rng(seed);
  Drawing d;
  d.graph.rotation = {{0, {1}}, {1, {0}}};
  d.graph.outer = face_from_vertex_walk({0, 1});
  d.pos = {{0, {Rat(0), Rat(0)}}, {1, {Rat(8), Rat(0)}}};
  int next = 2;
  int guard = 0;
  while ((int)d.graph.vertex_count() < n) {
    if (++guard > 60 * n) throw std::logic_error("gen_sp_pair: placement kept failing");
    auto es = d.graph.edge_list();
    auto [a, b] = es[pick(rng, es.size())];
    int x = next;
    // the first operation must run a path alongside the root edge: from then
    // on both operations preserve two-connectedness
    if (next == 2 || (rng() & 1)) {
      auto& ra = d.graph.rotation[a];
      ra.insert(std::next(std::find(ra.begin(), ra.end(), b)), x);
      auto& rb = d.graph.rotation[b];
      rb.insert(std::find(rb.begin(), rb.end(), a), x);
      d.graph.rotation[x] = {a, b};
      if (place_beside(d, x, a, b, rng)) {
        ++next;
      } else {
        std::erase(ra, x);
        std::erase(rb, x);
        d.graph.rotation.erase(x);
      }
    } else {
      auto& ra = d.graph.rotation[a];
      auto& rb = d.graph.rotation[b];
      std::replace(ra.begin(), ra.end(), b, x);
      std::replace(rb.begin(), rb.end(), a, x);
      d.graph.rotation[x] = {a, b};
      if (place_on_edge(d, x, a, b, rng)) {
        ++next;
      } else {
        std::replace(ra.begin(), ra.end(), x, b);
        std::replace(rb.begin(), rb.end(), x, a);
        d.graph.rotation.erase(x);
      }
    }
  }
  d.graph.normalize();
  GenPair out;
  out.graph = d.graph;
  out.a = d;
  out.b = shuffled(d, rng, 4 * n);
  return out;
}

GenPair gen_plane_pair(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_plane_pair: need n >= 3");
  Rng rng(seed);
  Drawing d;
  d.graph.rotation = {{0, {1, 2}}, {1, {0, 2}}, {2, {0, 1}}};
  d.graph.outer = face_from_vertex_walk({0, 2, 1});
  d.pos = {{0, {Rat(0), Rat(0)}}, {1, {Rat(8), Rat(0)}}, {2, {Rat(4), Rat(7)}}};
  set_outer_geometric(d);
  if (!validate_drawing(d, true).valid)
    throw std::logic_error("gen_plane_pair: seed triangle is invalid");
  int next = 3;
  int guard = 0;
  while ((int)d.graph.vertex_count() < n) {
    if (++guard > 60 * n) throw std::logic_error("gen_plane_pair: placement kept failing");
    auto faces = trace_faces(d.graph);
    std::vector<FaceWalk> bounded;
    for (auto& f : faces) {
      std::vector<Point> poly;
      for (auto& e : f) poly.push_back(d.at(e.first));
      if (sign(signed_area2(poly)) > 0) bounded.push_back(f);
    }
    FaceWalk& f = bounded[pick(rng, bounded.size())];
    size_t len = f.size();
    size_t j = pick(rng, len);
    int u = f[j].first, v = f[(j + 1) % len].first, w = f[(j + 2) % len].first;
    if (u == w) continue;  // degenerate corner of a face walked twice
    std::vector<int> fan = {u, v, w};
    if (rng() & 1) fan = {u, v};
    Point c = frac(1, 3) * (d.at(u) + d.at(v) + d.at(w));
    bool placed = false;
    Point p = c;
    for (int k = 0; k < 10 && !placed; ++k, p = frac(1, 2) * (p + d.at(v))) {
      if (!kernel_contains(d, fan, p)) continue;
      int x = next;
      insert_vertex(d, x, p);
      for (int y : fan) insert_edge_geometric(d, x, y);
      if (valid_now(d)) {
        ++next;
        placed = true;
      } else {
        remove_vertex(d, x);
        set_outer_geometric(d);
      }
    }
  }
  d.graph.normalize();
  GenPair out;
  out.graph = d.graph;
  out.a = d;
  out.b = shuffled(d, rng, 4 * n);
  return out;
}

}  // namespace planemorph
