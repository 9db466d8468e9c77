#pragma once

#include <cstdint>

#include "planemorph/drawing.hpp"

namespace planemorph {

// one random embedded graph with two valid straight-line drawings of it
struct GenPair {
  PlaneGraph graph;
  Drawing a, b;
};

// biconnected series-parallel instance on exactly n vertices, n >= 2
GenPair gen_sp_pair(int n, std::uint64_t seed);

// connected plane instance on exactly n vertices, n >= 3
GenPair gen_plane_pair(int n, std::uint64_t seed);

}  // namespace planemorph
