#pragma once

#include "planemorph/drawing.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace planemorph {

// all vertices travel straight lines, vertex v at time t sitting on
// start[v] + t * (end[v] - start[v]) for t in [0,1]
struct LinearStep {
  PlaneGraph graph;
  std::map<int, Point> start;
  std::map<int, Point> end;
};

// chained linear steps on one fixed graph (end of step i = start of step i+1)
struct Morph {
  PlaneGraph graph;
  std::vector<LinearStep> steps;
};

struct Clearance {
  Rat epsilon;
  bool certified = false;
};

Drawing step_start(const LinearStep& s);
Drawing step_end(const LinearStep& s);
std::map<int, Point> interpolate(const LinearStep& s, const Rat& t);
LinearStep reversed_step(const LinearStep& s);
LinearStep identity_step(const Drawing& d);

Morph reversed_morph(const Morph& m);
// frames must chain: last frame of a = first frame of b
Morph concat_morphs(Morph a, const Morph& b);
Drawing first_frame(const Morph& m);
Drawing last_frame(const Morph& m);

// exact decision: both endpoint drawings valid and, for every t in [0,1], no
// two vertices coincide, no vertex sits on a non-incident edge, no two edges
// properly cross. Timed violations carry a rational window around the event.
ValidityReport verify_linear_step(const LinearStep& s, bool stop_early = false);

// planarity check of one step restricted to events involving the given vertex
// or its edges; complete when the step without that vertex is planar
ValidityReport verify_linear_step_around(const LinearStep& s, int focus,
                                         bool stop_early = false);

// frames chain exactly, every step is on the morph's graph and passes the
// linear-step check; shared frames are validated once
ValidityReport verify_morph(const Morph& m, bool stop_early = false);

// project the morph onto the subgraph induced by keep; the outer face of the
// restricted graph is read off the first frame's geometry
Morph restrict_morph(const Morph& m, const std::set<int>& keep);

// epsilon > 0 such that throughout m every vertex outside ignore stays at
// distance strictly greater than epsilon from x: half the root of the exact
// minimum of the pairwise squared-distance quadratics
Clearance certified_clearance(const Morph& m, int x, const std::set<int>& ignore);

// pseudo-morph: linear steps interleaved with vertex contractions and the
// matching uncontractions
struct TraceEvent {
  enum Kind { linear, contract, uncontract };
  Kind kind = linear;
  LinearStep step;           // linear
  int v = -1, x = -1;        // contract and uncontract: v merged onto host x
  PlaneGraph before, after;  // contract: graphs on both sides of the merge
  Point placement;           // contract: point v left; uncontract: point v rejoins at
};

struct PseudoMorphTrace {
  std::vector<TraceEvent> events;
};

TraceEvent linear_event(LinearStep s);
// captures before/after graphs and v's current point from the drawing
TraceEvent contract_event(const Drawing& before, int v, int x);
TraceEvent uncontract_event(int v, int x, const Point& p);

// structural soundness: opens with a linear step, graphs and positions chain,
// contractions reproduce their recorded after-graph at the current frame and
// nest LIFO with their uncontractions. half admits the loose ends of one side
// of a two-sided composition.
std::optional<std::string> validate_trace(const PseudoMorphTrace& t, bool half = false);

// time reversal; the trace must not uncontract vertices it never contracted
PseudoMorphTrace reverse_trace(const PseudoMorphTrace& t);
PseudoMorphTrace concat_traces(PseudoMorphTrace a, const PseudoMorphTrace& b);
Drawing trace_first_drawing(const PseudoMorphTrace& t);
Drawing trace_last_drawing(const PseudoMorphTrace& t);

}  // namespace planemorph
