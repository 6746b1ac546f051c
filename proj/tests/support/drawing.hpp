#pragma once

#include <string>
#include <vector>

#include "branchcover/curvesys.hpp"

namespace bcov::testing {

// Builds rotation data from curves drawn as sequences of crossing visits.
//
// Slots at a crossing are numbered counterclockwise 0 east, 1 north, 2 west,
// 3 south. A visit enters through `in_slot` and leaves through the opposite
// slot. Edge i of a curve runs from visit i to visit i + 1 (cyclically) with
// twist bit twists[i]. A curve without visits is a loop on its own degree-2
// vertex, numbered after all crossings, with twists[0] as its twist.
struct Visit {
  int vertex;
  int in_slot;
};

struct DrawnCurve {
  int id;
  std::vector<Visit> visits;
  std::vector<int> twists;
};

struct Drawing {
  SurfaceSig ambient;
  int crossings = 0;
  std::vector<DrawnCurve> curves;
};

struct RawSystem {
  SurfaceSig ambient;
  std::vector<std::vector<int>> rotation;
  std::vector<CsEdge> edges;
};

RawSystem draw(const Drawing& d);

// First edge of the i-th drawn curve.
int first_edge(const Drawing& d, int curve_index);

// Reverse of a dart computed from edge twists alone.
int reverse_raw_dart(const RawSystem& raw, int dart);

// Region declared by darts, one per boundary walk; for orientable regions
// the builder searches walk directions that make the system consistent.
struct RegionSpec {
  bool orientable = true;
  int genus = 0;
  std::vector<int> darts;
};

CurveSystem build(const RawSystem& raw, const std::vector<RegionSpec>& regions,
                  const std::vector<int>& puncture_darts = {});

// Human-readable face listing for authoring.
std::string describe_faces(const RawSystem& raw);

}  // namespace bcov::testing
