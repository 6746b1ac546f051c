#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchcover/surface.hpp"

namespace bcov {

// A union of simple closed curves on a surface, as a graph with a signed
// rotation system.
//
// Edge e has half-edges 2e (start) and 2e + 1 (end). A crossing is a vertex
// with four half-edges in rotation order, the two strands on opposite slots
// (0-2 and 1-3) belonging to different curves. A curve without crossings is
// a vertex of degree two carrying one loop edge. Edges carry a twist bit for
// non-orientable embeddings.
//
// A dart (h, s) is the side s (+1 or -1 in the frame of h's vertex) of the
// edge of h, traversed away from h's vertex; its id is 2h, or 2h + 1 for
// s = -1. Face walks are cyclic dart sequences and each face is traced in
// both directions; faces() keeps one canonical direction per face.
//
// Complementary regions are unions of faces glued along their boundaries. By
// default every face is an open disc; other regions (annuli, handles,
// crosscaps) are declared explicitly.
struct CsEdge {
  int curve = 0;
  int twist = 0;
  friend bool operator==(const CsEdge&, const CsEdge&) = default;
};

struct Face {
  std::vector<int> walk;  // dart ids, canonical direction
  int region = -1;
};

struct Region {
  bool orientable = true;
  int genus = 0;  // genus, or crosscaps when non-orientable
  // Boundary walks as (face, direction): direction +1 follows the canonical
  // walk. For orientable regions the directions are the boundary
  // orientation induced by one orientation of the region.
  std::vector<std::pair<int, int>> boundary;
  int punctures = 0;

  int euler() const {
    return 2 - (orientable ? 2 * genus : genus) - static_cast<int>(boundary.size());
  }
  bool is_disc() const { return orientable && genus == 0 && boundary.size() == 1; }

  friend bool operator==(const Region&, const Region&) = default;
};

// A region as written in files: type and genus, one dart per boundary walk.
struct RegionDecl {
  bool orientable = true;
  int genus = 0;
  std::vector<int> darts;
};

inline int make_dart(int half_edge, int side) { return 2 * half_edge + (side < 0 ? 1 : 0); }
inline int dart_half(int dart) { return dart >> 1; }
inline int dart_side(int dart) { return (dart & 1) ? -1 : 1; }

class CurveSystem {
 public:
  // Validates everything; throws ValidationError.
  CurveSystem(SurfaceSig ambient, std::vector<std::vector<int>> rotation,
              std::vector<CsEdge> edges, std::vector<RegionDecl> regions = {},
              std::vector<int> puncture_darts = {});

  const SurfaceSig& ambient() const noexcept { return ambient_; }
  int vertex_count() const noexcept { return static_cast<int>(rotation_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<int>& rotation(int v) const { return rotation_.at(v); }
  const std::vector<CsEdge>& edges() const noexcept { return edges_; }
  // Distinct curve ids, sorted.
  std::vector<int> curves() const;
  bool has_curve(int id) const;

  int vertex_of(int half_edge) const { return where_[half_edge].first; }
  int slot_of(int half_edge) const { return where_[half_edge].second; }
  int twist_sign(int edge) const { return edges_[edge].twist ? -1 : 1; }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  const std::vector<Region>& regions() const noexcept { return regions_; }
  int face_of_dart(int dart) const { return dart_face_[dart]; }
  // +1 if the dart lies on its face's canonical walk, -1 if on the reverse.
  int dart_direction(int dart) const { return dart_dir_[dart]; }

  // Next dart along a face walk, and the same side traversed backwards.
  int next_dart(int dart) const;
  int reverse_dart(int dart) const;

  // Curve ids of the two strands at a crossing (lower id first).
  std::pair<int, int> crossing_curves(int v) const;

  // Re-runs every structural and topological check; throws on failure.
  void check() const;

  // Face walks of raw rotation data before regions are assigned, for
  // writing region declarations. Only the structural checks run.
  static std::vector<Face> trace(SurfaceSig ambient, std::vector<std::vector<int>> rotation,
                                 std::vector<CsEdge> edges);

  friend bool operator==(const CurveSystem& a, const CurveSystem& b) {
    return a.ambient_ == b.ambient_ && a.rotation_ == b.rotation_ && a.edges_ == b.edges_ &&
           a.regions_ == b.regions_;
  }

 private:
  friend class SystemRebuilder;
  struct Computed {};
  CurveSystem(Computed, SurfaceSig ambient, std::vector<std::vector<int>> rotation,
              std::vector<CsEdge> edges);
  void index_half_edges();
  void check_strands() const;
  void trace_faces();
  void check_topology() const;

  SurfaceSig ambient_;
  std::vector<std::vector<int>> rotation_;
  std::vector<CsEdge> edges_;
  std::vector<std::pair<int, int>> where_;
  std::vector<Face> faces_;
  std::vector<Region> regions_;
  std::vector<int> dart_face_, dart_dir_;
};

// Text format:
//   curvesystem
//   ambient O 1 0 0
//   vertices 1
//   v 0 2 1 3
//   edges 2
//   e 0 0 0             (edge id, curve id, twist bit)
//   e 1 1 0
//   region O 1 +4 -6    (optional; type, genus, one signed half-edge per walk)
//   puncture +3         (optional; one per puncture)
CurveSystem parse_curve_system(std::string_view text);
std::string emit_curve_system(const CurveSystem& cs);

struct Bigon {
  int face = -1;
  int edge_a = -1, edge_b = -1;    // edge_a on the lower curve id
  int curve_a = -1, curve_b = -1;
  int vertex_u = -1, vertex_v = -1;
  friend bool operator==(const Bigon&, const Bigon&) = default;
};

// Disc regions without punctures bounded by one edge of each of two distinct
// curves, in face order.
std::vector<Bigon> find_bigons(const CurveSystem& cs);

// Whitney move across the bigon: both crossings disappear. Throws
// ValidationError("stale-bigon") when b is not a current bigon.
CurveSystem remove_bigon(const CurveSystem& cs, const Bigon& b);

// Removes bigons, lowest face first, until none remains.
CurveSystem minimal_position(const CurveSystem& cs);

// The system formed by the listed curves only.
CurveSystem restrict_to(const CurveSystem& cs, const std::vector<int>& keep);

// Number of crossings between curves i and j in the given drawing.
int crossing_count(const CurveSystem& cs, int i, int j);

// Crossings of i and j once the pair alone is put in minimal position.
// Throws ValidationError("unknown-pair") for i == j or unknown ids.
int geometric_intersection(const CurveSystem& cs, int i, int j);

// Every region an open disc with at most one puncture.
bool fills(const CurveSystem& cs);

enum class Sidedness { OneSided, TwoSided };
Sidedness curve_sidedness(const CurveSystem& cs, int curve);

struct DistinctnessRecord {
  int first = -1, second = -1;
  std::string status;  // "evidence" or "inconclusive"
  std::vector<std::string> reasons;
};

struct AlexanderReport {
  bool minimal_position = true;  // no pair of curves forms a bigon
  std::vector<std::pair<int, int>> bigon_pairs;
  bool transversal = true;       // structural: 4-valent, alternating strands
  bool no_triple = true;         // no three curves pairwise intersecting
  std::vector<std::vector<int>> triples;
  bool locally_finite = true;    // finite system
  bool fills = false;
  std::vector<DistinctnessRecord> distinct;  // isotopy classes, heuristic only
  std::vector<std::string> warnings;
};

AlexanderReport alexander_report(const CurveSystem& cs);

}  // namespace bcov
