#include "branchcover/curvesys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "branchcover/error.hpp"

namespace bcov {

namespace {

// Union-find where each element carries a parity relative to its root.
class ParityDsu {
 public:
  explicit ParityDsu(int n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::pair<int, int> find(int x) {
    if (parent_[x] == x) return {x, 0};
    auto [root, p] = find(parent_[x]);
    parent_[x] = root;
    parity_[x] ^= p;
    return {root, parity_[x]};
  }

  // Requires value(a) ^ value(b) == rel; returns false on contradiction.
  bool unite(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ rel;
    return true;
  }

 private:
  std::vector<int> parent_, parity_;
};

int closed_euler(const SurfaceSig& sig) {
  return 2 - (sig.orientable ? 2 * sig.genus : sig.genus);
}

}  // namespace

// ---------------------------------------------------------------------------

CurveSystem::CurveSystem(Computed, SurfaceSig ambient, std::vector<std::vector<int>> rotation,
                         std::vector<CsEdge> edges)
    : ambient_(ambient), rotation_(std::move(rotation)), edges_(std::move(edges)) {
  index_half_edges();
  check_strands();
  trace_faces();
}

CurveSystem::CurveSystem(SurfaceSig ambient, std::vector<std::vector<int>> rotation,
                         std::vector<CsEdge> edges, std::vector<RegionDecl> regions,
                         std::vector<int> puncture_darts)
    : CurveSystem(Computed{}, ambient, std::move(rotation), std::move(edges)) {
  validate(ambient_);
  if (ambient_.boundary != 0) {
    throw ValidationError("invalid-curve-system", "curve systems live on surfaces without boundary");
  }
  const int darts = 4 * edge_count();
  auto check_dart = [&](int d) {
    if (d < 0 || d >= darts) {
      throw ValidationError("invalid-curve-system", "dart " + std::to_string(d / 2) + " out of range");
    }
  };
  if (edges_.empty()) {
    if (!regions.empty() || !puncture_darts.empty()) {
      throw ValidationError("invalid-curve-system",
                            "an empty system has a single region; no declarations allowed");
    }
    regions_.push_back({ambient_.orientable, ambient_.genus, {}, ambient_.punctures});
    check();
    return;
  }
  std::vector<int> assigned(faces_.size(), -1);
  for (const RegionDecl& decl : regions) {
    Region r{decl.orientable, decl.genus, {}, 0};
    if (decl.genus < 0 || (!decl.orientable && decl.genus < 1) || decl.darts.empty()) {
      throw ValidationError("invalid-curve-system", "malformed region declaration");
    }
    for (int d : decl.darts) {
      check_dart(d);
      int f = dart_face_[d];
      if (assigned[f] >= 0) {
        throw ValidationError("invalid-curve-system", "a face is declared in two regions");
      }
      assigned[f] = static_cast<int>(regions_.size());
      r.boundary.emplace_back(f, decl.orientable ? dart_dir_[d] : 1);
    }
    regions_.push_back(std::move(r));
  }
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (assigned[f] < 0) {
      assigned[f] = static_cast<int>(regions_.size());
      regions_.push_back({true, 0, {{static_cast<int>(f), 1}}, 0});
    }
  }
  for (int d : puncture_darts) {
    check_dart(d);
    ++regions_[assigned[dart_face_[d]]].punctures;
  }
  // Canonical order and directions.
  for (Region& r : regions_) {
    std::sort(r.boundary.begin(), r.boundary.end());
    if (r.boundary.front().second < 0) {
      for (auto& b : r.boundary) b.second = -b.second;
    }
  }
  std::sort(regions_.begin(), regions_.end(), [](const Region& a, const Region& b) {
    return a.boundary.front().first < b.boundary.front().first;
  });
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    for (auto [f, dir] : regions_[i].boundary) faces_[f].region = static_cast<int>(i);
  }
  check();
}

std::vector<Face> CurveSystem::trace(SurfaceSig ambient, std::vector<std::vector<int>> rotation,
                                     std::vector<CsEdge> edges) {
  return CurveSystem(Computed{}, ambient, std::move(rotation), std::move(edges)).faces_;
}

void CurveSystem::index_half_edges() {
  const int halves = 2 * edge_count();
  where_.assign(halves, {-1, -1});
  for (std::size_t v = 0; v < rotation_.size(); ++v) {
    const auto& rot = rotation_[v];
    if (rot.size() != 4 && rot.size() != 2) {
      throw ValidationError("invalid-curve-system",
                            "vertex " + std::to_string(v) + " must have degree 4 or 2");
    }
    for (std::size_t k = 0; k < rot.size(); ++k) {
      int h = rot[k];
      if (h < 0 || h >= halves) {
        throw ValidationError("invalid-curve-system", "half-edge " + std::to_string(h) + " out of range");
      }
      if (where_[h].first >= 0) {
        throw ValidationError("invalid-curve-system", "half-edge " + std::to_string(h) + " used twice");
      }
      where_[h] = {static_cast<int>(v), static_cast<int>(k)};
    }
  }
  for (int h = 0; h < halves; ++h) {
    if (where_[h].first < 0) {
      throw ValidationError("invalid-curve-system", "half-edge " + std::to_string(h) + " is not attached");
    }
  }
  for (const CsEdge& e : edges_) {
    if (e.curve < 0 || (e.twist != 0 && e.twist != 1)) {
      throw ValidationError("invalid-curve-system", "bad edge record");
    }
  }
}

namespace {

int strand_departure(const CurveSystem& cs, int arrival) {
  const auto& rot = cs.rotation(cs.vertex_of(arrival));
  int k = cs.slot_of(arrival);
  return rot[(k + static_cast<int>(rot.size()) / 2) % rot.size()];
}

}  // namespace

void CurveSystem::check_strands() const {
  auto curve_of = [&](int h) { return edges_[h >> 1].curve; };
  for (std::size_t v = 0; v < rotation_.size(); ++v) {
    const auto& rot = rotation_[v];
    if (rot.size() == 4) {
      if (curve_of(rot[0]) != curve_of(rot[2]) || curve_of(rot[1]) != curve_of(rot[3])) {
        throw ValidationError("not-transversal", "strands at vertex " + std::to_string(v) +
                                                     " do not alternate");
      }
      if (curve_of(rot[0]) == curve_of(rot[1])) {
        throw ValidationError("self-intersection",
                              "curve " + std::to_string(curve_of(rot[0])) + " crosses itself");
      }
    } else if ((rot[0] >> 1) != (rot[1] >> 1)) {
      throw ValidationError("invalid-curve-system",
                            "a degree-two vertex must carry a single loop edge");
    }
  }
  std::map<int, int> edge_count_by_curve;
  for (const CsEdge& e : edges_) ++edge_count_by_curve[e.curve];
  std::set<int> done;
  for (int e = 0; e < edge_count(); ++e) {
    int c = edges_[e].curve;
    if (!done.insert(c).second) continue;
    int start = 2 * e, cur = start, steps = 0;
    do {
      ++steps;
      cur = strand_departure(*this, cur ^ 1);
      if (steps > edge_count()) break;
    } while (cur != start);
    if (steps != edge_count_by_curve[c]) {
      throw ValidationError("invalid-curve-system",
                            "the edges of curve " + std::to_string(c) + " do not form one closed walk");
    }
  }
}

int CurveSystem::next_dart(int dart) const {
  int h = dart_half(dart);
  int arr = h ^ 1;
  int s = dart_side(dart) * twist_sign(h >> 1);
  const auto& rot = rotation_[vertex_of(arr)];
  int deg = static_cast<int>(rot.size());
  int k = ((slot_of(arr) + s) % deg + deg) % deg;
  return make_dart(rot[k], s);
}

int CurveSystem::reverse_dart(int dart) const {
  int h = dart_half(dart);
  return make_dart(h ^ 1, -dart_side(dart) * twist_sign(h >> 1));
}

void CurveSystem::trace_faces() {
  const int darts = 4 * edge_count();
  dart_face_.assign(darts, -1);
  dart_dir_.assign(darts, 0);
  faces_.clear();
  for (int d = 0; d < darts; ++d) {
    if (dart_face_[d] >= 0) continue;
    Face f;
    int x = d;
    int id = static_cast<int>(faces_.size());
    do {
      if (dart_face_[x] >= 0) throw Error("face tracing revisited a dart");
      f.walk.push_back(x);
      dart_face_[x] = id;
      dart_dir_[x] = 1;
      x = next_dart(x);
    } while (x != d);
    for (int y : f.walk) {
      int r = reverse_dart(y);
      if (dart_face_[r] >= 0) throw Error("face walk meets its own reverse");
      dart_face_[r] = id;
      dart_dir_[r] = -1;
    }
    faces_.push_back(std::move(f));
  }
}

void CurveSystem::check_topology() const {
  const int V = vertex_count(), E = edge_count();
  int chi = V - E, punctures = 0;
  for (const Region& r : regions_) {
    chi += r.euler();
    punctures += r.punctures;
  }
  if (chi != closed_euler(ambient_)) {
    throw ValidationError("euler-mismatch", "V - E + sum of region characteristics is " +
                                                std::to_string(chi) + ", ambient has " +
                                                std::to_string(closed_euler(ambient_)));
  }
  if (punctures != ambient_.punctures) {
    throw ValidationError("puncture-mismatch", "regions carry " + std::to_string(punctures) +
                                                   " punctures, ambient has " +
                                                   std::to_string(ambient_.punctures));
  }
  if (E == 0) return;
  // Connectivity, and orientability from vertex flips plus region orientations.
  const int R = static_cast<int>(regions_.size());
  ParityDsu dsu(V + R);
  bool orientable = true;
  for (int e = 0; e < E; ++e) {
    if (!dsu.unite(vertex_of(2 * e), vertex_of(2 * e + 1), edges_[e].twist)) orientable = false;
  }
  for (int i = 0; i < R; ++i) {
    const Region& r = regions_[i];
    if (!r.orientable) orientable = false;
    for (auto [f, dir] : r.boundary) {
      int x = faces_[f].walk.front();
      if (dir < 0) x = reverse_dart(x);
      if (!dsu.unite(vertex_of(dart_half(x)), V + i, dart_side(x) < 0 ? 1 : 0)) orientable = false;
    }
  }
  int root = dsu.find(0).first;
  for (int x = 0; x < V + R; ++x) {
    if (dsu.find(x).first != root) {
      throw ValidationError("disconnected", "the curve system and its regions are not connected");
    }
  }
  if (orientable != ambient_.orientable) {
    throw ValidationError("orientability-mismatch",
                          std::string("the declared regions make the surface ") +
                              (orientable ? "orientable" : "non-orientable"));
  }
}

void CurveSystem::check() const {
  check_strands();
  check_topology();
}

std::vector<int> CurveSystem::curves() const {
  std::set<int> ids;
  for (const CsEdge& e : edges_) ids.insert(e.curve);
  return {ids.begin(), ids.end()};
}

bool CurveSystem::has_curve(int id) const {
  for (const CsEdge& e : edges_) {
    if (e.curve == id) return true;
  }
  return false;
}

std::pair<int, int> CurveSystem::crossing_curves(int v) const {
  const auto& rot = rotation_.at(v);
  if (rot.size() != 4) throw Error("vertex " + std::to_string(v) + " is not a crossing");
  int a = edges_[rot[0] >> 1].curve, b = edges_[rot[1] >> 1].curve;
  return {std::min(a, b), std::max(a, b)};
}

// ---------------------------------------------------------------------------
// Smoothing: remove crossings (strands pass straight through) and optionally
// delete whole curves, then rebuild faces and carry the region topology over.

class SystemRebuilder {
 public:
  struct Plan {
    std::vector<bool> remove_vertex;
    std::vector<bool> delete_edge;
    std::vector<bool> bigon_side;     // edges that bound the absorbed region
    int absorbed_region = -1;
    std::vector<int> absorbed_links;  // old regions the absorbed one must join
    int changed_region = -1;          // with an absorbed region: the region it joins
  };

  static CurveSystem run(const CurveSystem& old, const Plan& plan);
};

CurveSystem SystemRebuilder::run(const CurveSystem& old, const Plan& plan) {
  const int V = old.vertex_count(), E = old.edge_count();

  // New vertex numbering.
  std::vector<int> new_vertex(V, -1);
  int nv = 0;
  for (int v = 0; v < V; ++v) {
    if (!plan.remove_vertex[v]) new_vertex[v] = nv++;
  }

  struct Anchor {
    int old_half = -1;
    int sign = 1;
  };
  std::vector<CsEdge> edges;
  std::vector<Anchor> anchors;  // per new half-edge
  std::vector<int> half_map(2 * E, -1);
  std::vector<bool> edge_used(E, false);

  for (int h = 0; h < 2 * E; ++h) {
    if (plan.delete_edge[h >> 1] || plan.remove_vertex[old.vertex_of(h)] || half_map[h] >= 0) continue;
    int cur = h, twist = 0;
    int arr;
    while (true) {
      edge_used[cur >> 1] = true;
      twist ^= old.edges()[cur >> 1].twist;
      arr = cur ^ 1;
      if (!plan.remove_vertex[old.vertex_of(arr)]) break;
      cur = strand_departure(old, arr);
    }
    int n = static_cast<int>(edges.size());
    edges.push_back({old.edges()[h >> 1].curve, twist});
    half_map[h] = 2 * n;
    half_map[arr] = 2 * n + 1;
    anchors.push_back({h, 1});
    anchors.push_back({arr, 1});
  }

  std::vector<std::vector<int>> rotation;
  for (int v = 0; v < V; ++v) {
    if (plan.remove_vertex[v]) continue;
    std::vector<int> slots;
    for (int h : old.rotation(v)) slots.push_back(half_map[h]);
    rotation.push_back(std::move(slots));
  }

  // Curves left without crossings become loops on a new vertex placed on
  // their lowest edge that does not bound the absorbed region, in the frame
  // of that edge's start vertex.
  for (int e = 0; e < E; ++e) {
    if (edge_used[e] || plan.delete_edge[e]) continue;
    int cur = 2 * e, anchor = -1;
    do {
      edge_used[cur >> 1] = true;
      if (plan.bigon_side.empty() || !plan.bigon_side[cur >> 1]) {
        if (anchor < 0 || (cur >> 1) < anchor) anchor = cur >> 1;
      }
      cur = strand_departure(old, cur ^ 1);
    } while (cur != 2 * e);
    int p = 2 * anchor, twist = 0;
    cur = p;
    do {
      twist ^= old.edges()[cur >> 1].twist;
      cur = strand_departure(old, cur ^ 1);
    } while (cur != p);
    int n = static_cast<int>(edges.size());
    edges.push_back({old.edges()[e].curve, twist});
    anchors.push_back({p, 1});
    anchors.push_back({p ^ 1, old.twist_sign(anchor)});
    rotation.push_back({2 * n, 2 * n + 1});
  }

  if (edges.empty()) {
    return CurveSystem(old.ambient(), {}, {});
  }

  CurveSystem out(CurveSystem::Computed{}, old.ambient(), std::move(rotation), std::move(edges));

  // Direction of each old face inside its region.
  std::vector<int> face_dir(old.faces().size(), 1);
  for (const Region& r : old.regions()) {
    for (auto [f, dir] : r.boundary) face_dir[f] = dir;
  }
  auto region_of_old_dart = [&](int d) { return old.faces()[old.face_of_dart(d)].region; };
  auto kappa = [&](int d) { return face_dir[old.face_of_dart(d)] * old.dart_direction(d); };

  const int R = static_cast<int>(old.regions().size());
  const int F = static_cast<int>(out.faces_.size());
  ParityDsu dsu(R + F);
  std::vector<bool> conflict_at(R + F, false);
  std::vector<std::pair<int, int>> conflicts;

  auto relate = [&](int a, int b, int rel) {
    if (!dsu.unite(a, b, rel)) conflicts.emplace_back(a, b);
  };

  for (int f = 0; f < F; ++f) {
    for (int x : out.faces_[f].walk) {
      std::vector<int> old_darts;
      const Anchor& a1 = anchors[dart_half(x)];
      old_darts.push_back(make_dart(a1.old_half, dart_side(x) * a1.sign));
      int r = out.reverse_dart(x);
      const Anchor& a2 = anchors[dart_half(r)];
      old_darts.push_back(old.reverse_dart(make_dart(a2.old_half, dart_side(r) * a2.sign)));
      for (int d : old_darts) {
        relate(region_of_old_dart(d), R + f, kappa(d) < 0 ? 1 : 0);
      }
    }
  }
  for (int e = 0; e < E; ++e) {
    if (!plan.delete_edge[e]) continue;
    int x = make_dart(2 * e, 1), y = make_dart(2 * e, -1);
    relate(region_of_old_dart(x), region_of_old_dart(y), kappa(x) * kappa(y) > 0 ? 1 : 0);
  }

  // Components.
  std::map<int, std::vector<int>> comp_regions, comp_faces;
  for (int i = 0; i < R; ++i) {
    if (i == plan.absorbed_region) continue;
    comp_regions[dsu.find(i).first].push_back(i);
  }
  for (int f = 0; f < F; ++f) comp_faces[dsu.find(R + f).first].push_back(f);
  std::set<int> bad_roots;
  for (auto [a, b] : conflicts) bad_roots.insert(dsu.find(a).first);

  // Euler characteristic changes by component. A Whitney move changes only
  // the component that absorbs the bigon. Deleting a curve adds its open
  // edges (-1 each) and its crossing-free vertices (+1 each) to the
  // components containing them.
  std::map<int, int> chi_adjust;
  int changed_root = -1;
  if (plan.absorbed_region >= 0) {
    changed_root = dsu.find(plan.changed_region).first;
    for (int link : plan.absorbed_links) {
      if (dsu.find(link).first != changed_root) {
        throw Error("region bookkeeping: absorbed region touches two components");
      }
    }
    const int delta = (out.vertex_count() - out.edge_count()) - (V - E);
    chi_adjust[changed_root] = old.regions()[plan.absorbed_region].euler() - delta;
  } else {
    for (int e = 0; e < E; ++e) {
      if (plan.delete_edge[e]) chi_adjust[dsu.find(region_of_old_dart(make_dart(2 * e, 1))).first] -= 1;
    }
    for (int v = 0; v < V; ++v) {
      if (plan.remove_vertex[v] && old.rotation(v).size() == 2) {
        chi_adjust[dsu.find(region_of_old_dart(make_dart(old.rotation(v)[0], 1))).first] += 1;
      }
    }
  }

  std::vector<Region> regions;
  for (auto& [root, olds] : comp_regions) {
    auto it = comp_faces.find(root);
    if (it == comp_faces.end()) throw Error("region bookkeeping: a region lost all its boundary");
    const auto& fs = it->second;
    int chi = 0, punctures = 0;
    bool orientable = bad_roots.count(root) == 0;
    for (int i : olds) {
      chi += old.regions()[i].euler();
      punctures += old.regions()[i].punctures;
      orientable = orientable && old.regions()[i].orientable;
    }
    if (root == changed_root) {
      const Region& ab = old.regions()[plan.absorbed_region];
      punctures += ab.punctures;
      orientable = orientable && ab.orientable;
    } else if (plan.absorbed_region >= 0 && olds.size() != 1) {
      throw Error("region bookkeeping: unexpected merge away from the move");
    }
    if (auto adj = chi_adjust.find(root); adj != chi_adjust.end()) chi += adj->second;
    int b = static_cast<int>(fs.size());
    Region r;
    r.orientable = orientable;
    r.punctures = punctures;
    int deficit = 2 - chi - b;
    if (orientable) {
      if (deficit < 0 || deficit % 2 != 0) throw Error("region bookkeeping: impossible orientable region");
      r.genus = deficit / 2;
    } else {
      if (deficit < 1) throw Error("region bookkeeping: impossible non-orientable region");
      r.genus = deficit;
    }
    for (int f : fs) {
      int dir = 1;
      if (orientable) dir = dsu.find(R + f).second ? -1 : 1;
      r.boundary.emplace_back(f, dir);
    }
    std::sort(r.boundary.begin(), r.boundary.end());
    if (r.boundary.front().second < 0) {
      for (auto& bd : r.boundary) bd.second = -bd.second;
    }
    regions.push_back(std::move(r));
  }
  std::sort(regions.begin(), regions.end(), [](const Region& a, const Region& b) {
    return a.boundary.front().first < b.boundary.front().first;
  });
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (auto [f, dir] : regions[i].boundary) out.faces_[f].region = static_cast<int>(i);
  }
  out.regions_ = std::move(regions);
  out.check_topology();
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Bigon> find_bigons(const CurveSystem& cs) {
  std::vector<Bigon> out;
  for (std::size_t f = 0; f < cs.faces().size(); ++f) {
    const Face& face = cs.faces()[f];
    if (face.walk.size() != 2) continue;
    const Region& r = cs.regions()[face.region];
    if (!r.is_disc() || r.punctures != 0) continue;
    int e1 = dart_half(face.walk[0]) >> 1, e2 = dart_half(face.walk[1]) >> 1;
    int c1 = cs.edges()[e1].curve, c2 = cs.edges()[e2].curve;
    if (c1 == c2) continue;
    int u = cs.vertex_of(2 * e1), v = cs.vertex_of(2 * e1 + 1);
    if (u == v) continue;
    Bigon b;
    b.face = static_cast<int>(f);
    if (c1 > c2) {
      std::swap(c1, c2);
      std::swap(e1, e2);
    }
    b.edge_a = e1;
    b.edge_b = e2;
    b.curve_a = c1;
    b.curve_b = c2;
    b.vertex_u = std::min(u, v);
    b.vertex_v = std::max(u, v);
    out.push_back(b);
  }
  return out;
}

namespace {

// Region of the face in the corner opposite to the corner that the walk
// step x -> next(x) turns through.
int opposite_corner_region(const CurveSystem& cs, int x) {
  int y = cs.next_dart(x);
  int arr = dart_half(x) ^ 1, dep = dart_half(y);
  int first = dart_side(y) > 0 ? arr : dep;  // the corner runs first -> next slot
  int v = cs.vertex_of(first);
  const auto& rot = cs.rotation(v);
  int k = cs.slot_of(first);
  int d = make_dart(rot[(k + 3) % 4], 1);
  return cs.faces()[cs.face_of_dart(d)].region;
}

}  // namespace

CurveSystem remove_bigon(const CurveSystem& cs, const Bigon& b) {
  auto current = find_bigons(cs);
  if (std::find(current.begin(), current.end(), b) == current.end()) {
    throw ValidationError("stale-bigon", "no such bigon in the current system");
  }
  SystemRebuilder::Plan plan;
  plan.remove_vertex.assign(cs.vertex_count(), false);
  plan.remove_vertex[b.vertex_u] = plan.remove_vertex[b.vertex_v] = true;
  plan.delete_edge.assign(cs.edge_count(), false);
  plan.bigon_side.assign(cs.edge_count(), false);
  plan.bigon_side[b.edge_a] = plan.bigon_side[b.edge_b] = true;
  const Face& face = cs.faces()[b.face];
  plan.absorbed_region = face.region;
  int ru = opposite_corner_region(cs, face.walk[0]);
  int rv = opposite_corner_region(cs, face.walk[1]);
  plan.absorbed_links = {ru, rv};
  plan.changed_region = ru;
  return SystemRebuilder::run(cs, plan);
}

CurveSystem minimal_position(const CurveSystem& cs) {
  CurveSystem cur = cs;
  while (true) {
    auto bigons = find_bigons(cur);
    if (bigons.empty()) return cur;
    cur = remove_bigon(cur, bigons.front());
  }
}

namespace {

CurveSystem delete_curve(const CurveSystem& cs, int curve) {
  SystemRebuilder::Plan plan;
  plan.remove_vertex.assign(cs.vertex_count(), false);
  plan.delete_edge.assign(cs.edge_count(), false);
  bool present = false;
  for (int e = 0; e < cs.edge_count(); ++e) {
    if (cs.edges()[e].curve != curve) continue;
    plan.delete_edge[e] = true;
    plan.remove_vertex[cs.vertex_of(2 * e)] = true;
    plan.remove_vertex[cs.vertex_of(2 * e + 1)] = true;
    present = true;
  }
  if (!present) return cs;
  return SystemRebuilder::run(cs, plan);
}

}  // namespace

CurveSystem restrict_to(const CurveSystem& cs, const std::vector<int>& keep) {
  CurveSystem cur = cs;
  for (int c : cs.curves()) {
    if (std::find(keep.begin(), keep.end(), c) == keep.end()) cur = delete_curve(cur, c);
  }
  return cur;
}

int crossing_count(const CurveSystem& cs, int i, int j) {
  int count = 0;
  auto key = std::make_pair(std::min(i, j), std::max(i, j));
  for (int v = 0; v < cs.vertex_count(); ++v) {
    if (cs.rotation(v).size() == 4 && cs.crossing_curves(v) == key) ++count;
  }
  return count;
}

int geometric_intersection(const CurveSystem& cs, int i, int j) {
  if (i == j || !cs.has_curve(i) || !cs.has_curve(j)) {
    throw ValidationError("unknown-pair", "geometric intersection needs two distinct present curves");
  }
  return crossing_count(minimal_position(restrict_to(cs, {i, j})), i, j);
}

bool fills(const CurveSystem& cs) {
  if (cs.edge_count() == 0) return false;
  for (const Region& r : cs.regions()) {
    if (!r.is_disc() || r.punctures > 1) return false;
  }
  return true;
}

Sidedness curve_sidedness(const CurveSystem& cs, int curve) {
  if (!cs.has_curve(curve)) throw ValidationError("unknown-curve", "no curve " + std::to_string(curve));
  int parity = 0;
  for (const CsEdge& e : cs.edges()) {
    if (e.curve == curve) parity ^= e.twist;
  }
  return parity ? Sidedness::OneSided : Sidedness::TwoSided;
}

AlexanderReport alexander_report(const CurveSystem& cs) {
  AlexanderReport rep;
  rep.fills = fills(cs);
  auto ids = cs.curves();
  const std::size_t n = ids.size();
  std::vector<std::vector<int>> gi(n, std::vector<int>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      CurveSystem pair = restrict_to(cs, {ids[a], ids[b]});
      if (!find_bigons(pair).empty()) {
        rep.minimal_position = false;
        rep.bigon_pairs.emplace_back(ids[a], ids[b]);
      }
      gi[a][b] = gi[b][a] = crossing_count(minimal_position(pair), ids[a], ids[b]);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (crossing_count(cs, ids[a], ids[b]) > 0 && crossing_count(cs, ids[b], ids[c]) > 0 &&
            crossing_count(cs, ids[a], ids[c]) > 0) {
          rep.no_triple = false;
          rep.triples.push_back({ids[a], ids[b], ids[c]});
        }
      }
    }
  }
  std::vector<Sidedness> side;
  for (int id : ids) side.push_back(curve_sidedness(cs, id));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      DistinctnessRecord rec{ids[a], ids[b], "", {}};
      if (side[a] != side[b]) rec.reasons.push_back("one curve is one-sided, the other two-sided");
      if (gi[a][b] > 0 && side[a] == Sidedness::TwoSided && side[b] == Sidedness::TwoSided) {
        rec.reasons.push_back("i(" + std::to_string(ids[a]) + "," + std::to_string(ids[b]) +
                              ") = " + std::to_string(gi[a][b]) + " > 0");
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b || gi[a][c] == gi[b][c]) continue;
        std::string why = "intersection with curve " + std::to_string(ids[c]) + " differs (" +
                          std::to_string(gi[a][c]) + " vs " + std::to_string(gi[b][c]) + ")";
        if ((gi[a][c] - gi[b][c]) % 2 != 0) why += ", also mod 2";
        rec.reasons.push_back(why);
      }
      rec.status = rec.reasons.empty() ? "inconclusive" : "evidence";
      if (rec.reasons.empty()) {
        rep.warnings.push_back("curves " + std::to_string(ids[a]) + " and " + std::to_string(ids[b]) +
                               " have identical invariants; isotopy is not excluded");
      }
      rep.distinct.push_back(std::move(rec));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::string dart_text(int d) {
  return (dart_side(d) > 0 ? "+" : "-") + std::to_string(dart_half(d));
}

int parse_dart(const std::string& tok, int line) {
  if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-')) {
    throw ParseError(line, 1, "expected a signed half-edge such as +3, got '" + tok + "'");
  }
  try {
    std::size_t used = 0;
    int h = std::stoi(tok.substr(1), &used);
    if (used != tok.size() - 1 || h < 0) throw std::invalid_argument("dart");
    return make_dart(h, tok[0] == '+' ? 1 : -1);
  } catch (const std::exception&) {
    throw ParseError(line, 1, "bad half-edge '" + tok + "'");
  }
}

}  // namespace

CurveSystem parse_curve_system(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (!toks.empty()) lines.emplace_back(lineno, std::move(toks));
  }
  std::size_t i = 0;
  auto expect = [&](const char* key) -> const std::vector<std::string>& {
    if (i >= lines.size() || lines[i].second[0] != key) {
      throw ParseError(i < lines.size() ? lines[i].first : lineno + 1, 1,
                       std::string("expected '") + key + "'");
    }
    return lines[i++].second;
  };
  auto to_int = [&](const std::string& s, int line) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError(line, 1, "expected an integer, got '" + s + "'");
    }
  };
  if (expect("curvesystem").size() != 1) throw ParseError(lines[0].first, 1, "trailing text");
  SurfaceSig ambient;
  {
    int line = i < lines.size() ? lines[i].first : 1;
    const auto& t = expect("ambient");
    std::string sig;
    for (std::size_t k = 1; k < t.size(); ++k) sig += (k > 1 ? " " : "") + t[k];
    try {
      ambient = parse_signature(sig);
    } catch (const Error& e) {
      throw ParseError(line, 1, e.what());
    }
  }
  int line = i < lines.size() ? lines[i].first : 1;
  const auto& vt = expect("vertices");
  if (vt.size() != 2) throw ParseError(line, 1, "expected 'vertices <count>'");
  int nvert = to_int(vt[1], line);
  std::vector<std::vector<int>> rotation;
  for (int v = 0; v < nvert; ++v) {
    line = i < lines.size() ? lines[i].first : lineno;
    const auto& t = expect("v");
    std::vector<int> slots;
    for (std::size_t k = 1; k < t.size(); ++k) slots.push_back(to_int(t[k], line));
    rotation.push_back(std::move(slots));
  }
  line = i < lines.size() ? lines[i].first : lineno;
  const auto& et = expect("edges");
  if (et.size() != 2) throw ParseError(line, 1, "expected 'edges <count>'");
  int nedge = to_int(et[1], line);
  std::vector<CsEdge> edges;
  for (int e = 0; e < nedge; ++e) {
    line = i < lines.size() ? lines[i].first : lineno;
    const auto& t = expect("e");
    if (t.size() != 4) throw ParseError(line, 1, "expected 'e <id> <curve> <twist>'");
    if (to_int(t[1], line) != e) throw ParseError(line, 1, "edges must be listed in id order");
    edges.push_back({to_int(t[2], line), to_int(t[3], line)});
  }
  std::vector<RegionDecl> regions;
  std::vector<int> punctures;
  for (; i < lines.size(); ++i) {
    const auto& [ln, t] = lines[i];
    if (t[0] == "region") {
      if (t.size() < 4 || (t[1] != "O" && t[1] != "N")) {
        throw ParseError(ln, 1, "expected 'region O|N <genus> <darts>'");
      }
      RegionDecl r{t[1] == "O", to_int(t[2], ln), {}};
      for (std::size_t k = 3; k < t.size(); ++k) r.darts.push_back(parse_dart(t[k], ln));
      regions.push_back(std::move(r));
    } else if (t[0] == "puncture") {
      if (t.size() != 2) throw ParseError(ln, 1, "expected 'puncture <dart>'");
      punctures.push_back(parse_dart(t[1], ln));
    } else {
      throw ParseError(ln, 1, "unexpected '" + t[0] + "'");
    }
  }
  return CurveSystem(ambient, std::move(rotation), std::move(edges), std::move(regions),
                     std::move(punctures));
}

std::string emit_curve_system(const CurveSystem& cs) {
  std::ostringstream os;
  os << "curvesystem\n";
  os << "ambient " << to_string(cs.ambient()) << '\n';
  os << "vertices " << cs.vertex_count() << '\n';
  for (int v = 0; v < cs.vertex_count(); ++v) {
    os << 'v';
    for (int h : cs.rotation(v)) os << ' ' << h;
    os << '\n';
  }
  os << "edges " << cs.edge_count() << '\n';
  for (int e = 0; e < cs.edge_count(); ++e) {
    os << "e " << e << ' ' << cs.edges()[e].curve << ' ' << cs.edges()[e].twist << '\n';
  }
  if (cs.edge_count() == 0) return os.str();
  for (const Region& r : cs.regions()) {
    if (r.is_disc()) continue;
    os << "region " << (r.orientable ? 'O' : 'N') << ' ' << r.genus;
    for (auto [f, dir] : r.boundary) {
      int d = cs.faces()[f].walk.front();
      os << ' ' << dart_text(dir > 0 ? d : cs.reverse_dart(d));
    }
    os << '\n';
  }
  for (const Region& r : cs.regions()) {
    for (int k = 0; k < r.punctures; ++k) {
      os << "puncture " << dart_text(cs.faces()[r.boundary.front().first].walk.front()) << '\n';
    }
  }
  return os.str();
}

}  // namespace bcov
