#include "drawing.hpp"

#include <sstream>

#include "branchcover/error.hpp"

namespace bcov::testing {

RawSystem draw(const Drawing& d) {
  RawSystem raw;
  raw.ambient = d.ambient;
  raw.rotation.assign(d.crossings, std::vector<int>(4, -1));
  for (const DrawnCurve& c : d.curves) {
    if (c.visits.empty()) {
      int e = static_cast<int>(raw.edges.size());
      raw.edges.push_back({c.id, c.twists.at(0)});
      raw.rotation.push_back({2 * e, 2 * e + 1});
      continue;
    }
    const int n = static_cast<int>(c.visits.size());
    int base = static_cast<int>(raw.edges.size());
    for (int i = 0; i < n; ++i) {
      const Visit& from = c.visits[i];
      const Visit& to = c.visits[(i + 1) % n];
      int e = base + i;
      raw.edges.push_back({c.id, c.twists.at(i)});
      int& out = raw.rotation.at(from.vertex).at((from.in_slot + 2) % 4);
      int& in = raw.rotation.at(to.vertex).at(to.in_slot);
      if (out != -1 || in != -1) throw Error("drawing uses a slot twice");
      out = 2 * e;
      in = 2 * e + 1;
    }
  }
  return raw;
}

int first_edge(const Drawing& d, int curve_index) {
  int e = 0;
  for (int i = 0; i < curve_index; ++i) {
    e += d.curves[i].visits.empty() ? 1 : static_cast<int>(d.curves[i].visits.size());
  }
  return e;
}

int reverse_raw_dart(const RawSystem& raw, int dart) {
  int h = dart_half(dart);
  int lambda = raw.edges[h >> 1].twist ? -1 : 1;
  return make_dart(h ^ 1, -dart_side(dart) * lambda);
}

CurveSystem build(const RawSystem& raw, const std::vector<RegionSpec>& regions,
                  const std::vector<int>& puncture_darts) {
  // Every combination of walk directions for orientable multi-walk regions.
  std::vector<std::pair<int, int>> flips;  // (region, walk)
  for (std::size_t r = 0; r < regions.size(); ++r) {
    if (!regions[r].orientable) continue;
    for (std::size_t w = 1; w < regions[r].darts.size(); ++w) flips.emplace_back(r, w);
  }
  std::string last;
  for (long mask = 0; mask < (1L << flips.size()); ++mask) {
    std::vector<RegionDecl> decls;
    for (const RegionSpec& r : regions) decls.push_back({r.orientable, r.genus, r.darts});
    for (std::size_t f = 0; f < flips.size(); ++f) {
      if (mask >> f & 1) {
        int& dart = decls[flips[f].first].darts[flips[f].second];
        dart = reverse_raw_dart(raw, dart);
      }
    }
    try {
      return CurveSystem(raw.ambient, raw.rotation, raw.edges, decls, puncture_darts);
    } catch (const ValidationError& e) {
      last = e.what();
    }
  }
  throw Error("no consistent region directions: " + last);
}

std::string describe_faces(const RawSystem& raw) {
  std::ostringstream os;
  auto faces = CurveSystem::trace(raw.ambient, raw.rotation, raw.edges);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    os << "face " << f << ':';
    for (int d : faces[f].walk) {
      os << ' ' << (dart_side(d) > 0 ? '+' : '-') << dart_half(d) << "(c"
         << raw.edges[dart_half(d) >> 1].curve << ')';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace bcov::testing
