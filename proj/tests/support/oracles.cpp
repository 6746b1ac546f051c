#include "oracles.hpp"

#include <numeric>

namespace bcov::testing {

namespace {

int count_cycles(const Perm& p) {
  std::vector<char> seen(p.degree(), 0);
  int n = 0;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    ++n;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = 1;
  }
  return n;
}

Perm word_image(const Presentation& pres, const std::vector<Perm>& mono, const Word& w,
                std::size_t d) {
  Perm p(d);
  for (Letter l : w.letters()) {
    const Perm& g = mono[static_cast<std::size_t>(generator_of(l))];
    p = p * (is_inverse(l) ? g.inverse() : g);
  }
  (void)pres;
  return p;
}

bool valid_tuple(const Presentation& pres, const std::vector<Perm>& mono, std::size_t d) {
  if (!is_transitive(mono, d)) return false;
  if (pres.relator() && !word_image(pres, mono, *pres.relator(), d).is_identity()) return false;
  for (const Peripheral& per : pres.peripherals()) {
    if (per.kind == PeripheralKind::Branch && word_image(pres, mono, per.word, d).is_identity()) {
      return false;
    }
  }
  return true;
}

}  // namespace

CellCount lifted_cells(const CoverSpec& spec) {
  const Presentation& pres = spec.presentation();
  const long long d = spec.degree();
  CellCount c;
  c.vertices = d;
  c.edges = d * pres.rank();
  if (pres.relator()) {
    // Every lift of the relator disc must close up.
    Perm r = word_image(pres, spec.monodromy(), *pres.relator(), spec.degree());
    for (long long i = 0; i < d; ++i) {
      if (r[static_cast<std::size_t>(i)] == i) ++c.faces;
    }
  }
  for (const Peripheral& per : pres.peripherals()) {
    if (per.kind == PeripheralKind::Branch) {
      c.faces += count_cycles(word_image(pres, spec.monodromy(), per.word, spec.degree()));
    }
  }
  return c;
}

int polygon_euler(const SurfaceSig& sig) {
  int edges = sig.orientable ? 2 * sig.genus : sig.genus;
  return 1 - edges + 1 - sig.punctures - sig.boundary;
}

std::vector<Perm> brute_force_deck(const CoverSpec& spec) {
  std::vector<Perm> out;
  auto gens = spec.extended_generators();
  for (const Perm& s : all_perms(static_cast<std::size_t>(spec.degree()))) {
    bool ok = true;
    for (const Perm& g : gens) {
      if (s * g != g * s) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

std::set<Perm> generated_group(const std::vector<Perm>& gens, std::size_t degree) {
  std::set<Perm> group{Perm(degree)};
  std::vector<Perm> frontier{Perm(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier) {
      for (const Perm& g : gens) {
        Perm y = x * g;
        if (group.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return group;
}

bool brute_force_regular(const CoverSpec& spec) {
  auto group = generated_group(spec.monodromy(), static_cast<std::size_t>(spec.degree()));
  for (const Perm& g : group) {
    if (g[0] != 0) continue;
    for (int k = 1; k < spec.degree(); ++k) {
      if (g.apply(k) != k) return false;
    }
  }
  return true;
}

bool parity_orientable(const CoverSpec& spec) {
  const Presentation& pres = spec.presentation();
  const int d = spec.degree();
  std::vector<int> parent(static_cast<std::size_t>(d)), parity(static_cast<std::size_t>(d), 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    int p = 0;
    while (parent[x] != x) {
      p ^= parity[x];
      x = parent[x];
    }
    return std::pair{x, p};
  };
  for (int g = 0; g < pres.rank(); ++g) {
    int bit = pres.orientation_bit(g);
    for (int i = 0; i < d; ++i) {
      auto [ri, pi] = find(i);
      auto [rj, pj] = find(spec.monodromy()[g].apply(i));
      if (ri == rj) {
        if ((pi ^ pj) != bit) return false;
      } else {
        parent[ri] = rj;
        parity[ri] = pi ^ pj ^ bit;
      }
    }
  }
  // Glued boundary circles reverse the sheet's side: a fold pairs a sheet
  // with its mirror image.
  for (const Fold& f : spec.folds()) {
    for (int i = 0; i < d; ++i) {
      if (f.perm.apply(i) == i) continue;
      auto [ri, pi] = find(i);
      auto [rj, pj] = find(f.perm.apply(i));
      if (ri == rj) {
        if ((pi ^ pj) != 1) return false;
      } else {
        parent[ri] = rj;
        parity[ri] = pi ^ pj ^ 1;
      }
    }
  }
  return true;
}

long long nielsen_schreier_count(int rank, int degree) {
  return 1 + static_cast<long long>(degree) * (rank - 1);
}

std::set<std::vector<Perm>> brute_force_classes(const SurfaceSig& base, int branch, int degree) {
  Presentation pres(base, branch);
  const auto d = static_cast<std::size_t>(degree);
  const auto perms = all_perms(d);
  const int r = pres.rank();
  std::set<std::vector<Perm>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  while (true) {
    std::vector<Perm> tuple;
    for (std::size_t k : idx) tuple.push_back(perms[k]);
    if (valid_tuple(pres, tuple, d)) {
      std::vector<Perm> best = tuple;
      for (const Perm& s : perms) {
        std::vector<Perm> t;
        for (const Perm& p : tuple) t.push_back(p.relabeled(s));
        if (t < best) best = std::move(t);
      }
      out.insert(std::move(best));
    }
    int k = r - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == perms.size()) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

}  // namespace bcov::testing
