#include "branchcover/charsub.hpp"

#include <functional>
#include <numeric>

#include "branchcover/error.hpp"
#include "branchcover/mcglift.hpp"
#include "branchcover/smith.hpp"

namespace bcov {

SchreierGraph::SchreierGraph(const Presentation& pres, std::span<const Perm> monodromy)
    : rank_(pres.rank()) {
  if (static_cast<int>(monodromy.size()) != rank_) {
    throw ValidationError("generator-count", "monodromy does not match the presentation");
  }
  const int d = monodromy.empty() ? 1 : static_cast<int>(monodromy.front().degree());
  target_.assign(d, std::vector<int>(rank_));
  for (int i = 0; i < d; ++i) {
    for (int g = 0; g < rank_; ++g) target_[i][g] = monodromy[g].apply(i);
  }
  source_.assign(d, std::vector<int>(rank_));
  for (int i = 0; i < d; ++i) {
    for (int g = 0; g < rank_; ++g) source_[target_[i][g]][g] = i;
  }
  parent_.assign(d, -1);
  parent_gen_.assign(d, -1);
  transversal_.assign(d, Word());
  std::vector<bool> seen(d, false);
  seen[0] = true;
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int i = queue[q];
    for (int g = 0; g < rank_; ++g) {
      int j = target_[i][g];
      if (seen[j]) continue;
      seen[j] = true;
      parent_[j] = i;
      parent_gen_[j] = g;
      transversal_[j] = transversal_[i] * Word::generator(g);
      queue.push_back(j);
    }
  }
  if (static_cast<int>(queue.size()) != d) {
    throw ValidationError("intransitive", "the monodromy action is not transitive");
  }
  index_.assign(d, std::vector<int>(rank_, -1));
  for (int i = 0; i < d; ++i) {
    for (int g = 0; g < rank_; ++g) {
      int j = target_[i][g];
      if (parent_[j] == i && parent_gen_[j] == g) continue;
      index_[i][g] = static_cast<int>(generators_.size());
      edges_.emplace_back(i, g);
      generators_.push_back(transversal_[i] * Word::generator(g) * transversal_[j].inverse());
    }
  }
}

int SchreierGraph::trace(const Word& w, int start) const {
  int c = start;
  for (Letter l : w.letters()) {
    int g = generator_of(l);
    if (g >= rank_) throw ValidationError("unknown-generator", "letter outside the base rank");
    if (!is_inverse(l)) {
      c = target_[c][g];
    } else {
      c = source_[c][g];
    }
  }
  return c;
}

Word SchreierGraph::rewrite(const Word& w, int start) const {
  std::vector<Letter> out;
  int c = start;
  for (Letter l : w.letters()) {
    int g = generator_of(l);
    if (g >= rank_) throw ValidationError("unknown-generator", "letter outside the base rank");
    if (!is_inverse(l)) {
      if (index_[c][g] >= 0) out.push_back(make_letter(index_[c][g]));
      c = target_[c][g];
    } else {
      int j = source_[c][g];
      if (index_[j][g] >= 0) out.push_back(make_letter(index_[j][g], true));
      c = j;
    }
  }
  return Word(std::move(out));
}

Word SchreierGraph::push_forward(const Word& u) const { return substitute(u, generators_); }

SchreierGraph schreier(const CoverSpec& spec) {
  if (!spec.folds().empty()) {
    throw ValidationError("folded", "subgroup operations need a cover without fold data");
  }
  require_valid(spec);
  return SchreierGraph(spec.presentation(), spec.monodromy());
}

bool contains(const CoverSpec& spec, const Word& w) {
  spec.presentation().check_word(w);
  return schreier(spec).trace(w) == 0;
}

std::optional<Perm> representations_equivalent(std::span<const Perm> mu1,
                                                std::span<const Perm> mu2,
                                                bool fix_basepoint) {
  if (mu1.size() != mu2.size()) {
    throw ValidationError("generator-count", "representations on different generator sets");
  }
  if (mu1.empty()) return std::nullopt;
  const int d = static_cast<int>(mu1.front().degree());
  for (std::size_t g = 0; g < mu1.size(); ++g) {
    if (static_cast<int>(mu1[g].degree()) != d || static_cast<int>(mu2[g].degree()) != d) {
      throw ValidationError("degree-mismatch", "representations of different degrees");
    }
  }
  std::vector<Perm> inv1, inv2;
  for (std::size_t g = 0; g < mu1.size(); ++g) {
    inv1.push_back(mu1[g].inverse());
    inv2.push_back(mu2[g].inverse());
  }

  struct State {
    std::vector<int> sigma;
    std::vector<bool> used;
  };
  auto assign = [&](State& s, int i, int j) {
    if (s.used[j]) return false;
    s.sigma[i] = j;
    s.used[j] = true;
    std::vector<int> queue{i};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int x = queue[q];
      for (std::size_t g = 0; g < mu1.size(); ++g) {
        for (int dir = 0; dir < 2; ++dir) {
          int a = dir == 0 ? mu1[g].apply(x) : inv1[g].apply(x);
          int b = dir == 0 ? mu2[g].apply(s.sigma[x]) : inv2[g].apply(s.sigma[x]);
          if (s.sigma[a] < 0) {
            if (s.used[b]) return false;
            s.sigma[a] = b;
            s.used[b] = true;
            queue.push_back(a);
          } else if (s.sigma[a] != b) {
            return false;
          }
        }
      }
    }
    return true;
  };

  std::function<std::optional<Perm>(const State&)> search = [&](const State& s) -> std::optional<Perm> {
    int i = 0;
    while (i < d && s.sigma[i] >= 0) ++i;
    if (i == d) return Perm(s.sigma);
    for (int j = 0; j < d; ++j) {
      if (s.used[j]) continue;
      if (fix_basepoint && i == 0 && j != 0) continue;
      State next = s;
      if (assign(next, i, j)) {
        if (auto r = search(next)) return r;
      }
    }
    return std::nullopt;
  };
  return search(State{std::vector<int>(d, -1), std::vector<bool>(d, false)});
}

bool is_invariant_under(const CoverSpec& spec, const Automorphism& phi) {
  if (!(phi.presentation().signature() == spec.base()) ||
      phi.presentation().branch_count() != spec.branch_count()) {
    throw ValidationError("base-mismatch", "automorphism '" + phi.name() + "' is over another base");
  }
  SchreierGraph sg = schreier(spec);
  for (const Word& s : sg.generators()) {
    if (sg.trace(phi.apply(s)) != 0) return false;
  }
  return true;
}

CharacteristicReport is_geometrically_characteristic(const CoverSpec& spec,
                                                     const std::vector<Automorphism>& autos) {
  CharacteristicReport r;
  for (const Automorphism& phi : autos) {
    bool ok = is_invariant_under(spec, phi);
    r.generators.push_back(phi.name());
    r.invariant.push_back(ok);
    r.verdict = r.verdict && ok;
  }
  return r;
}

CoverSpec orientable_double_cover(const SurfaceSig& sig) {
  validate(sig);
  if (sig.orientable) {
    throw ValidationError("orientable-input", "the surface is already orientable");
  }
  if (sig.boundary != 0) {
    throw ValidationError("boundary", "orientable double cover is built for surfaces without boundary");
  }
  Presentation pres(sig);
  std::vector<Perm> mono;
  Perm swap(std::vector<int>{1, 0});
  for (int g = 0; g < pres.rank(); ++g) {
    mono.push_back(pres.orientation_bit(g) ? swap : Perm(2));
  }
  return CoverSpec(sig, 0, 2, std::move(mono));
}

CoverSpec schottky_double(const SurfaceSig& sig) {
  validate(sig);
  if (sig.boundary < 1) throw ValidationError("boundary", "the surface has no boundary");
  Presentation pres(sig);
  std::vector<Perm> mono(static_cast<std::size_t>(pres.rank()), Perm(2));
  std::vector<Fold> folds;
  for (std::size_t j = 0; j < pres.peripherals().size(); ++j) {
    if (pres.peripherals()[j].kind == PeripheralKind::Boundary) {
      folds.push_back({static_cast<int>(j), Perm(std::vector<int>{1, 0})});
    }
  }
  return CoverSpec(sig, 0, 2, std::move(mono), std::move(folds));
}

CoverSpec homology_cover(const SurfaceSig& sig, int n, long long degree_limit) {
  validate(sig);
  if (n < 1) throw ValidationError("modulus", "n must be positive");
  Presentation pres(sig);
  std::vector<std::vector<long long>> rels;
  if (pres.relator()) rels.push_back(pres.abelianization(*pres.relator()));
  Lattice lattice(static_cast<std::size_t>(pres.rank()), rels);
  auto moduli = lattice.moduli();
  std::vector<std::size_t> slots;
  std::vector<long long> factors;
  long long degree = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    long long m = std::gcd(moduli[i], static_cast<long long>(n));
    if (m <= 1) continue;
    slots.push_back(i);
    factors.push_back(m);
    degree *= m;
    if (degree > degree_limit) {
      throw ValidationError("degree-limit", "homology cover degree exceeds " +
                                                std::to_string(degree_limit));
    }
  }
  std::vector<Perm> mono;
  for (int g = 0; g < pres.rank(); ++g) {
    auto coords = lattice.coordinates(pres.abelianization(Word::generator(g)));
    std::vector<int> img(static_cast<std::size_t>(degree));
    for (long long x = 0; x < degree; ++x) {
      long long rest = x, y = 0;
      // Most significant factor first.
      std::vector<long long> digits(factors.size());
      for (std::size_t k = factors.size(); k-- > 0;) {
        digits[k] = rest % factors[k];
        rest /= factors[k];
      }
      for (std::size_t k = 0; k < factors.size(); ++k) {
        long long shift = coords[slots[k]] % factors[k];
        if (shift < 0) shift += factors[k];
        y = y * factors[k] + (digits[k] + shift) % factors[k];
      }
      img[static_cast<std::size_t>(x)] = static_cast<int>(y);
    }
    mono.emplace_back(std::move(img));
  }
  return CoverSpec(sig, 0, static_cast<int>(degree), std::move(mono));
}

}  // namespace bcov
