#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "branchcover/cover.hpp"
#include "branchcover/perm.hpp"
#include "branchcover/surface.hpp"

namespace bcov {

class Automorphism;

// Coset graph of H = Stab(0) under the monodromy action, with a breadth-first
// spanning tree (cosets visited in order, generators tried in order) and the
// Schreier generators t_i g t_{i.g}^-1 of H, one per non-tree edge, ordered
// by (coset, generator).
class SchreierGraph {
 public:
  SchreierGraph(const Presentation& pres, std::span<const Perm> monodromy);

  int degree() const noexcept { return static_cast<int>(target_.size()); }
  int base_rank() const noexcept { return rank_; }

  // Coset reached from coset i along generator g.
  int target(int i, int g) const { return target_[i][g]; }
  // Tree parent of coset i (-1 at the root) and the generator on that edge.
  int parent(int i) const { return parent_[i]; }
  int parent_generator(int i) const { return parent_gen_[i]; }
  // Word of the tree path from coset 0 to coset i.
  const Word& transversal(int i) const { return transversal_[i]; }

  // Schreier generators as base words.
  const std::vector<Word>& generators() const noexcept { return generators_; }
  // The (coset, generator) edge of each Schreier generator.
  const std::vector<std::pair<int, int>>& generator_edges() const noexcept { return edges_; }
  // Schreier generator index of edge (i, g), or -1 for a tree edge.
  int generator_index(int i, int g) const { return index_[i][g]; }

  // End coset of w read from `start`.
  int trace(const Word& w, int start = 0) const;
  // The Schreier word of t_start w t_end^-1 over the Schreier generators.
  Word rewrite(const Word& w, int start = 0) const;
  // Substitutes Schreier generators by their base words.
  Word push_forward(const Word& u) const;

 private:
  int rank_;
  std::vector<std::vector<int>> target_, source_;
  std::vector<int> parent_, parent_gen_;
  std::vector<Word> transversal_;
  std::vector<Word> generators_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> index_;
};

// Throws ValidationError("folded") for specs carrying fold data.
SchreierGraph schreier(const CoverSpec& spec);

bool contains(const CoverSpec& spec, const Word& w);

// sigma with mu2(g) = sigma^-1 mu1(g) sigma for every g (that is,
// sigma(i . mu1(g)) = sigma(i) . mu2(g)), or none. With fix_basepoint the
// search is restricted to sigma(0) = 0.
std::optional<Perm> representations_equivalent(std::span<const Perm> mu1,
                                                std::span<const Perm> mu2,
                                                bool fix_basepoint = false);

// Whether phi maps H onto itself.
bool is_invariant_under(const CoverSpec& spec, const Automorphism& phi);

struct CharacteristicReport {
  bool verdict = true;
  std::vector<std::string> generators;  // names of the automorphisms used
  std::vector<bool> invariant;          // per automorphism
};

// Invariance under each supplied automorphism. The verdict is relative to the
// supplied list, never a statement about all geometric automorphisms.
CharacteristicReport is_geometrically_characteristic(const CoverSpec& spec,
                                                     const std::vector<Automorphism>& autos);

CoverSpec orientable_double_cover(const SurfaceSig& sig);
CoverSpec schottky_double(const SurfaceSig& sig);

inline constexpr long long kHomologyCoverDegreeLimit = 4096;

// Regular cover with deck group H_1(X; Z/n), acting on itself by translation.
// Sheets are elements in mixed radix over the nontrivial cyclic factors.
CoverSpec homology_cover(const SurfaceSig& sig, int n,
                         long long degree_limit = kHomologyCoverDegreeLimit);

}  // namespace bcov
