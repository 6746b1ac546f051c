#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchcover/perm.hpp"
#include "branchcover/surface.hpp"

namespace bcov {

// A reflection datum on one boundary peripheral: an involution of the fiber
// commuting with that peripheral's monodromy. Boundary circles over it are
// glued in pairs (sheet i to sheet fold(i)); a circle whose sheets are all
// fixed stays boundary. This is how doubling across boundary is expressed
// without reflection generators in pi_1.
struct Fold {
  int peripheral;  // index into Presentation::peripherals(), kind Boundary
  Perm perm;
  friend bool operator==(const Fold&, const Fold&) = default;
};

// A branched cover of X given by permutation monodromy of pi_1(X - B) on the
// fiber {0..d-1}; sheet 0 is the basepoint lift.
class CoverSpec {
 public:
  CoverSpec(SurfaceSig base, int branch_count, int degree, std::vector<Perm> monodromy,
            std::vector<Fold> folds = {}, std::string label = {});

  const SurfaceSig& base() const noexcept { return pres_.signature(); }
  int branch_count() const noexcept { return pres_.branch_count(); }
  int degree() const noexcept { return degree_; }
  const Presentation& presentation() const noexcept { return pres_; }
  // One permutation per generator of the presentation.
  const std::vector<Perm>& monodromy() const noexcept { return monodromy_; }
  const std::vector<Fold>& folds() const noexcept { return folds_; }
  const std::string& label() const noexcept { return label_; }

  // Monodromy of a word (checked against the presentation).
  Perm image(const Word& w) const;
  Perm peripheral_image(std::size_t j) const;
  // Generator images followed by fold involutions.
  std::vector<Perm> extended_generators() const;

  friend bool operator==(const CoverSpec& a, const CoverSpec& b) {
    return a.base() == b.base() && a.branch_count() == b.branch_count() &&
           a.degree_ == b.degree_ && a.monodromy_ == b.monodromy_ && a.folds_ == b.folds_;
  }

 private:
  Presentation pres_;
  int degree_;
  std::vector<Perm> monodromy_;
  std::vector<Fold> folds_;
  std::string label_;
};

struct Diagnostic {
  std::string code;  // degree-0, generator-count, relator-not-killed, intransitive, ...
  std::string message;
};

std::vector<Diagnostic> validate(const CoverSpec& spec);
// Throws ValidationError carrying the first diagnostic.
void require_valid(const CoverSpec& spec);

int total_euler(const CoverSpec& spec);

// Per branch point, the cycle lengths of its peripheral monodromy, sorted
// in decreasing order.
std::vector<std::vector<int>> ramification_profile(const CoverSpec& spec);
bool is_fully_ramified(const CoverSpec& spec);

bool is_regular(const CoverSpec& spec);

// Search strategy switch for deck_group: brute force over Sym(d) up to this
// degree, propagation from the image of sheet 0 above it.
inline constexpr int kDeckBruteForceLimit = 8;

// Permutations of the fiber commuting with every generator image and fold,
// sorted.
std::vector<Perm> deck_group(const CoverSpec& spec, int brute_force_limit = kDeckBruteForceLimit);

// Topological type of the total surface, branch preimages filled in.
SurfaceSig classify_total(const CoverSpec& spec);

struct BhVerdict {
  bool guaranteed = false;
  std::string code;    // empty when guaranteed
  std::string reason;  // human-readable
};

// Checks, in order: base without boundary, total without boundary, total
// Euler characteristic negative, fully ramified.
BhVerdict bh_guaranteed(const CoverSpec& spec);

// Cycle lengths of the monodromy of a loop, one per preimage component.
std::vector<int> lift_curve(const CoverSpec& spec, const Word& w);

// The cover of X obtained by stacking `inner` (one permutation of degree e
// per Schreier generator of outer) on top of `outer`. Sheet (i, j) is stored
// as i * e + j.
CoverSpec compose(const CoverSpec& outer, const std::vector<Perm>& inner);

// Text format:
//   cover
//   label <text>            (optional)
//   base O 0 0 0
//   branch 6
//   degree 2
//   x1 (1 2)                (one line per generator, in any order)
//   fold e1 (1 2)           (optional)
// '#' starts a comment. emit() produces the canonical form.
CoverSpec parse_cover(std::string_view text);
std::string emit_cover(const CoverSpec& spec);

}  // namespace bcov
