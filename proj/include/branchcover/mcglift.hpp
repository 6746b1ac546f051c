#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchcover/charsub.hpp"
#include "branchcover/cover.hpp"
#include "branchcover/smith.hpp"
#include "branchcover/surface.hpp"

namespace bcov {

inline constexpr int kInverseSearchLength = 4;

// A basepointed automorphism of pi_1(X - B), given by generator images.
// Construction checks the assignment: an inverse (supplied, or found among
// words of length <= inverse_search_length) composing to the identity both
// ways, the relator's abelianized image, and that every peripheral word is
// sent to a conjugate of a peripheral word (or its inverse) of the same kind.
class Automorphism {
 public:
  Automorphism(Presentation pres, std::string name, std::vector<Word> images,
               std::optional<std::vector<Word>> inverse = std::nullopt,
               int inverse_search_length = kInverseSearchLength);

  static Automorphism identity(const Presentation& pres, std::string name = "id");

  const Presentation& presentation() const noexcept { return pres_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Word>& images() const noexcept { return images_; }
  const std::vector<Word>& inverse_images() const noexcept { return inverse_; }

  Word apply(const Word& w) const;
  Automorphism inverse() const;

 private:
  Automorphism(Presentation pres, std::string name, std::vector<Word> images,
               std::vector<Word> inverse, bool /*trusted*/);

  Presentation pres_;
  std::string name_;
  std::vector<Word> images_;
  std::vector<Word> inverse_;
};

// (phi o psi)(g) = phi(psi(g)): psi first, then phi.
Automorphism compose(const Automorphism& phi, const Automorphism& psi);

// Image of w under a substitution of generator images.
Word substitute(const Word& w, const std::vector<Word>& images);

// Text format:
//   automorphism T_a
//   base O 1 1 0
//   branch 0
//   a -> a
//   b -> b a
//   inverse b -> b a^-1      (optional, one per generator)
Automorphism parse_automorphism(std::string_view text);
std::string emit_automorphism(const Automorphism& phi);

// sigma with mu(phi(g)) = sigma^-1 mu(g) sigma for all g, or none. Throws
// ValidationError("relator-not-killed") when mu does not kill phi(R), and
// ("base-mismatch") when phi lives on another presentation.
std::optional<Perm> is_liftable(const CoverSpec& spec, const Automorphism& phi,
                                bool fix_basepoint = false);

struct LiftedClass {
  std::string name;
  Perm relabeling;           // fixes sheet 0
  std::vector<Word> images;  // per Schreier generator, over Schreier generators
};

// The lift fixing the basepoint sheet. Throws ValidationError
// ("not-liftable") or ("no-basepoint-lift") when it does not exist.
LiftedClass lift(const CoverSpec& spec, const Automorphism& phi);
LiftedClass lift(const CoverSpec& spec, const Automorphism& phi, const Perm& sigma);

// The automorphism of H induced by the deck transformation sending sheet 0
// to sheet k (conjugation by the transversal word), when Stab(k) = Stab(0).
std::vector<Word> deck_automorphism(const SchreierGraph& sg, int k);

// Abelianized action: column g is the exponent-sum vector of phi(g).
IntMatrix homology_action(const Presentation& pres, const Automorphism& phi);
// Relations among the generators in H_1: the relator's abelianization if any.
Lattice homology_relations(const Presentation& pres);
// Whether two matrices induce the same map on Z^n / L.
bool same_action(const IntMatrix& a, const IntMatrix& b, const Lattice& relations);

// Action of a lift on H_1(H), as a matrix over the Schreier generators, and
// the relations among them (rewritten conjugates of the relator when the base
// is closed).
IntMatrix lifted_homology_action(const SchreierGraph& sg, const std::vector<Word>& images);
Lattice lifted_relations(const CoverSpec& spec, const SchreierGraph& sg);

struct PairRecord {
  std::string first, second;
  bool base_separated = false;
  std::string base_invariant;  // "homology", "word <w>", or "none"
  std::string status;          // "separated", "not-certified", "skipped"
  std::vector<int> deck_checked;  // sheets k of the deck elements compared
  int colliding_deck = -1;
};

struct SeparationReport {
  std::vector<PairRecord> pairs;
  int base_separated = 0;
  int certified = 0;
  int collisions = 0;
};

// For every pair of classes: separated at base level (homology action, then
// the supplied test words) and, if so, whether the lifts stay distinct in
// their action on H_1(H) after composing with every deck element.
SeparationReport separation_report(const CoverSpec& spec, const std::vector<Automorphism>& classes,
                                   const std::vector<Word>& test_words = {});

// Named automorphisms for the supported base signatures: the once-punctured
// torus, spheres with marked points (punctures or branch points), and the
// Klein bottle with 0 or 1 punctures. Throws ValidationError("not-in-catalogue").
std::vector<Automorphism> preset_classes(const SurfaceSig& sig, int branch_count = 0);

}  // namespace bcov
