#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bcov {

// Topological type of a finite-type surface.
//
// For orientable surfaces `genus` is the genus; for non-orientable ones it is
// the number of crosscaps (at least one).
struct SurfaceSig {
  bool orientable = true;
  int genus = 0;
  int punctures = 0;
  int boundary = 0;

  static SurfaceSig orientable_surface(int genus, int punctures = 0, int boundary = 0) {
    return {true, genus, punctures, boundary};
  }
  static SurfaceSig nonorientable_surface(int crosscaps, int punctures = 0,
                                          int boundary = 0) {
    return {false, crosscaps, punctures, boundary};
  }

  friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;
};

// Throws ValidationError("invalid-signature") on negative counts or a
// non-orientable signature without crosscaps.
void validate(const SurfaceSig& sig);

int euler_characteristic(const SurfaceSig& sig);

// Whether the surface, with boundary components counted as punctures, is a
// sphere with at most three punctures or a projective plane with at most one.
bool is_sporadic(const SurfaceSig& sig);

// Textual form "O g p b" / "N k p b".
std::string to_string(const SurfaceSig& sig);
SurfaceSig parse_signature(std::string_view text);

// Inverse of euler_characteristic: the signature with the given orientability,
// punctures, boundary and Euler characteristic. Throws
// ValidationError("chi-parity") when no such surface exists.
SurfaceSig signature_from_euler(bool orientable, int euler, int punctures, int boundary);

// ---------------------------------------------------------------------------
// Free-group words.

// A letter is a generator index g >= 0 encoded as g + 1 (positive power) or
// -(g + 1) (inverse).
using Letter = std::int32_t;

constexpr Letter make_letter(int generator, bool inverse = false) {
  return inverse ? -(generator + 1) : generator + 1;
}
constexpr int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }
constexpr bool is_inverse(Letter l) { return l < 0; }

// A freely reduced word. Every constructor reduces, so equality of Word
// values is equality in the free group.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters);

  static Word generator(int g, int power = 1);

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Word inverse() const;
  Word power(int k) const;
  // Highest generator index used, or -1 for the empty word.
  int max_generator() const;

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Free reduction of an arbitrary letter sequence.
std::vector<Letter> reduce(std::span<const Letter> letters);
inline Word multiply(const Word& u, const Word& v) { return u * v; }
inline Word invert(const Word& w) { return w.inverse(); }

// Cyclic reduction: strips matching first/last letter pairs.
Word cyclically_reduced(const Word& w);
// Whether u and v are conjugate in the free group.
bool are_conjugate(const Word& u, const Word& v);

// ---------------------------------------------------------------------------
// Presentations.

enum class GeneratorKind { HandleA, HandleB, Glide, Peripheral };
enum class PeripheralKind { Puncture, Boundary, Branch };

std::string_view to_string(PeripheralKind kind);

struct Peripheral {
  std::string name;
  PeripheralKind kind;
  Word word;  // over the presentation's generators
};

// Standard presentation of pi_1 of a surface with `branch_count` extra marked
// points removed. Peripherals are ordered punctures, boundary, branch points.
//
// With s >= 1 peripherals the group is free on the surface generators and the
// first s - 1 peripherals; the last peripheral is the dependent word
//   e_s = (R e_1 ... e_{s-1})^-1,
// where R = [a_1,b_1]...[a_g,b_g] or d_1^2...d_k^2. With s = 0 the group is
// one-relator with relator R.
class Presentation {
 public:
  Presentation(SurfaceSig sig, int branch_count = 0);

  const SurfaceSig& signature() const noexcept { return sig_; }
  int branch_count() const noexcept { return branch_count_; }

  // Number of generators (the free rank when is_free()).
  int rank() const noexcept { return static_cast<int>(names_.size()); }
  bool is_free() const noexcept { return !relator_.has_value(); }

  const std::vector<std::string>& generator_names() const noexcept { return names_; }
  GeneratorKind kind(int generator) const { return kinds_.at(generator); }
  // Index of a generator name, or -1.
  int index_of(std::string_view name) const;

  const std::optional<Word>& relator() const noexcept { return relator_; }
  const std::vector<Peripheral>& peripherals() const noexcept { return peripherals_; }
  // Surface product R (empty for the sphere).
  const Word& surface_product() const noexcept { return surface_product_; }

  // Per-generator bits.
  int orientation_bit(int generator) const { return orientation_.at(generator); }
  int schottky_bit(int generator) const { return schottky_.at(generator); }

  // Throws ValidationError("unknown-generator") when w uses an index >= rank.
  void check_word(const Word& w) const;

  // Homomorphisms to Z/2 and Z^rank.
  int orientation_character(const Word& w) const;
  int schottky_character(const Word& w) const;
  std::vector<long long> abelianization(const Word& w) const;

  // Word text: whitespace-separated tokens `name`, `name^-1`, `name^k`;
  // "1" (or an empty string) is the identity.
  std::string format(const Word& w) const;
  Word parse_word(std::string_view text) const;

 private:
  SurfaceSig sig_;
  int branch_count_;
  std::vector<std::string> names_;
  std::vector<GeneratorKind> kinds_;
  std::vector<int> orientation_;
  std::vector<int> schottky_;
  std::optional<Word> relator_;
  Word surface_product_;
  std::vector<Peripheral> peripherals_;
};

inline Presentation presentation(const SurfaceSig& sig, int branch_count = 0) {
  return Presentation(sig, branch_count);
}

}  // namespace bcov
