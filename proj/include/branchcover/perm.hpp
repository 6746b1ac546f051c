#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bcov {

// A permutation of the fiber {0, ..., n-1}. Sheets are 0-based in memory and
// 1-based in every textual form.
//
// Permutations act on the right: for a word g h the sheet i is sent to
// h(g(i)), so `a * b` means "apply a, then b". This is the convention under
// which monodromy of path concatenation is a homomorphism.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t n);
  explicit Perm(std::vector<int> images);

  static Perm identity(std::size_t n) { return Perm(n); }

  std::size_t degree() const noexcept { return images_.size(); }
  int operator[](std::size_t i) const { return images_[i]; }
  int apply(int i) const { return images_[static_cast<std::size_t>(i)]; }
  std::span<const int> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Perm inverse() const;

  // Cycles ordered by their smallest element, each starting at it.
  std::vector<std::vector<int>> cycles() const;
  // Cycle lengths, in the order of cycles().
  std::vector<int> cycle_lengths() const;
  std::size_t cycle_count() const;

  // Conjugate by a relabeling r: the result q satisfies q(r(i)) = r(p(i)).
  Perm relabeled(const Perm& r) const;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> images_;
};

// Cycle notation with fixed points omitted; the identity prints as "()".
std::string to_cycle_string(const Perm& p);

// Parses cycle notation such as "(1 2)(3)" or "()" on {1..degree}.
// Throws ParseError (column relative to `text`) on malformed or overlapping
// cycles or out-of-range points.
Perm parse_cycles(std::string_view text, std::size_t degree);

// Whether the group generated by `gens` acts transitively on {0..n-1}.
bool is_transitive(std::span<const Perm> gens, std::size_t n);

// Every permutation of {0..n-1}, in lexicographic order of image arrays.
std::vector<Perm> all_perms(std::size_t n);

}  // namespace bcov
