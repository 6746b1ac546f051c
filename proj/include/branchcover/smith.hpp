#pragma once

#include <cstddef>
#include <vector>

namespace bcov {

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  // Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<long long>>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  long long& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  long long operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<long long> column(std::size_t j) const;
  std::vector<long long> apply(const std::vector<long long>& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<long long> a_;
};

// U * A * V = D with U, V unimodular and D diagonal; the nonzero diagonal
// entries are positive and each divides the next. Arithmetic is checked:
// overflow throws Error.
struct SmithForm {
  IntMatrix left;    // U, rows x rows
  IntMatrix right;   // V, cols x cols
  std::vector<long long> invariants;  // nonzero diagonal entries of D
  std::size_t rank() const noexcept { return invariants.size(); }
};

SmithForm smith_normal_form(const IntMatrix& a);

// A sublattice L of Z^dim given by generators, with the quotient Z^dim / L
// presented as Z/d_1 + ... + Z/d_k + Z^(dim - k).
class Lattice {
 public:
  Lattice(std::size_t dim, const std::vector<std::vector<long long>>& generators);

  std::size_t dim() const noexcept { return dim_; }
  bool contains(const std::vector<long long>& v) const;
  // Invariant factors > 1 of the torsion part.
  std::vector<long long> torsion() const;
  std::size_t free_rank() const noexcept { return dim_ - smith_.rank(); }

  // Coordinates of v + L in the decomposition above: one entry per invariant
  // factor (reduced mod d_i, trivial factors included) followed by the free part.
  std::vector<long long> coordinates(const std::vector<long long>& v) const;
  // Invariant factors including the ones equal to 1, then 0 for each free
  // summand, aligned with coordinates().
  std::vector<long long> moduli() const;

 private:
  std::size_t dim_;
  SmithForm smith_;
};

}  // namespace bcov
