#include "branchcover/smith.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

#include "branchcover/error.hpp"

namespace bcov {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in lattice arithmetic");
  return r;
}

long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in lattice arithmetic");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in lattice arithmetic");
  return r;
}

long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

struct Reducer {
  IntMatrix d, u, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < d.cols(); ++c) std::swap(d(i, c), d(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d.rows(); ++r) std::swap(d(r, i), d(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // row_i -= q * row_j
  void row_sub(std::size_t i, std::size_t j, long long q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) = checked_sub(d(i, c), checked_mul(q, d(j, c)));
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = checked_sub(u(i, c), checked_mul(q, u(j, c)));
  }
  // col_i -= q * col_j
  void col_sub(std::size_t i, std::size_t j, long long q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, i) = checked_sub(d(r, i), checked_mul(q, d(r, j)));
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) = checked_sub(v(r, i), checked_mul(q, v(r, j)));
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) = -d(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
  }

  bool move_min_to(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    long long best = 0;
    for (std::size_t i = t; i < d.rows(); ++i) {
      for (std::size_t j = t; j < d.cols(); ++j) {
        long long x = std::llabs(d(i, j));
        if (x != 0 && (best == 0 || x < best)) {
          best = x;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == 0) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void run() {
    std::size_t limit = std::min(d.rows(), d.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      if (!move_min_to(t)) break;
      while (true) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < d.rows(); ++i) {
          row_sub(i, t, d(i, t) / d(t, t));
          if (d(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
          col_sub(j, t, d(t, j) / d(t, t));
          if (d(t, j) != 0) dirty = true;
        }
        if (dirty) {
          move_min_to(t);
          continue;
        }
        std::size_t bad = d.rows();
        for (std::size_t i = t + 1; i < d.rows() && bad == d.rows(); ++i) {
          for (std::size_t j = t + 1; j < d.cols(); ++j) {
            if (d(i, j) % d(t, t) != 0) {
              bad = i;
              break;
            }
          }
        }
        if (bad == d.rows()) break;
        row_sub(t, bad, -1);
      }
      if (d(t, t) < 0) negate_row(t);
    }
  }
};

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows,
                                  const std::vector<std::vector<long long>>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<long long> IntMatrix::column(std::size_t j) const {
  std::vector<long long> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<long long> IntMatrix::apply(const std::vector<long long>& v) const {
  if (v.size() != cols_) throw Error("vector length mismatch");
  std::vector<long long> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out[i] = checked_add(out[i], checked_mul((*this)(i, j), v[j]));
    }
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      long long x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        c(i, j) = checked_add(c(i, j), checked_mul(x, b(k, j)));
      }
    }
  }
  return c;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  Reducer r{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  r.run();
  SmithForm out{std::move(r.u), std::move(r.v), {}};
  for (std::size_t t = 0; t < std::min(a.rows(), a.cols()); ++t) {
    if (r.d(t, t) == 0) break;
    out.invariants.push_back(r.d(t, t));
  }
  return out;
}

Lattice::Lattice(std::size_t dim, const std::vector<std::vector<long long>>& generators)
    : dim_(dim), smith_(smith_normal_form(IntMatrix::from_columns(dim, generators))) {}

bool Lattice::contains(const std::vector<long long>& v) const {
  auto w = smith_.left.apply(v);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i < smith_.rank()) {
      if (w[i] % smith_.invariants[i] != 0) return false;
    } else if (w[i] != 0) {
      return false;
    }
  }
  return true;
}

std::vector<long long> Lattice::torsion() const {
  std::vector<long long> out;
  for (long long x : smith_.invariants) {
    if (x > 1) out.push_back(x);
  }
  return out;
}

std::vector<long long> Lattice::coordinates(const std::vector<long long>& v) const {
  auto w = smith_.left.apply(v);
  for (std::size_t i = 0; i < smith_.rank(); ++i) w[i] = floor_mod(w[i], smith_.invariants[i]);
  return w;
}

std::vector<long long> Lattice::moduli() const {
  std::vector<long long> m(smith_.invariants);
  m.resize(dim_, 0);
  return m;
}

}  // namespace bcov
