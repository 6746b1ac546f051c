#include "branchcover/perm.hpp"

#include <algorithm>
#include <numeric>

#include "branchcover/error.hpp"

namespace bcov {

Perm::Perm(std::size_t n) : images_(n) {
  std::iota(images_.begin(), images_.end(), 0);
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || seen[x]) {
      throw Error("image array is not a permutation");
    }
    seen[x] = true;
  }
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Perm Perm::inverse() const {
  Perm r(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    r.images_[images_[i]] = static_cast<int>(i);
  }
  return r;
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    int j = static_cast<int>(i);
    while (!seen[j]) {
      seen[j] = true;
      cyc.push_back(j);
      j = images_[j];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> Perm::cycle_lengths() const {
  std::vector<int> out;
  for (const auto& c : cycles()) out.push_back(static_cast<int>(c.size()));
  return out;
}

std::size_t Perm::cycle_count() const {
  std::size_t count = 0;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    ++count;
    for (int j = static_cast<int>(i); !seen[j]; j = images_[j]) seen[j] = true;
  }
  return count;
}

Perm Perm::relabeled(const Perm& r) const {
  Perm q(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    q.images_[r.images_[i]] = r.images_[images_[i]];
  }
  return q;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw Error("permutation degree mismatch");
  Perm r(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) {
    r.images_[i] = b.images_[a.images_[i]];
  }
  return r;
}

std::string to_cycle_string(const Perm& p) {
  std::string out;
  for (const auto& c : p.cycles()) {
    if (c.size() == 1) continue;
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(degree, false);
  std::size_t pos = 0;
  auto col = [&](std::size_t p) { return static_cast<int>(p) + 1; };
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw ParseError(1, col(pos), "empty permutation");
  while (true) {
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '(') throw ParseError(1, col(pos), "expected '('");
    ++pos;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (pos == text.size()) throw ParseError(1, col(pos), "unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] < '0' || text[pos] > '9') {
        throw ParseError(1, col(pos), "expected a sheet number");
      }
      std::size_t start = pos;
      long value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + (text[pos] - '0');
        if (value > 1000000) throw ParseError(1, col(start), "sheet out of range");
        ++pos;
      }
      if (value < 1 || static_cast<std::size_t>(value) > degree) {
        throw ParseError(1, col(start), "sheet " + std::to_string(value) +
                                            " outside 1.." + std::to_string(degree));
      }
      int s = static_cast<int>(value - 1);
      if (used[s]) {
        throw ParseError(1, col(start),
                         "sheet " + std::to_string(value) + " appears twice");
      }
      used[s] = true;
      cyc.push_back(s);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      images[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
  }
  return Perm(std::move(images));
}

bool is_transitive(std::span<const Perm> gens, std::size_t n) {
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (const Perm& g : gens) {
      int j = g.apply(i);
      if (!seen[j]) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == n;
}

std::vector<Perm> all_perms(std::size_t n) {
  std::vector<int> a(n);
  std::iota(a.begin(), a.end(), 0);
  std::vector<Perm> out;
  do {
    out.emplace_back(a);
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

}  // namespace bcov
