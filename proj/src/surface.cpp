#include "branchcover/surface.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "branchcover/error.hpp"

namespace bcov {

void validate(const SurfaceSig& sig) {
  if (sig.genus < 0 || sig.punctures < 0 || sig.boundary < 0) {
    throw ValidationError("invalid-signature", "negative count in " + to_string(sig));
  }
  if (!sig.orientable && sig.genus < 1) {
    throw ValidationError("invalid-signature",
                          "non-orientable surface needs at least one crosscap");
  }
}

int euler_characteristic(const SurfaceSig& sig) {
  int handles = sig.orientable ? 2 * sig.genus : sig.genus;
  return 2 - handles - sig.punctures - sig.boundary;
}

bool is_sporadic(const SurfaceSig& sig) {
  int ends = sig.punctures + sig.boundary;
  if (sig.orientable) return sig.genus == 0 && ends <= 3;
  return sig.genus == 1 && ends <= 1;
}

std::string to_string(const SurfaceSig& sig) {
  std::ostringstream os;
  os << (sig.orientable ? 'O' : 'N') << ' ' << sig.genus << ' ' << sig.punctures << ' '
     << sig.boundary;
  return os.str();
}

SurfaceSig parse_signature(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string kind;
  SurfaceSig sig;
  if (!(is >> kind >> sig.genus >> sig.punctures >> sig.boundary) ||
      (kind != "O" && kind != "N")) {
    throw ParseError(1, 1, "expected signature 'O g p b' or 'N k p b', got '" +
                               std::string(text) + "'");
  }
  std::string rest;
  if (is >> rest) throw ParseError(1, 1, "trailing text after signature");
  sig.orientable = kind == "O";
  validate(sig);
  return sig;
}

SurfaceSig signature_from_euler(bool orientable, int euler, int punctures, int boundary) {
  int deficit = 2 - euler - punctures - boundary;
  if (orientable) {
    if (deficit < 0 || deficit % 2 != 0) {
      throw ValidationError("chi-parity",
                            "no orientable surface has chi " + std::to_string(euler) +
                                " with " + std::to_string(punctures + boundary) + " ends");
    }
    return {true, deficit / 2, punctures, boundary};
  }
  if (deficit < 1) {
    throw ValidationError("chi-parity",
                          "no non-orientable surface has chi " + std::to_string(euler) +
                              " with " + std::to_string(punctures + boundary) + " ends");
  }
  return {false, deficit, punctures, boundary};
}

// ---------------------------------------------------------------------------

std::vector<Letter> reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word::Word(std::vector<Letter> letters) : letters_(reduce(letters)) {
  for (Letter l : letters_) {
    if (l == 0) throw Error("letter 0 is not a generator");
  }
}

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::vector<Letter>(letters)) {}

Word Word::generator(int g, int power) {
  std::vector<Letter> v(static_cast<std::size_t>(power < 0 ? -power : power),
                        make_letter(g, power < 0));
  return Word(std::move(v));
}

Word Word::inverse() const {
  Word r;
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(-*it);
  return r;
}

Word Word::power(int k) const {
  Word base = k < 0 ? inverse() : *this;
  Word r;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
  return r;
}

int Word::max_generator() const {
  int m = -1;
  for (Letter l : letters_) m = std::max(m, generator_of(l));
  return m;
}

Word operator*(const Word& a, const Word& b) {
  Word r;
  std::size_t cancel = 0;
  while (cancel < a.letters_.size() && cancel < b.letters_.size() &&
         a.letters_[a.letters_.size() - 1 - cancel] == -b.letters_[cancel]) {
    ++cancel;
  }
  r.letters_.reserve(a.letters_.size() + b.letters_.size() - 2 * cancel);
  r.letters_.insert(r.letters_.end(), a.letters_.begin(), a.letters_.end() - cancel);
  r.letters_.insert(r.letters_.end(), b.letters_.begin() + cancel, b.letters_.end());
  return r;
}

Word cyclically_reduced(const Word& w) {
  auto l = w.letters();
  std::size_t i = 0, j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  return Word(std::vector<Letter>(l.begin() + i, l.begin() + j));
}

bool are_conjugate(const Word& u, const Word& v) {
  Word cu = cyclically_reduced(u), cv = cyclically_reduced(v);
  if (cu.length() != cv.length()) return false;
  if (cu.empty()) return true;
  auto a = cu.letters();
  auto b = cv.letters();
  std::vector<Letter> doubled(a.begin(), a.end());
  doubled.insert(doubled.end(), a.begin(), a.end());
  return std::search(doubled.begin(), doubled.end(), b.begin(), b.end()) != doubled.end();
}

// ---------------------------------------------------------------------------

std::string_view to_string(PeripheralKind kind) {
  switch (kind) {
    case PeripheralKind::Puncture: return "puncture";
    case PeripheralKind::Boundary: return "boundary";
    case PeripheralKind::Branch: return "branch";
  }
  return "?";
}

Presentation::Presentation(SurfaceSig sig, int branch_count)
    : sig_(sig), branch_count_(branch_count) {
  validate(sig);
  if (branch_count < 0) throw ValidationError("invalid-signature", "negative branch count");

  std::vector<Letter> product;
  if (sig.orientable) {
    for (int i = 0; i < sig.genus; ++i) {
      std::string suffix = sig.genus == 1 ? "" : std::to_string(i + 1);
      int a = rank(), b = a + 1;
      names_.push_back("a" + suffix);
      names_.push_back("b" + suffix);
      kinds_.push_back(GeneratorKind::HandleA);
      kinds_.push_back(GeneratorKind::HandleB);
      product.insert(product.end(), {make_letter(a), make_letter(b), make_letter(a, true),
                                     make_letter(b, true)});
    }
  } else {
    for (int i = 0; i < sig.genus; ++i) {
      int d = rank();
      names_.push_back("d" + std::to_string(i + 1));
      kinds_.push_back(GeneratorKind::Glide);
      product.insert(product.end(), {make_letter(d), make_letter(d)});
    }
  }
  surface_product_ = Word(product);
  const int surface_rank = rank();

  std::vector<PeripheralKind> pkinds;
  pkinds.insert(pkinds.end(), sig.punctures, PeripheralKind::Puncture);
  pkinds.insert(pkinds.end(), sig.boundary, PeripheralKind::Boundary);
  pkinds.insert(pkinds.end(), branch_count, PeripheralKind::Branch);
  const std::string prefix = surface_rank == 0 ? "x" : "e";

  if (pkinds.empty()) {
    relator_ = surface_product_;
  } else {
    Word prefix_product = surface_product_;
    for (std::size_t j = 0; j + 1 < pkinds.size(); ++j) {
      int g = rank();
      names_.push_back(prefix + std::to_string(j + 1));
      kinds_.push_back(GeneratorKind::Peripheral);
      peripherals_.push_back({names_.back(), pkinds[j], Word::generator(g)});
      prefix_product = prefix_product * Word::generator(g);
    }
    peripherals_.push_back(
        {prefix + std::to_string(pkinds.size()), pkinds.back(), prefix_product.inverse()});
  }

  for (int g = 0; g < rank(); ++g) {
    orientation_.push_back(kinds_[g] == GeneratorKind::Glide ? 1 : 0);
    int theta = 0;
    if (kinds_[g] == GeneratorKind::Peripheral) {
      theta = pkinds[static_cast<std::size_t>(g - surface_rank)] == PeripheralKind::Boundary;
    }
    schottky_.push_back(theta);
  }
}

int Presentation::index_of(std::string_view name) const {
  for (int i = 0; i < rank(); ++i) {
    if (names_[i] == name) return i;
  }
  return -1;
}

void Presentation::check_word(const Word& w) const {
  if (w.max_generator() >= rank()) {
    throw ValidationError("unknown-generator",
                          "generator index " + std::to_string(w.max_generator()) +
                              " outside a presentation of rank " + std::to_string(rank()));
  }
}

int Presentation::orientation_character(const Word& w) const {
  check_word(w);
  int bit = 0;
  for (Letter l : w.letters()) bit ^= orientation_[generator_of(l)];
  return bit;
}

int Presentation::schottky_character(const Word& w) const {
  check_word(w);
  int bit = 0;
  for (Letter l : w.letters()) bit ^= schottky_[generator_of(l)];
  return bit;
}

std::vector<long long> Presentation::abelianization(const Word& w) const {
  check_word(w);
  std::vector<long long> v(static_cast<std::size_t>(rank()), 0);
  for (Letter l : w.letters()) v[generator_of(l)] += is_inverse(l) ? -1 : 1;
  return v;
}

std::string Presentation::format(const Word& w) const {
  check_word(w);
  if (w.empty()) return "1";
  std::string out;
  auto l = w.letters();
  for (std::size_t i = 0; i < l.size();) {
    std::size_t j = i;
    while (j < l.size() && l[j] == l[i]) ++j;
    if (!out.empty()) out += ' ';
    out += names_[generator_of(l[i])];
    long run = static_cast<long>(j - i);
    if (is_inverse(l[i])) run = -run;
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

Word Presentation::parse_word(std::string_view text) const {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  auto col = [&](std::size_t p) { return static_cast<int>(p) + 1; };
  while (true) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos == text.size()) break;
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t') ++pos;
    std::string_view tok = text.substr(start, pos - start);
    if (tok == "1") continue;
    std::string_view name = tok;
    long exponent = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      name = tok.substr(0, caret);
      std::string_view e = tok.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exponent);
      if (ec != std::errc() || ptr != e.data() + e.size()) {
        throw ParseError(1, col(start + caret + 1), "bad exponent '" + std::string(e) + "'");
      }
    }
    int g = index_of(name);
    if (g < 0) {
      throw ParseError(1, col(start), "unknown generator '" + std::string(name) + "'");
    }
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) {
      letters.push_back(make_letter(g, exponent < 0));
    }
  }
  return Word(std::move(letters));
}

}  // namespace bcov
