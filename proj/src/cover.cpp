#include "branchcover/cover.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "branchcover/charsub.hpp"
#include "branchcover/error.hpp"

namespace bcov {

CoverSpec::CoverSpec(SurfaceSig base, int branch_count, int degree, std::vector<Perm> monodromy,
                     std::vector<Fold> folds, std::string label)
    : pres_(base, branch_count),
      degree_(degree),
      monodromy_(std::move(monodromy)),
      folds_(std::move(folds)),
      label_(std::move(label)) {
  if (degree_ < 0) throw ValidationError("degree-0", "negative degree");
  if (static_cast<int>(monodromy_.size()) != pres_.rank()) {
    throw ValidationError("generator-count",
                          "expected " + std::to_string(pres_.rank()) +
                              " generator permutations, got " +
                              std::to_string(monodromy_.size()));
  }
  for (const Perm& p : monodromy_) {
    if (static_cast<int>(p.degree()) != degree_) {
      throw ValidationError("degree-mismatch", "permutation of the wrong degree");
    }
  }
  std::sort(folds_.begin(), folds_.end(),
            [](const Fold& a, const Fold& b) { return a.peripheral < b.peripheral; });
  for (std::size_t k = 0; k < folds_.size(); ++k) {
    const Fold& f = folds_[k];
    if (f.peripheral < 0 || f.peripheral >= static_cast<int>(pres_.peripherals().size()) ||
        pres_.peripherals()[f.peripheral].kind != PeripheralKind::Boundary) {
      throw ValidationError("fold-invalid", "fold datum on a non-boundary peripheral");
    }
    if (k > 0 && folds_[k - 1].peripheral == f.peripheral) {
      throw ValidationError("fold-invalid", "two fold data on one boundary peripheral");
    }
    if (static_cast<int>(f.perm.degree()) != degree_) {
      throw ValidationError("degree-mismatch", "fold permutation of the wrong degree");
    }
  }
}

Perm CoverSpec::image(const Word& w) const {
  pres_.check_word(w);
  Perm p(static_cast<std::size_t>(degree_));
  std::vector<int> img(p.images().begin(), p.images().end());
  for (Letter l : w.letters()) {
    const Perm& g = monodromy_[generator_of(l)];
    if (is_inverse(l)) {
      Perm gi = g.inverse();
      for (int& x : img) x = gi.apply(x);
    } else {
      for (int& x : img) x = g.apply(x);
    }
  }
  return Perm(std::move(img));
}

Perm CoverSpec::peripheral_image(std::size_t j) const {
  return image(pres_.peripherals().at(j).word);
}

std::vector<Perm> CoverSpec::extended_generators() const {
  std::vector<Perm> out(monodromy_);
  for (const Fold& f : folds_) out.push_back(f.perm);
  return out;
}

std::vector<Diagnostic> validate(const CoverSpec& spec) {
  std::vector<Diagnostic> out;
  if (spec.degree() == 0) {
    out.push_back({"degree-0", "degree must be at least 1"});
    return out;
  }
  const Presentation& pres = spec.presentation();
  if (pres.relator() && !spec.image(*pres.relator()).is_identity()) {
    out.push_back({"relator-not-killed", "the surface relator " + pres.format(*pres.relator()) +
                                             " does not act trivially"});
  }
  const auto& per = pres.peripherals();
  for (std::size_t j = 0; j < per.size(); ++j) {
    if (per[j].kind == PeripheralKind::Branch && spec.peripheral_image(j).is_identity()) {
      out.push_back({"identity-branch-monodromy",
                     "branch peripheral " + per[j].name + " has identity monodromy"});
    }
  }
  for (const Fold& f : spec.folds()) {
    const std::string& name = per[f.peripheral].name;
    if (!(f.perm * f.perm).is_identity()) {
      out.push_back({"fold-invalid", "fold on " + name + " is not an involution"});
    }
    Perm e = spec.peripheral_image(f.peripheral);
    if (!(f.perm * e == e * f.perm)) {
      out.push_back({"fold-invalid", "fold on " + name + " does not commute with its monodromy"});
    }
  }
  auto gens = spec.extended_generators();
  if (!is_transitive(gens, static_cast<std::size_t>(spec.degree()))) {
    out.push_back({"intransitive", "the monodromy action is not transitive"});
  }
  return out;
}

void require_valid(const CoverSpec& spec) {
  auto diags = validate(spec);
  if (!diags.empty()) throw ValidationError(diags.front().code, diags.front().message);
}

int total_euler(const CoverSpec& spec) {
  require_valid(spec);
  int chi = spec.degree() * euler_characteristic(spec.base());
  const auto& per = spec.presentation().peripherals();
  for (std::size_t j = 0; j < per.size(); ++j) {
    if (per[j].kind != PeripheralKind::Branch) continue;
    chi -= spec.degree() - static_cast<int>(spec.peripheral_image(j).cycle_count());
  }
  return chi;
}

std::vector<std::vector<int>> ramification_profile(const CoverSpec& spec) {
  require_valid(spec);
  std::vector<std::vector<int>> out;
  const auto& per = spec.presentation().peripherals();
  for (std::size_t j = 0; j < per.size(); ++j) {
    if (per[j].kind != PeripheralKind::Branch) continue;
    auto lengths = spec.peripheral_image(j).cycle_lengths();
    std::sort(lengths.rbegin(), lengths.rend());
    out.push_back(std::move(lengths));
  }
  return out;
}

bool is_fully_ramified(const CoverSpec& spec) {
  for (const auto& profile : ramification_profile(spec)) {
    if (std::find(profile.begin(), profile.end(), 1) != profile.end()) return false;
  }
  return true;
}

bool is_regular(const CoverSpec& spec) {
  require_valid(spec);
  // H = Stab(0) is normal iff every Schreier generator acts trivially. The
  // transversal t_i is accumulated as a permutation along the BFS tree.
  auto gens = spec.extended_generators();
  const int d = spec.degree();
  std::vector<std::optional<Perm>> t(static_cast<std::size_t>(d));
  t[0] = Perm(static_cast<std::size_t>(d));
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int i = queue[q];
    for (const Perm& g : gens) {
      int j = g.apply(i);
      if (!t[j]) {
        t[j] = *t[i] * g;
        queue.push_back(j);
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    for (const Perm& g : gens) {
      Perm s = *t[i] * g * t[g.apply(i)]->inverse();
      if (!s.is_identity()) return false;
    }
  }
  return true;
}

std::vector<Perm> deck_group(const CoverSpec& spec, int brute_force_limit) {
  require_valid(spec);
  auto gens = spec.extended_generators();
  const int d = spec.degree();
  auto commutes = [&](const Perm& p) {
    for (const Perm& g : gens) {
      if (!(p * g == g * p)) return false;
    }
    return true;
  };
  std::vector<Perm> out;
  if (d <= brute_force_limit) {
    for (Perm& p : all_perms(static_cast<std::size_t>(d))) {
      if (commutes(p)) out.push_back(std::move(p));
    }
    return out;
  }
  // A deck transformation is determined by the image of sheet 0.
  for (int k = 0; k < d; ++k) {
    std::vector<int> img(static_cast<std::size_t>(d), -1);
    img[0] = k;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q) {
      int i = queue[q];
      for (const Perm& g : gens) {
        int j = g.apply(i), v = g.apply(img[i]);
        if (img[j] < 0) {
          img[j] = v;
          queue.push_back(j);
        } else if (img[j] != v) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<bool> hit(static_cast<std::size_t>(d), false);
    for (int x : img) {
      if (x < 0 || hit[x]) ok = false;
      if (x >= 0) hit[x] = true;
    }
    if (ok) {
      Perm p(img);
      if (commutes(p)) out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int boundary_components(const CoverSpec& spec, std::size_t j) {
  Perm e = spec.peripheral_image(j);
  const Fold* fold = nullptr;
  for (const Fold& f : spec.folds()) {
    if (f.peripheral == static_cast<int>(j)) fold = &f;
  }
  if (!fold) return static_cast<int>(e.cycle_count());
  int count = 0;
  for (const auto& cyc : e.cycles()) {
    if (fold->perm.apply(cyc.front()) == cyc.front()) ++count;
  }
  return count;
}

bool total_orientable(const CoverSpec& spec) {
  const Presentation& pres = spec.presentation();
  const int d = spec.degree();
  struct Edge {
    const Perm* perm;
    int parity;
    bool skip_fixed;
  };
  std::vector<Edge> edges;
  for (int g = 0; g < pres.rank(); ++g) {
    edges.push_back({&spec.monodromy()[g], pres.orientation_bit(g), false});
  }
  for (const Fold& f : spec.folds()) edges.push_back({&f.perm, 1, true});
  std::vector<int> colour(static_cast<std::size_t>(d), -1);
  colour[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int i = queue[q];
    for (const Edge& e : edges) {
      // Each edge is used in both directions so the colouring sees the
      // undirected graph even before transitivity closes it.
      for (int j : {e.perm->apply(i), e.perm->inverse().apply(i)}) {
        if (e.skip_fixed && j == i) continue;
        int c = colour[i] ^ e.parity;
        if (colour[j] < 0) {
          colour[j] = c;
          queue.push_back(j);
        } else if (colour[j] != c) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

SurfaceSig classify_total(const CoverSpec& spec) {
  int chi = total_euler(spec);
  int punctures = 0, boundary = 0;
  const auto& per = spec.presentation().peripherals();
  for (std::size_t j = 0; j < per.size(); ++j) {
    if (per[j].kind == PeripheralKind::Puncture) {
      punctures += static_cast<int>(spec.peripheral_image(j).cycle_count());
    } else if (per[j].kind == PeripheralKind::Boundary) {
      boundary += boundary_components(spec, j);
    }
  }
  bool orientable = total_orientable(spec);
  try {
    return signature_from_euler(orientable, chi, punctures, boundary);
  } catch (const ValidationError& e) {
    throw Error("internal inconsistency classifying the total surface: " + std::string(e.what()));
  }
}

BhVerdict bh_guaranteed(const CoverSpec& spec) {
  if (spec.base().boundary > 0) {
    return {false, "base-boundary", "the base surface has boundary"};
  }
  SurfaceSig total = classify_total(spec);
  if (total.boundary > 0) {
    return {false, "total-boundary", "the total surface has boundary"};
  }
  int chi = euler_characteristic(total);
  if (chi >= 0) {
    return {false, "euler-nonnegative",
            "chi(S) = " + std::to_string(chi) + " is not negative"};
  }
  if (!is_fully_ramified(spec)) {
    return {false, "not-fully-ramified", "the cover is not fully ramified"};
  }
  return {true, "", ""};
}

std::vector<int> lift_curve(const CoverSpec& spec, const Word& w) {
  return spec.image(w).cycle_lengths();
}

CoverSpec compose(const CoverSpec& outer, const std::vector<Perm>& inner) {
  require_valid(outer);
  SchreierGraph sg = schreier(outer);
  if (inner.size() != sg.generators().size()) {
    throw ValidationError("generator-count",
                          "inner monodromy needs " + std::to_string(sg.generators().size()) +
                              " permutations, got " + std::to_string(inner.size()));
  }
  const int d = outer.degree();
  const int e = inner.empty() ? 1 : static_cast<int>(inner.front().degree());
  for (const Perm& p : inner) {
    if (static_cast<int>(p.degree()) != e) {
      throw ValidationError("degree-mismatch", "inner permutations of different degrees");
    }
  }
  auto inner_image = [&](const Word& u) {
    Perm p(static_cast<std::size_t>(e));
    for (Letter l : u.letters()) {
      const Perm& g = inner[generator_of(l)];
      p = p * (is_inverse(l) ? g.inverse() : g);
    }
    return p;
  };
  const Presentation& pres = outer.presentation();
  if (pres.relator()) {
    for (int i = 0; i < d; ++i) {
      if (!inner_image(sg.rewrite(sg.transversal(i) * *pres.relator() * sg.transversal(i).inverse()))
               .is_identity()) {
        throw ValidationError("inner-relator-not-killed",
                              "inner monodromy does not kill the lifted relator at sheet " +
                                  std::to_string(i + 1));
      }
    }
  }
  std::vector<Perm> mono;
  for (int g = 0; g < pres.rank(); ++g) {
    std::vector<int> img(static_cast<std::size_t>(d * e));
    for (int i = 0; i < d; ++i) {
      int k = sg.generator_index(i, g);
      int target = sg.target(i, g);
      for (int j = 0; j < e; ++j) {
        int jj = k < 0 ? j : inner[k].apply(j);
        img[i * e + j] = target * e + jj;
      }
    }
    mono.emplace_back(std::move(img));
  }
  return CoverSpec(outer.base(), outer.branch_count(), d * e, std::move(mono));
}

// ---------------------------------------------------------------------------

namespace {

struct LineReader {
  std::vector<std::string> lines;
  std::size_t next = 0;

  explicit LineReader(std::string_view text) {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }

  // Next non-blank line with comments stripped; returns false at the end.
  bool get(std::string& out, int& lineno) {
    while (next < lines.size()) {
      std::string s = lines[next++];
      if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
      std::size_t k = s.find_first_not_of(" \t");
      if (k == std::string::npos) continue;
      out = s;
      lineno = static_cast<int>(next);
      return true;
    }
    return false;
  }
};

std::pair<std::string, std::string> split_key(const std::string& line) {
  std::size_t a = line.find_first_not_of(" \t");
  std::size_t b = line.find_first_of(" \t", a);
  if (b == std::string::npos) return {line.substr(a), ""};
  std::size_t c = line.find_first_not_of(" \t", b);
  return {line.substr(a, b - a), c == std::string::npos ? "" : line.substr(c)};
}

int parse_count(const std::string& value, int line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size() || v < 0) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, 1, std::string("bad ") + what + " '" + value + "'");
  }
}

}  // namespace

CoverSpec parse_cover(std::string_view text) {
  LineReader in(text);
  std::string line;
  int lineno = 0;
  if (!in.get(line, lineno) || split_key(line).first != "cover") {
    throw ParseError(lineno ? lineno : 1, 1, "expected 'cover'");
  }
  std::string label;
  std::optional<SurfaceSig> base;
  std::optional<int> branch, degree;
  std::optional<Presentation> pres;
  std::vector<std::optional<Perm>> mono;
  std::vector<Fold> folds;
  while (in.get(line, lineno)) {
    auto [key, value] = split_key(line);
    std::size_t value_col = line.size() - value.size() + 1;
    if (key == "label") {
      label = value;
    } else if (key == "base") {
      try {
        base = parse_signature(value);
      } catch (const Error& e) {
        throw ParseError(lineno, static_cast<int>(value_col), e.what());
      }
    } else if (key == "branch") {
      branch = parse_count(value, lineno, "branch count");
    } else if (key == "degree") {
      degree = parse_count(value, lineno, "degree");
    } else {
      if (!base || !branch || !degree) {
        throw ParseError(lineno, 1, "base, branch and degree must precede permutations");
      }
      if (!pres) {
        pres.emplace(*base, *branch);
        mono.assign(static_cast<std::size_t>(pres->rank()), std::nullopt);
      }
      auto parse_perm = [&](const std::string& v, std::size_t col) {
        try {
          return parse_cycles(v, static_cast<std::size_t>(*degree));
        } catch (const ParseError& e) {
          throw ParseError(lineno, static_cast<int>(col) + e.column() - 1,
                           std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
        }
      };
      if (key == "fold") {
        auto [name, perm_text] = split_key(value);
        int j = -1;
        for (std::size_t k = 0; k < pres->peripherals().size(); ++k) {
          if (pres->peripherals()[k].name == name) j = static_cast<int>(k);
        }
        if (j < 0 || pres->peripherals()[j].kind != PeripheralKind::Boundary) {
          throw ParseError(lineno, static_cast<int>(value_col),
                           "'" + name + "' is not a boundary peripheral");
        }
        folds.push_back({j, parse_perm(perm_text, line.size() - perm_text.size() + 1)});
      } else {
        int g = pres->index_of(key);
        if (g < 0) throw ParseError(lineno, 1, "unknown generator '" + key + "'");
        if (mono[g]) throw ParseError(lineno, 1, "generator '" + key + "' given twice");
        mono[g] = parse_perm(value, value_col);
      }
    }
  }
  if (!base || !branch || !degree) throw ParseError(lineno, 1, "missing base, branch or degree");
  if (!pres) {
    pres.emplace(*base, *branch);
    mono.assign(static_cast<std::size_t>(pres->rank()), std::nullopt);
  }
  std::vector<Perm> perms;
  for (int g = 0; g < pres->rank(); ++g) {
    if (!mono[g]) {
      throw ParseError(lineno, 1, "no permutation for generator '" + pres->generator_names()[g] + "'");
    }
    perms.push_back(*mono[g]);
  }
  return CoverSpec(*base, *branch, *degree, std::move(perms), std::move(folds), label);
}

std::string emit_cover(const CoverSpec& spec) {
  std::ostringstream os;
  const Presentation& pres = spec.presentation();
  os << "cover\n";
  if (!spec.label().empty()) os << "label " << spec.label() << '\n';
  os << "base " << to_string(spec.base()) << '\n';
  os << "branch " << spec.branch_count() << '\n';
  os << "degree " << spec.degree() << '\n';
  for (int g = 0; g < pres.rank(); ++g) {
    os << pres.generator_names()[g] << ' ' << to_cycle_string(spec.monodromy()[g]) << '\n';
  }
  for (const Fold& f : spec.folds()) {
    os << "fold " << pres.peripherals()[f.peripheral].name << ' ' << to_cycle_string(f.perm)
       << '\n';
  }
  return os.str();
}

}  // namespace bcov
