#include "branchcover/mcglift.hpp"

#include <functional>
#include <sstream>

#include "branchcover/error.hpp"

namespace bcov {

Word substitute(const Word& w, const std::vector<Word>& images) {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const Word& img = images.at(static_cast<std::size_t>(generator_of(l)));
    if (is_inverse(l)) {
      auto ls = img.letters();
      for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.push_back(-*it);
    } else {
      auto ls = img.letters();
      out.insert(out.end(), ls.begin(), ls.end());
    }
  }
  return Word(std::move(out));
}

namespace {

bool same_presentation(const Presentation& a, const Presentation& b) {
  return a.signature() == b.signature() && a.branch_count() == b.branch_count();
}

// Reduced words of length <= max_length in enumeration order (shorter first,
// then by letter order g1, g1^-1, g2, ...), stopping when visit returns true.
void enumerate_words(int rank, int max_length, const std::function<bool(const Word&)>& visit) {
  std::vector<Letter> letters;
  for (int g = 0; g < rank; ++g) {
    letters.push_back(make_letter(g));
    letters.push_back(make_letter(g, true));
  }
  std::vector<Letter> cur;
  std::function<bool(int)> rec = [&](int remaining) {
    if (remaining == 0) return visit(Word(cur));
    for (Letter l : letters) {
      if (!cur.empty() && cur.back() == -l) continue;
      cur.push_back(l);
      bool stop = rec(remaining - 1);
      cur.pop_back();
      if (stop) return true;
    }
    return false;
  };
  for (int len = 0; len <= max_length; ++len) {
    if (rec(len)) return;
  }
}

}  // namespace

Automorphism::Automorphism(Presentation pres, std::string name, std::vector<Word> images,
                           std::vector<Word> inverse, bool)
    : pres_(std::move(pres)),
      name_(std::move(name)),
      images_(std::move(images)),
      inverse_(std::move(inverse)) {}

Automorphism::Automorphism(Presentation pres, std::string name, std::vector<Word> images,
                           std::optional<std::vector<Word>> inverse, int inverse_search_length)
    : pres_(std::move(pres)), name_(std::move(name)), images_(std::move(images)) {
  const int r = pres_.rank();
  if (static_cast<int>(images_.size()) != r) {
    throw ValidationError("generator-count", "automorphism '" + name_ + "' needs " +
                                                 std::to_string(r) + " generator images");
  }
  for (const Word& w : images_) pres_.check_word(w);

  if (inverse) {
    if (static_cast<int>(inverse->size()) != r) {
      throw ValidationError("generator-count", "inverse of '" + name_ + "' has the wrong size");
    }
    for (const Word& w : *inverse) pres_.check_word(w);
    inverse_ = std::move(*inverse);
  } else {
    for (int g = 0; g < r; ++g) {
      Word target = Word::generator(g);
      std::optional<Word> found;
      enumerate_words(r, inverse_search_length, [&](const Word& u) {
        if (substitute(u, images_) == target) found = u;
        return found.has_value();
      });
      if (!found) {
        throw ValidationError("no-inverse",
                              "no inverse image for " + pres_.generator_names()[g] + " under '" +
                                  name_ + "' among words of length <= " +
                                  std::to_string(inverse_search_length));
      }
      inverse_.push_back(*found);
    }
  }
  for (int g = 0; g < r; ++g) {
    Word x = Word::generator(g);
    if (substitute(images_[g], inverse_) != x || substitute(inverse_[g], images_) != x) {
      throw ValidationError("no-inverse", "the inverse of '" + name_ +
                                              "' does not compose to the identity on " +
                                              pres_.generator_names()[g]);
    }
  }

  if (pres_.relator()) {
    auto rel = pres_.abelianization(*pres_.relator());
    auto img = pres_.abelianization(apply(*pres_.relator()));
    auto neg = rel;
    for (auto& x : neg) x = -x;
    if (img != rel && img != neg) {
      throw ValidationError("relator-image", "'" + name_ +
                                                 "' does not send the relator to +-itself in homology");
    }
  }

  const auto& per = pres_.peripherals();
  for (const Peripheral& p : per) {
    Word img = apply(p.word);
    const Peripheral* match = nullptr;
    for (const Peripheral& q : per) {
      if (are_conjugate(img, q.word) || are_conjugate(img, q.word.inverse())) {
        match = &q;
        if (q.kind == p.kind) break;
      }
    }
    if (!match) {
      throw ValidationError("peripheral-kind", "'" + name_ + "' sends peripheral " + p.name +
                                                   " to a non-peripheral word");
    }
    if (match->kind != p.kind) {
      throw ValidationError("peripheral-kind",
                            "'" + name_ + "' sends " + std::string(to_string(p.kind)) + " " +
                                p.name + " to " + std::string(to_string(match->kind)) + " " +
                                match->name + "; the branch locus is not preserved");
    }
  }
}

Automorphism Automorphism::identity(const Presentation& pres, std::string name) {
  std::vector<Word> gens;
  for (int g = 0; g < pres.rank(); ++g) gens.push_back(Word::generator(g));
  return Automorphism(pres, std::move(name), gens, gens, true);
}

Word Automorphism::apply(const Word& w) const {
  pres_.check_word(w);
  return substitute(w, images_);
}

Automorphism Automorphism::inverse() const {
  return Automorphism(pres_, name_ + "^-1", inverse_, images_, true);
}

Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  if (!same_presentation(phi.presentation(), psi.presentation())) {
    throw ValidationError("base-mismatch", "composing automorphisms of different bases");
  }
  std::vector<Word> images, inverse;
  for (std::size_t g = 0; g < phi.images().size(); ++g) {
    images.push_back(phi.apply(psi.images()[g]));
    inverse.push_back(substitute(phi.inverse_images()[g], psi.inverse_images()));
  }
  return Automorphism(phi.presentation(), phi.name() + "*" + psi.name(), images, inverse);
}

// ---------------------------------------------------------------------------

Automorphism parse_automorphism(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::string name;
  std::optional<SurfaceSig> base;
  std::optional<int> branch;
  std::optional<Presentation> pres;
  std::vector<std::optional<Word>> images, inverse;
  bool seen_header = false;
  auto ensure_pres = [&](int line) {
    if (pres) return;
    if (!base || !branch) throw ParseError(line, 1, "base and branch must precede generator lines");
    pres.emplace(*base, *branch);
    images.assign(static_cast<std::size_t>(pres->rank()), std::nullopt);
    inverse.assign(static_cast<std::size_t>(pres->rank()), std::nullopt);
  };
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      std::size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    rest = trim(rest);
    if (!seen_header) {
      if (key != "automorphism" || rest.empty()) {
        throw ParseError(lineno, 1, "expected 'automorphism <name>'");
      }
      name = rest;
      seen_header = true;
      continue;
    }
    if (key == "base") {
      try {
        base = parse_signature(rest);
      } catch (const Error& e) {
        throw ParseError(lineno, 1, e.what());
      }
      continue;
    }
    if (key == "branch") {
      try {
        branch = std::stoi(rest);
      } catch (const std::exception&) {
        throw ParseError(lineno, 1, "bad branch count");
      }
      continue;
    }
    bool inv = key == "inverse";
    std::string assignment = inv ? rest : key + " " + rest;
    auto arrow = assignment.find("->");
    if (arrow == std::string::npos) throw ParseError(lineno, 1, "expected 'gen -> word'");
    ensure_pres(lineno);
    std::string gen = trim(assignment.substr(0, arrow));
    int g = pres->index_of(gen);
    if (g < 0) throw ParseError(lineno, 1, "unknown generator '" + gen + "'");
    Word w;
    try {
      w = pres->parse_word(assignment.substr(arrow + 2));
    } catch (const ParseError& e) {
      throw ParseError(lineno, 1, std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
    auto& slot = inv ? inverse[g] : images[g];
    if (slot) throw ParseError(lineno, 1, "generator '" + gen + "' assigned twice");
    slot = w;
  }
  if (!seen_header) throw ParseError(1, 1, "expected 'automorphism <name>'");
  ensure_pres(lineno);
  std::vector<Word> imgs, invs;
  bool have_inverse = true;
  for (int g = 0; g < pres->rank(); ++g) {
    if (!images[g]) {
      throw ParseError(lineno, 1, "no image for generator '" + pres->generator_names()[g] + "'");
    }
    imgs.push_back(*images[g]);
    if (inverse[g]) {
      invs.push_back(*inverse[g]);
    } else {
      have_inverse = false;
    }
  }
  bool any_inverse = false;
  for (const auto& x : inverse) any_inverse = any_inverse || x.has_value();
  if (any_inverse && !have_inverse) throw ParseError(lineno, 1, "inverse given for only some generators");
  return Automorphism(*pres, name, imgs,
                      have_inverse ? std::optional<std::vector<Word>>(invs) : std::nullopt);
}

std::string emit_automorphism(const Automorphism& phi) {
  std::ostringstream os;
  const Presentation& pres = phi.presentation();
  os << "automorphism " << phi.name() << '\n';
  os << "base " << to_string(pres.signature()) << '\n';
  os << "branch " << pres.branch_count() << '\n';
  for (int g = 0; g < pres.rank(); ++g) {
    os << pres.generator_names()[g] << " -> " << pres.format(phi.images()[g]) << '\n';
  }
  for (int g = 0; g < pres.rank(); ++g) {
    os << "inverse " << pres.generator_names()[g] << " -> " << pres.format(phi.inverse_images()[g])
       << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::optional<Perm> is_liftable(const CoverSpec& spec, const Automorphism& phi, bool fix_basepoint) {
  if (!same_presentation(phi.presentation(), spec.presentation())) {
    throw ValidationError("base-mismatch", "automorphism '" + phi.name() + "' is over another base");
  }
  if (!spec.folds().empty()) {
    throw ValidationError("folded", "lifting needs a cover without fold data");
  }
  require_valid(spec);
  const Presentation& pres = spec.presentation();
  if (pres.relator() && !spec.image(phi.apply(*pres.relator())).is_identity()) {
    throw ValidationError("relator-not-killed",
                          "the monodromy does not kill the image of the relator under '" +
                              phi.name() + "'");
  }
  std::vector<Perm> twisted;
  for (int g = 0; g < pres.rank(); ++g) twisted.push_back(spec.image(phi.images()[g]));
  return representations_equivalent(spec.monodromy(), twisted, fix_basepoint);
}

LiftedClass lift(const CoverSpec& spec, const Automorphism& phi) {
  if (!is_liftable(spec, phi)) {
    throw ValidationError("not-liftable", "'" + phi.name() + "' does not lift");
  }
  auto sigma = is_liftable(spec, phi, true);
  if (!sigma) {
    throw ValidationError("no-basepoint-lift",
                          "'" + phi.name() + "' lifts, but no lift fixes the basepoint sheet");
  }
  return lift(spec, phi, *sigma);
}

LiftedClass lift(const CoverSpec& spec, const Automorphism& phi, const Perm& sigma) {
  if (sigma.degree() != static_cast<std::size_t>(spec.degree()) || sigma.apply(0) != 0) {
    throw ValidationError("no-basepoint-lift", "the relabeling does not fix the basepoint sheet");
  }
  const Presentation& pres = spec.presentation();
  for (int g = 0; g < pres.rank(); ++g) {
    if (!(spec.image(phi.apply(Word::generator(g))) == spec.monodromy()[g].relabeled(sigma))) {
      throw ValidationError("not-a-witness", "the relabeling does not intertwine the monodromy");
    }
  }
  SchreierGraph sg = schreier(spec);
  LiftedClass out{phi.name(), sigma, {}};
  for (const Word& s : sg.generators()) {
    Word img = phi.apply(s);
    if (sg.trace(img) != 0) throw Error("lifted generator does not close up");
    out.images.push_back(sg.rewrite(img));
  }
  return out;
}

std::vector<Word> deck_automorphism(const SchreierGraph& sg, int k) {
  const Word& t = sg.transversal(k);
  std::vector<Word> out;
  for (const Word& s : sg.generators()) {
    Word w = t * s * t.inverse();
    if (sg.trace(w) != 0) {
      throw ValidationError("not-normalizing", "sheet " + std::to_string(k + 1) +
                                                   " has a different stabilizer");
    }
    out.push_back(sg.rewrite(w));
  }
  return out;
}

IntMatrix homology_action(const Presentation& pres, const Automorphism& phi) {
  const std::size_t r = static_cast<std::size_t>(pres.rank());
  IntMatrix m(r, r);
  for (std::size_t g = 0; g < r; ++g) {
    auto v = pres.abelianization(phi.images()[g]);
    for (std::size_t i = 0; i < r; ++i) m(i, g) = v[i];
  }
  return m;
}

Lattice homology_relations(const Presentation& pres) {
  std::vector<std::vector<long long>> rels;
  if (pres.relator()) rels.push_back(pres.abelianization(*pres.relator()));
  return Lattice(static_cast<std::size_t>(pres.rank()), rels);
}

bool same_action(const IntMatrix& a, const IntMatrix& b, const Lattice& relations) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix shape mismatch");
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::vector<long long> diff(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) diff[i] = a(i, j) - b(i, j);
    if (!relations.contains(diff)) return false;
  }
  return true;
}

namespace {

std::vector<long long> exponent_sums(const Word& w, std::size_t n) {
  std::vector<long long> v(n, 0);
  for (Letter l : w.letters()) v.at(static_cast<std::size_t>(generator_of(l))) += is_inverse(l) ? -1 : 1;
  return v;
}

}  // namespace

IntMatrix lifted_homology_action(const SchreierGraph& sg, const std::vector<Word>& images) {
  const std::size_t n = sg.generators().size();
  IntMatrix m(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    auto v = exponent_sums(images.at(s), n);
    for (std::size_t i = 0; i < n; ++i) m(i, s) = v[i];
  }
  return m;
}

Lattice lifted_relations(const CoverSpec& spec, const SchreierGraph& sg) {
  const std::size_t n = sg.generators().size();
  std::vector<std::vector<long long>> rels;
  const auto& rel = spec.presentation().relator();
  if (rel) {
    for (int i = 0; i < spec.degree(); ++i) {
      const Word& t = sg.transversal(i);
      rels.push_back(exponent_sums(sg.rewrite(t * *rel * t.inverse()), n));
    }
  }
  return Lattice(n, rels);
}

SeparationReport separation_report(const CoverSpec& spec, const std::vector<Automorphism>& classes,
                                   const std::vector<Word>& test_words) {
  const Presentation& pres = spec.presentation();
  SchreierGraph sg = schreier(spec);
  Lattice base_rel = homology_relations(pres);
  Lattice lift_rel = lifted_relations(spec, sg);

  std::vector<int> deck_sheets;
  std::vector<IntMatrix> deck_mats;
  for (int k = 0; k < spec.degree(); ++k) {
    bool normal = true;
    for (const Word& s : sg.generators()) {
      if (sg.trace(s, k) != k) normal = false;
    }
    if (!normal) continue;
    deck_sheets.push_back(k);
    deck_mats.push_back(lifted_homology_action(sg, deck_automorphism(sg, k)));
  }

  std::vector<IntMatrix> base_mats, lift_mats;
  for (const Automorphism& phi : classes) {
    base_mats.push_back(homology_action(pres, phi));
    lift_mats.push_back(lifted_homology_action(sg, lift(spec, phi).images));
  }

  SeparationReport report;
  for (std::size_t a = 0; a < classes.size(); ++a) {
    for (std::size_t b = a + 1; b < classes.size(); ++b) {
      PairRecord rec;
      rec.first = classes[a].name();
      rec.second = classes[b].name();
      if (!same_action(base_mats[a], base_mats[b], base_rel)) {
        rec.base_invariant = "homology";
      } else if (pres.is_free()) {
        for (const Word& w : test_words) {
          if (classes[a].apply(w) != classes[b].apply(w)) {
            rec.base_invariant = "word " + pres.format(w);
            break;
          }
        }
      }
      if (rec.base_invariant.empty()) {
        rec.base_invariant = "none";
        rec.status = "skipped";
        report.pairs.push_back(std::move(rec));
        continue;
      }
      rec.base_separated = true;
      ++report.base_separated;
      rec.status = "separated";
      for (std::size_t k = 0; k < deck_sheets.size(); ++k) {
        rec.deck_checked.push_back(deck_sheets[k]);
        if (same_action(lift_mats[a], deck_mats[k] * lift_mats[b], lift_rel)) {
          rec.status = "not-certified";
          rec.colliding_deck = deck_sheets[k];
          break;
        }
      }
      if (rec.status == "separated") {
        ++report.certified;
      } else {
        ++report.collisions;
      }
      report.pairs.push_back(std::move(rec));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

void check_braid_relations(const std::vector<Automorphism>& twists, const std::vector<int>& slot) {
  auto equal = [](const Automorphism& x, const Automorphism& y) { return x.images() == y.images(); };
  for (std::size_t i = 0; i < twists.size(); ++i) {
    for (std::size_t j = i + 1; j < twists.size(); ++j) {
      const Automorphism& s = twists[i];
      const Automorphism& t = twists[j];
      bool ok;
      if (slot[j] - slot[i] == 1) {
        ok = equal(compose(compose(s, t), s), compose(compose(t, s), t));
      } else {
        ok = equal(compose(s, t), compose(t, s));
      }
      if (!ok) throw Error("preset self-check failed: braid relation between " + s.name() + " and " + t.name());
    }
  }
}

}  // namespace

std::vector<Automorphism> preset_classes(const SurfaceSig& sig, int branch_count) {
  Presentation pres(sig, branch_count);
  auto gen = [](int g, int p = 1) { return Word::generator(g, p); };
  std::vector<Automorphism> out;

  if (sig == SurfaceSig{true, 1, 1, 0} && branch_count == 0) {
    Word a = gen(0), b = gen(1);
    out.emplace_back(pres, "T_a", std::vector<Word>{a, b * a}, std::vector<Word>{a, b * a.inverse()});
    out.emplace_back(pres, "T_b", std::vector<Word>{a * b.inverse(), b}, std::vector<Word>{a * b, b});
    check_braid_relations(out, {0, 1});
    return out;
  }

  if (sig.orientable && sig.genus == 0 && sig.boundary == 0 && sig.punctures + branch_count >= 2) {
    const auto& per = pres.peripherals();
    const int s = static_cast<int>(per.size());
    std::vector<Word> x;
    for (const Peripheral& p : per) x.push_back(p.word);
    std::vector<int> slot;
    for (int i = 0; i + 1 < s; ++i) {
      if (per[i].kind != per[i + 1].kind) continue;
      std::vector<Word> img, inv;
      for (int g = 0; g < pres.rank(); ++g) {
        img.push_back(gen(g));
        inv.push_back(gen(g));
      }
      img[i] = x[i] * x[i + 1] * x[i].inverse();
      inv[i] = x[i + 1];
      if (i + 1 < s - 1) {
        img[i + 1] = x[i];
        inv[i + 1] = x[i + 1].inverse() * x[i] * x[i + 1];
      }
      out.emplace_back(pres, "sigma" + std::to_string(i + 1), img, inv);
      slot.push_back(i);
    }
    check_braid_relations(out, slot);
    return out;
  }

  if (!sig.orientable && sig.genus == 2 && sig.boundary == 0 && sig.punctures <= 1 &&
      branch_count == 0) {
    Word d1 = gen(0), d2 = gen(1);
    out.emplace_back(pres, "u", std::vector<Word>{d1 * d2 * d1.inverse(), d1},
                     std::vector<Word>{d2, d2.inverse() * d1 * d2});
    out.emplace_back(pres, "v", std::vector<Word>{d1.inverse(), d1 * d2 * d1},
                     std::vector<Word>{d1.inverse(), d1 * d2 * d1});
    out.emplace_back(pres, "push", std::vector<Word>{d1, d1 * d2 * d1.inverse()},
                     std::vector<Word>{d1, d1.inverse() * d2 * d1});
    for (const Automorphism& phi : out) {
      for (int g = 0; g < pres.rank(); ++g) {
        if (pres.orientation_character(phi.images()[g]) != pres.orientation_bit(g)) {
          throw Error("preset self-check failed: " + phi.name() + " changes the orientation character");
        }
      }
    }
    return out;
  }

  throw ValidationError("not-in-catalogue", "no preset classes for " + to_string(sig) +
                                                 " with " + std::to_string(branch_count) +
                                                 " branch points");
}

}  // namespace bcov
