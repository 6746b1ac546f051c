// One line per acceptance criterion; exit status 1 when any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "branchcover/census.hpp"
#include "branchcover/charsub.hpp"
#include "branchcover/cli.hpp"
#include "branchcover/cover.hpp"
#include "branchcover/curvesys.hpp"
#include "branchcover/mcglift.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

using namespace bcov;
namespace bt = bcov::testing;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path kData = BCOV_DATA_DIR;

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CoverSpec cover(const std::string& name) { return parse_cover(read(kData / "covers" / (name + ".cover"))); }

// Collects failed checks with a short description each.
struct Checks {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<void(Checks&, std::string&)> body;
};

// ---------------------------------------------------------------------------

void hyperelliptic(Checks& c, std::string& note) {
  CoverSpec s = cover("hyperelliptic");
  c.expect(validate(s).empty(), "fixture invalid");
  c.expect(total_euler(s) == -2, "total_euler != -2");
  c.expect(bt::lifted_cells(s).euler() == -2, "cell oracle != -2");
  c.expect(2 * 2 - 6 * (2 - 1) == total_euler(s), "Riemann-Hurwitz count");
  c.expect(classify_total(s) == SurfaceSig{true, 2, 0, 0}, "total != O 2 0 0");
  c.expect(is_fully_ramified(s), "not fully ramified");
  c.expect(is_regular(s), "not regular");
  c.expect(deck_group(s).size() == 2 && bt::brute_force_deck(s).size() == 2, "|Deck| != 2");
  c.expect(bh_guaranteed(s).guaranteed, "bh not Guaranteed");
  note = "total O 2 0 0, chi -2, |Deck| 2";
}

void torus_over_klein(Checks& c, std::string& note) {
  CoverSpec s = cover("torus_over_klein");
  c.expect(classify_total(s) == SurfaceSig{true, 1, 0, 0}, "total != O 1 0 0");
  BhVerdict v = bh_guaranteed(s);
  c.expect(!v.guaranteed && v.code == "euler-nonnegative", "bh verdict " + v.code);
  c.expect(total_euler(s) == 0, "chi != 0");
  note = "total O 1 0 0, NotApplicable(" + v.code + ")";
}

void threefold(Checks& c, std::string& note) {
  CoverSpec s = cover("threefold_simple");
  c.expect(validate(s).empty(), "fixture invalid");
  c.expect(s.base() == SurfaceSig{true, 0, 0, 0} && s.degree() == 3, "fixture shape");
  // chi(S_3) = -4 = 3 * 2 - b * (3 - 2) gives b = 10 simple branch points.
  c.expect(s.branch_count() == 3 * 2 - (-4), "branch count from Riemann-Hurwitz");
  for (const auto& prof : ramification_profile(s)) {
    c.expect(prof == std::vector<int>{2, 1}, "branch profile not a transposition");
  }
  c.expect(classify_total(s) == SurfaceSig{true, 3, 0, 0}, "total != O 3 0 0");
  c.expect(bt::lifted_cells(s).euler() == -4, "cell oracle != -4");
  c.expect(!is_fully_ramified(s), "fully ramified");
  BhVerdict v = bh_guaranteed(s);
  c.expect(!v.guaranteed && v.code == "not-fully-ramified", "bh verdict " + v.code);
  note = "total O 3 0 0, NotApplicable(" + v.code + ")";
}

void schottky(Checks& c, std::string& note) {
  c.expect(classify_total(schottky_double({true, 0, 0, 2})) == SurfaceSig{true, 1, 0, 0},
           "double of the annulus is not the torus");
  std::set<std::string> bases;
  for (int o = 0; o < 2; ++o) {
    for (int g = o ? 0 : 1; g <= 3; ++g) {
      for (int p = 0; p <= 2; ++p) {
        for (int b = 1; b <= 3; ++b) bases.insert(to_string(SurfaceSig{o == 1, g, p, b}));
      }
    }
  }
  for (const auto& entry : fs::directory_iterator(kData / "covers")) {
    SurfaceSig base = parse_cover(read(entry.path())).base();
    if (base.boundary > 0) bases.insert(to_string(base));
  }
  for (const std::string& text : bases) {
    SurfaceSig sig = parse_signature(text);
    CoverSpec d = schottky_double(sig);
    SurfaceSig t = classify_total(d);
    c.expect(euler_characteristic(t) == 2 * euler_characteristic(sig), text + ": chi not doubled");
    c.expect(bt::lifted_cells(d).euler() == 2 * euler_characteristic(sig), text + ": cell oracle");
    c.expect(t.boundary == 0, text + ": boundary left");
    c.expect(t.orientable == sig.orientable, text + ": orientability changed");
  }
  note = std::to_string(bases.size()) + " bordered signatures";
}

void lemma_census(Checks& c, std::string& note) {
  CensusQuery q = lemma_annulus_query(4);
  q.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  CensusResult r = run_census(q);
  c.expect(r.complete, "incomplete: " + r.stop_reason);
  c.expect(r.counterexamples == 0, std::to_string(r.counterexamples) + " counterexamples");
  long long covers = 0;
  for (const CensusCell& cell : r.cells) covers += cell.covers;
  note = std::to_string(covers) + " covers, " + std::to_string(r.nodes) + " nodes, " +
         std::to_string(r.counterexamples) + " counterexamples, " + std::to_string(q.workers) +
         " workers";
}

void cover_properties(Checks& c, std::string& note) {
  bt::SpecGenerator gen(20240601);
  const int n = 1000;
  int checks = 0;
  for (int t = 0; t < n; ++t) {
    CoverSpec s = gen.spec();
    const int d = s.degree();
    std::string id = "spec " + std::to_string(t);
    c.expect(total_euler(s) == bt::lifted_cells(s).euler(), id + ": euler vs cell oracle");
    for (const auto& prof : ramification_profile(s)) {
      c.expect(std::accumulate(prof.begin(), prof.end(), 0) == d, id + ": profile sum");
    }
    auto deck = deck_group(s);
    c.expect(deck == bt::brute_force_deck(s), id + ": deck vs brute force");
    c.expect(is_regular(s) == (static_cast<int>(deck.size()) == d), id + ": regular vs |Deck|");
    c.expect(is_regular(s) == bt::brute_force_regular(s), id + ": regular vs stabilizers");
    for (const Perm& x : deck) {
      for (const Perm& g : s.monodromy()) c.expect(x * g == g * x, id + ": deck not central");
    }
    auto lengths = lift_curve(s, gen.word(s.presentation().rank(), 8));
    c.expect(std::accumulate(lengths.begin(), lengths.end(), 0) == d, id + ": lift lengths");
    if (s.presentation().is_free()) {
      c.expect(static_cast<long long>(schreier(s).generators().size()) ==
                   bt::nielsen_schreier_count(s.presentation().rank(), d),
               id + ": Schreier generator count");
    }
    checks += 6;
  }
  note = std::to_string(n) + " specs, degree <= 6";
}

std::vector<Automorphism> products_up_to(const std::vector<Automorphism>& gens, int length) {
  std::vector<Automorphism> out = gens, layer = gens;
  for (int l = 2; l <= length; ++l) {
    std::vector<Automorphism> next;
    for (const auto& a : layer) {
      for (const auto& g : gens) next.push_back(compose(a, g));
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

void lifting(Checks& c, std::string& note) {
  std::ostringstream summary;
  for (const SurfaceSig& sig : {SurfaceSig{false, 2, 0, 0}, SurfaceSig{false, 2, 1, 0}}) {
    std::string name = to_string(sig);
    CoverSpec dbl = orientable_double_cover(sig);
    auto presets = preset_classes(sig);
    auto classes = products_up_to(presets, 3);
    SchreierGraph sg = schreier(dbl);
    for (const auto& phi : classes) {
      c.expect(is_liftable(dbl, phi).has_value(), name + ": " + phi.name() + " not liftable");
    }
    for (const auto& phi : products_up_to(presets, 2)) {
      LiftedClass lp = lift(dbl, phi);
      for (const auto& psi : presets) {
        LiftedClass ls = lift(dbl, psi), lc = lift(dbl, compose(phi, psi));
        for (std::size_t k = 0; k < lc.images.size(); ++k) {
          c.expect(lc.images[k] == substitute(ls.images[k], lp.images),
                   name + ": functoriality fails for " + phi.name() + " o " + psi.name());
        }
      }
    }
    SeparationReport rep = separation_report(dbl, classes);
    c.expect(rep.certified == rep.base_separated,
             name + ": " + std::to_string(rep.collisions) + " of " +
                 std::to_string(rep.base_separated) + " base-separated pairs collide mod Deck");
    summary << name << " " << classes.size() << " classes, " << rep.certified << "/"
            << rep.base_separated << " certified; ";
  }
  note = summary.str();
  note.resize(note.size() - 2);
}

void curves(Checks& c, std::string& note) {
  json corpus = json::parse(read(kData / "curves" / "corpus.json"));
  c.expect(corpus.size() >= 30, "corpus smaller than 30");
  auto counts = [](const CurveSystem& cs) {
    std::map<std::pair<int, int>, int> out;
    auto ids = cs.curves();
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        out[{ids[a], ids[b]}] = crossing_count(cs, ids[a], ids[b]);
      }
    }
    return out;
  };
  for (const auto& e : corpus) {
    std::string name = e["name"];
    CurveSystem cs = parse_curve_system(read(kData / "curves" / e["file"].get<std::string>()));
    CurveSystem m = minimal_position(cs);
    c.expect(find_bigons(m).empty(), name + ": bigon left");
    c.expect(minimal_position(m) == m, name + ": not idempotent");
    // Every removal order ends at the same crossing counts.
    std::set<std::string> seen;
    std::set<std::map<std::pair<int, int>, int>> ends;
    std::function<void(const CurveSystem&)> walk = [&](const CurveSystem& x) {
      if (!seen.insert(emit_curve_system(x)).second) return;
      auto bigons = find_bigons(x);
      if (bigons.empty()) ends.insert(counts(x));
      for (const Bigon& b : bigons) walk(remove_bigon(x, b));
    };
    walk(cs);
    c.expect(ends.size() == 1 && *ends.begin() == counts(m), name + ": not order-confluent");
    for (auto it = e["intersections"].begin(); it != e["intersections"].end(); ++it) {
      int i = std::stoi(it.key().substr(0, it.key().find(',')));
      int j = std::stoi(it.key().substr(it.key().find(',') + 1));
      c.expect(geometric_intersection(cs, i, j) == it.value().get<int>(),
               name + ": i(" + it.key() + ")");
    }
    c.expect(fills(cs) == e["fills"].get<bool>(), name + ": fills");
    AlexanderReport rep = alexander_report(cs);
    c.expect(rep.minimal_position == e["minimal_position"].get<bool>(), name + ": condition (1)");
    c.expect(rep.no_triple == e["no_triple"].get<bool>(), name + ": condition (3)");
    c.expect(rep.fills == e["fills"].get<bool>(), name + ": report fills");
    std::map<std::string, std::string> got;
    for (const auto& d : rep.distinct) {
      got[std::to_string(d.first) + "," + std::to_string(d.second)] = d.status;
    }
    std::map<std::string, std::string> want;
    for (auto it = e["distinct"].begin(); it != e["distinct"].end(); ++it) {
      want[it.key()] = it.value().get<std::string>();
    }
    c.expect(got == want, name + ": condition (2) statuses");
  }
  note = std::to_string(corpus.size()) + " configurations";
}

std::string run(std::vector<std::string> args) {
  std::ostringstream out, err;
  run_cli(args, out, err);
  return out.str();
}

void round_trips(Checks& c, std::string& note) {
  int files = 0;
  for (const char* dir : {"covers", "autos", "curves"}) {
    for (const auto& entry : fs::directory_iterator(kData / dir)) {
      std::string ext = entry.path().extension().string();
      std::string text = read(entry.path());
      std::string again;
      if (ext == ".cover") {
        again = emit_cover(parse_cover(text));
      } else if (ext == ".aut") {
        again = emit_automorphism(parse_automorphism(text));
      } else if (ext == ".curves") {
        again = emit_curve_system(parse_curve_system(text));
      } else {
        continue;
      }
      ++files;
      c.expect(again == text, entry.path().filename().string() + " changes on re-serialization");
    }
  }
  std::vector<std::vector<std::string>> queries{
      {"--format", "records", "census", "--lemma-annulus", "--max-degree", "3"},
      {"--format", "records", "census", "--base", "O", "0", "0", "0", "--base", "N", "2", "0",
       "0", "--base", "O", "1", "1", "0", "--max-degree", "4", "--branch", "3"}};
  for (const auto& q : queries) {
    std::string first;
    for (const char* w : {"1", "2", "3", "4"}) {
      auto args = q;
      args.insert(args.end(), {"--workers", w});
      std::string out = run(args);
      if (first.empty()) first = out;
      c.expect(out == first, "census output differs with --workers " + std::string(w));
    }
  }
  note = std::to_string(files) + " fixture files, census with 1-4 workers";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "hyperelliptic fixture", 1.0, hyperelliptic},
      {2, "torus over Klein bottle fixture", 1.0, torus_over_klein},
      {3, "threefold simple cover fixture", 1.0, threefold},
      {4, "Schottky doubles", 1.0, schottky},
      {5, "annulus lemma census to degree 4", 60.0, lemma_census},
      {6, "cover property suite", 60.0, cover_properties},
      {7, "lifting property suite", 30.0, lifting},
      {8, "curve corpus suite", 10.0, curves},
      {9, "round-trip stability", 60.0, round_trips},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checks checks;
    std::string note;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(checks, note);
    } catch (const std::exception& e) {
      checks.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= cr.limit_seconds) {
      checks.failures.push_back("took " + std::to_string(secs) + " s, limit " +
                                std::to_string(cr.limit_seconds) + " s");
    }
    bool ok = checks.failures.empty();
    failed += !ok;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << cr.number << ": " << (ok ? "PASS" : "FAIL") << "  " << cr.title
         << " (" << secs << " s, limit " << cr.limit_seconds << " s)";
    if (!note.empty()) line << "  [" << note << "]";
    std::cout << line.str() << '\n';
    std::set<std::string> shown;
    for (const std::string& f : checks.failures) {
      if (shown.size() == 5) break;
      if (shown.insert(f).second) std::cout << "    " << f << '\n';
    }
    if (checks.failures.size() > shown.size()) {
      std::cout << "    ... " << checks.failures.size() - shown.size() << " more\n";
    }
  }
  return failed == 0 ? 0 : 1;
}
