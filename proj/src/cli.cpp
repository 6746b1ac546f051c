#include "branchcover/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "branchcover/census.hpp"
#include "branchcover/charsub.hpp"
#include "branchcover/cover.hpp"
#include "branchcover/curvesys.hpp"
#include "branchcover/error.hpp"
#include "branchcover/mcglift.hpp"

namespace bcov {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

SurfaceSig signature_arg(const std::vector<std::string>& tokens) {
  return parse_signature(join(tokens, " "));
}

// Ordered key/value report printed as `key=value` lines or one JSON line.
class Report {
 public:
  explicit Report(bool records) : records_(records) {}

  Report& add(const std::string& key, json value) {
    data_[key] = std::move(value);
    return *this;
  }

  void print(std::ostream& out) const {
    if (records_) {
      out << data_.dump() << '\n';
      return;
    }
    for (const auto& [key, value] : data_.items()) {
      if (value.is_array()) {
        for (const auto& v : value) out << key << '=' << text(v) << '\n';
      } else {
        out << key << '=' << text(value) << '\n';
      }
    }
  }

 private:
  static std::string text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  bool records_;
  json data_ = json::object();
};

std::string bh_text(const BhVerdict& v) {
  if (v.guaranteed) return "Guaranteed";
  return "NotApplicable(" + v.code + ": " + v.reason + ")";
}

std::string format_over(const std::vector<std::string>& names, const Word& w) {
  if (w.empty()) return "1";
  std::vector<std::string> parts;
  auto l = w.letters();
  for (std::size_t i = 0; i < l.size();) {
    std::size_t j = i;
    while (j < l.size() && l[j] == l[i]) ++j;
    long run = static_cast<long>(j - i) * (is_inverse(l[i]) ? -1 : 1);
    std::string tok = names.at(generator_of(l[i]));
    if (run != 1) tok += "^" + std::to_string(run);
    parts.push_back(tok);
    i = j;
  }
  return join(parts, " ");
}

std::vector<std::string> schreier_names(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("s" + std::to_string(i + 1));
  return names;
}

void print_cover(const CoverSpec& spec, bool records, std::ostream& out) {
  if (!records) {
    out << emit_cover(spec);
    return;
  }
  json j;
  j["type"] = "cover";
  if (!spec.label().empty()) j["label"] = spec.label();
  j["base"] = to_string(spec.base());
  j["branch"] = spec.branch_count();
  j["degree"] = spec.degree();
  json mono = json::object();
  const auto& names = spec.presentation().generator_names();
  for (std::size_t g = 0; g < names.size(); ++g) mono[names[g]] = to_cycle_string(spec.monodromy()[g]);
  j["monodromy"] = mono;
  json folds = json::array();
  for (const Fold& f : spec.folds()) {
    folds.push_back({{"peripheral", spec.presentation().peripherals()[f.peripheral].name},
                     {"perm", to_cycle_string(f.perm)}});
  }
  j["folds"] = folds;
  out << j.dump() << '\n';
}

// Inner monodromy for compose:
//   inner
//   degree 2
//   s1 (1 2)      (Schreier generators not listed act trivially)
std::vector<Perm> parse_inner(std::string_view text, std::size_t generator_count) {
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  int degree = -1;
  bool header = false;
  std::vector<std::optional<Perm>> perms(generator_count);
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    if (!header) {
      if (key != "inner") throw ParseError(lineno, 1, "expected 'inner'");
      header = true;
      continue;
    }
    if (key == "degree") {
      if (!(ls >> degree) || degree < 1) throw ParseError(lineno, 1, "expected 'degree <n>'");
      continue;
    }
    if (degree < 0) throw ParseError(lineno, 1, "degree must precede generator lines");
    if (key.size() < 2 || key[0] != 's') throw ParseError(lineno, 1, "unknown key '" + key + "'");
    std::size_t idx = 0;
    try {
      idx = std::stoul(key.substr(1));
    } catch (const std::exception&) {
      throw ParseError(lineno, 1, "unknown key '" + key + "'");
    }
    if (idx < 1 || idx > generator_count) {
      throw ParseError(lineno, 1, "no Schreier generator '" + key + "'");
    }
    if (perms[idx - 1]) throw ParseError(lineno, 1, "'" + key + "' given twice");
    std::string rest;
    std::getline(ls, rest);
    std::size_t col = raw.find(rest);
    try {
      perms[idx - 1] = parse_cycles(rest, static_cast<std::size_t>(degree));
    } catch (const ParseError& e) {
      throw ParseError(lineno, static_cast<int>(col) + e.column(), e.what());
    }
  }
  if (!header || degree < 0) throw ParseError(lineno + 1, 1, "missing 'inner' header or degree");
  std::vector<Perm> out;
  for (auto& p : perms) out.push_back(p ? *p : Perm::identity(static_cast<std::size_t>(degree)));
  return out;
}

json record_json(const CensusRecord& r) {
  json j;
  j["type"] = r.counterexample ? "counterexample" : "cover";
  j["base"] = to_string(r.base);
  j["branch"] = r.branch;
  j["degree"] = r.degree;
  Presentation pres(r.base, r.branch);
  json mono = json::object();
  for (std::size_t g = 0; g < r.monodromy.size(); ++g) {
    mono[pres.generator_names()[g]] = to_cycle_string(r.monodromy[g]);
  }
  j["monodromy"] = mono;
  j["total"] = to_string(r.total);
  j["fully_ramified"] = r.fully_ramified;
  if (r.regular) j["regular"] = *r.regular;
  j["bh_guaranteed"] = r.bh_guaranteed;
  return j;
}

std::string text_line(const json& j) {
  std::vector<std::string> parts{j["type"].get<std::string>()};
  for (const auto& [key, value] : j.items()) {
    if (key == "type") continue;
    if (value.is_object()) {
      for (const auto& [k, v] : value.items()) {
        parts.push_back(k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()));
      }
    } else {
      parts.push_back(key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()));
    }
  }
  return join(parts, " ");
}

int print_census(const CensusQuery& q, const CensusResult& res, bool records, std::ostream& out) {
  auto emit = [&](const json& j) { out << (records ? j.dump() : text_line(j)) << '\n'; };
  for (const CensusRecord& r : res.records) emit(record_json(r));
  long long covers = 0;
  for (const CensusCell& c : res.cells) {
    covers += c.covers;
    json j;
    j["type"] = "cell";
    j["base"] = to_string(c.base);
    j["branch"] = c.branch;
    j["degree"] = c.degree;
    j["covers"] = c.covers;
    if (!q.lemma_annulus) {
      j["fully_ramified"] = c.fully_ramified;
      j["regular"] = c.regular;
      j["bh_guaranteed"] = c.bh_guaranteed;
    }
    json totals = json::object();
    for (const auto& [k, v] : c.totals) totals["total " + k] = v;
    j["totals"] = totals;
    emit(j);
  }
  json s;
  s["type"] = "summary";
  if (q.lemma_annulus) s["lemma"] = "annulus";
  s["complete"] = res.complete;
  if (!res.complete) s["reason"] = res.stop_reason;
  s["nodes"] = res.nodes;
  s["covers"] = covers;
  s["records"] = res.records.size();
  if (q.lemma_annulus) s["counterexamples"] = res.counterexamples;
  emit(s);
  if (!res.complete) return 2;
  return q.lemma_annulus && res.counterexamples > 0 ? 1 : 0;
}

json bigon_json(const Bigon& b) {
  return {{"face", b.face},       {"curves", std::to_string(b.curve_a) + "," + std::to_string(b.curve_b)},
          {"edges", std::to_string(b.edge_a) + "," + std::to_string(b.edge_b)},
          {"vertices", std::to_string(b.vertex_u) + "," + std::to_string(b.vertex_v)}};
}

std::string bigon_text(const Bigon& b) {
  return "face " + std::to_string(b.face) + " curves " + std::to_string(b.curve_a) + "," +
         std::to_string(b.curve_b) + " edges " + std::to_string(b.edge_a) + "," +
         std::to_string(b.edge_b) + " vertices " + std::to_string(b.vertex_u) + "," +
         std::to_string(b.vertex_v);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branched covers of finite-type surfaces", "branchcover"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "records"}));

  std::function<int()> action;
  auto records = [&] { return format == "records"; };

  std::string file, second;
  std::vector<std::string> word_tokens, sig_tokens;
  int modulus = 0;

  auto load_cover = [&] { return parse_cover(read_file(file)); };

  auto* check = app.add_subcommand("check", "Validate a cover and report its invariants");
  check->add_option("file", file)->required();
  check->callback([&] {
    action = [&] {
      CoverSpec spec = load_cover();
      auto diags = validate(spec);
      Report r(records());
      if (!spec.label().empty()) r.add("label", spec.label());
      r.add("base", to_string(spec.base())).add("branch", spec.branch_count()).add("degree", spec.degree());
      if (!diags.empty()) {
        r.add("valid", false);
        json list = json::array();
        for (const auto& d : diags) list.push_back(d.code + ": " + d.message);
        r.add("diagnostic", list);
        r.print(out);
        return 1;
      }
      SurfaceSig total = classify_total(spec);
      json ram = json::array();
      const auto& pers = spec.presentation().peripherals();
      auto prof = ramification_profile(spec);
      std::size_t bi = 0;
      for (const auto& p : pers) {
        if (p.kind != PeripheralKind::Branch) continue;
        std::vector<std::string> lens;
        for (int c : prof[bi]) lens.push_back(std::to_string(c));
        ram.push_back(p.name + ":" + join(lens, "+"));
        ++bi;
      }
      r.add("valid", true)
          .add("total", to_string(total))
          .add("euler", total_euler(spec))
          .add("ramification", ram)
          .add("fully_ramified", is_fully_ramified(spec))
          .add("regular", is_regular(spec))
          .add("deck", deck_group(spec).size())
          .add("bh", bh_text(bh_guaranteed(spec)));
      r.print(out);
      return 0;
    };
  });

  auto* classify = app.add_subcommand("classify", "Topological type of the total surface");
  classify->add_option("file", file)->required();
  classify->callback([&] {
    action = [&] {
      CoverSpec spec = load_cover();
      require_valid(spec);
      SurfaceSig total = classify_total(spec);
      Report(records())
          .add("total", to_string(total))
          .add("euler", euler_characteristic(total))
          .add("orientable", total.orientable)
          .print(out);
      return 0;
    };
  });

  auto* deck = app.add_subcommand("deck", "Deck transformation group");
  deck->add_option("file", file)->required();
  deck->callback([&] {
    action = [&] {
      CoverSpec spec = load_cover();
      require_valid(spec);
      auto group = deck_group(spec);
      json elems = json::array();
      for (const Perm& p : group) elems.push_back(to_cycle_string(p));
      Report(records()).add("deck", group.size()).add("element", elems).print(out);
      return 0;
    };
  });

  auto* bh = app.add_subcommand("bh-check", "Whether the Birman-Hilden property is guaranteed");
  bh->add_option("file", file)->required();
  bh->callback([&] {
    action = [&] {
      CoverSpec spec = load_cover();
      require_valid(spec);
      BhVerdict v = bh_guaranteed(spec);
      Report r(records());
      r.add("bh", v.guaranteed ? "Guaranteed" : "NotApplicable");
      if (!v.guaranteed) r.add("code", v.code).add("reason", v.reason);
      r.print(out);
      return 0;
    };
  });

  auto* lift_curve_cmd = app.add_subcommand("lift-curve", "Preimage components of a loop");
  lift_curve_cmd->add_option("file", file)->required();
  lift_curve_cmd->add_option("word", word_tokens, "Loop as a word in the base generators")->required();
  lift_curve_cmd->callback([&] {
    action = [&] {
      CoverSpec spec = load_cover();
      require_valid(spec);
      Word w = spec.presentation().parse_word(join(word_tokens, " "));
      auto lens = lift_curve(spec, w);
      json arr = json::array();
      std::vector<std::string> parts;
      for (int l : lens) {
        arr.push_back(l);
        parts.push_back(std::to_string(l));
      }
      Report r(records());
      r.add("components", lens.size());
      if (records()) {
        r.add("lengths", arr);
      } else {
        r.add("lengths", join(parts, " "));
      }
      r.print(out);
      return 0;
    };
  });

  auto* lift_class_cmd = app.add_subcommand("lift-class", "Lift a mapping class through a cover");
  lift_class_cmd->add_option("file", file)->required();
  lift_class_cmd->add_option("automorphism", second)->required();
  lift_class_cmd->callback([&] {
    action = [&] {
      CoverSpec spec = load_cover();
      require_valid(spec);
      Automorphism phi = parse_automorphism(read_file(second));
      Report r(records());
      r.add("class", phi.name());
      if (!is_liftable(spec, phi)) {
        r.add("liftable", false).print(out);
        return 0;
      }
      LiftedClass lifted = lift(spec, phi);
      auto names = schreier_names(lifted.images.size());
      json images = json::array();
      for (std::size_t i = 0; i < lifted.images.size(); ++i) {
        images.push_back(names[i] + " -> " + format_over(names, lifted.images[i]));
      }
      r.add("liftable", true).add("relabeling", to_cycle_string(lifted.relabeling)).add("image", images);
      r.print(out);
      return 0;
    };
  });

  auto* dbl = app.add_subcommand("double", "Orientable double cover or Schottky double");
  dbl->require_subcommand(1);
  for (const char* kind : {"orientable", "schottky"}) {
    auto* sub = dbl->add_subcommand(kind, std::string(kind) + " double of a surface");
    sub->add_option("signature", sig_tokens, "O|N genus punctures boundary")->required()->expected(4);
    std::string k = kind;
    sub->callback([&, k] {
      action = [&, k] {
        SurfaceSig sig = signature_arg(sig_tokens);
        CoverSpec spec = k == "orientable" ? orientable_double_cover(sig) : schottky_double(sig);
        print_cover(spec, records(), out);
        return 0;
      };
    });
  }

  auto* hom = app.add_subcommand("homology-cover", "Cover with deck group H1(X; Z/n)");
  std::vector<std::string> hom_tokens;
  hom->add_option("arguments", hom_tokens, "O|N genus punctures boundary, then the modulus n")
      ->required()
      ->expected(5);
  hom->callback([&] {
    action = [&] {
      sig_tokens.assign(hom_tokens.begin(), hom_tokens.begin() + 4);
      try {
        std::size_t used = 0;
        modulus = std::stoi(hom_tokens[4], &used);
        if (used != hom_tokens[4].size()) throw std::invalid_argument("modulus");
      } catch (const std::exception&) {
        throw Error("the modulus must be an integer, got '" + hom_tokens[4] + "'");
      }
      print_cover(homology_cover(signature_arg(sig_tokens), modulus), records(), out);
      return 0;
    };
  });

  auto* comp = app.add_subcommand("compose", "Stack a cover of the total surface on a cover");
  comp->add_option("outer", file)->required();
  comp->add_option("inner", second)->required();
  comp->callback([&] {
    action = [&] {
      CoverSpec outer = load_cover();
      require_valid(outer);
      SchreierGraph sg = schreier(outer);
      auto inner = parse_inner(read_file(second), sg.generators().size());
      print_cover(compose(outer, inner), records(), out);
      return 0;
    };
  });

  CensusQuery query;
  query.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::string> base_tokens, total_tokens;
  bool no_pruning = false, want_fr = false, want_regular = false, want_bh = false;
  auto* census = app.add_subcommand("census", "Enumerate covers up to relabeling of sheets");
  census->add_flag("--lemma-annulus", query.lemma_annulus,
                   "Bases with two boundary circles; report covers by the closed annulus");
  census->add_option("--base", base_tokens, "Base signature (repeatable)")->expected(4, 4 * 64);
  census->add_option("--max-degree", query.max_degree)->required();
  census->add_option("--min-degree", query.min_degree);
  census->add_option("--branch", query.max_branch, "Maximum number of branch points");
  census->add_option("--min-branch", query.min_branch);
  census->add_flag("--fully-ramified", want_fr);
  census->add_flag("--regular", want_regular);
  census->add_flag("--bh-guaranteed", want_bh);
  census->add_option("--total", total_tokens, "Total signature filter")->expected(4);
  census->add_option("--budget-nodes", query.budget_nodes);
  census->add_option("--budget-seconds", query.budget_seconds);
  census->add_option("--workers", query.workers);
  census->add_flag("--no-pruning", no_pruning, "Generate every tuple and keep canonical ones");
  census->callback([&] {
    action = [&] {
      CensusQuery q = query;
      if (q.lemma_annulus) {
        CensusQuery lemma = lemma_annulus_query(q.max_degree);
        q.bases = lemma.bases;
        if (!census->count("--branch")) q.max_branch = lemma.max_branch;
      }
      if (base_tokens.size() % 4 != 0) throw ValidationError("invalid-query", "--base takes four tokens");
      for (std::size_t i = 0; i < base_tokens.size(); i += 4) {
        q.bases.push_back(signature_arg({base_tokens.begin() + i, base_tokens.begin() + i + 4}));
      }
      if (want_fr) q.fully_ramified = true;
      if (want_regular) q.regular = true;
      if (want_bh) q.bh_guaranteed = true;
      if (!total_tokens.empty()) q.total = signature_arg(total_tokens);
      q.pruning = !no_pruning;
      return print_census(q, run_census(q), records(), out);
    };
  });

  auto* bigon = app.add_subcommand("bigon", "Bigon detection and removal");
  bigon->require_subcommand(1);
  auto* bfind = bigon->add_subcommand("find", "List bigons");
  bfind->add_option("file", file)->required();
  bfind->callback([&] {
    action = [&] {
      CurveSystem cs = parse_curve_system(read_file(file));
      auto bigons = find_bigons(cs);
      json list = json::array();
      for (const Bigon& b : bigons) list.push_back(records() ? bigon_json(b) : json(bigon_text(b)));
      Report(records()).add("bigons", bigons.size()).add("bigon", list).print(out);
      return 0;
    };
  });
  auto* breduce = bigon->add_subcommand("reduce", "Remove bigons until none is left");
  breduce->add_option("file", file)->required();
  breduce->callback([&] {
    action = [&] {
      CurveSystem cs = minimal_position(parse_curve_system(read_file(file)));
      if (records()) {
        out << json{{"type", "curvesystem"}, {"text", emit_curve_system(cs)}}.dump() << '\n';
      } else {
        out << emit_curve_system(cs);
      }
      return 0;
    };
  });
  auto* breport = bigon->add_subcommand("report", "Crossings before and after bigon removal");
  breport->add_option("file", file)->required();
  breport->callback([&] {
    action = [&] {
      CurveSystem cs = parse_curve_system(read_file(file));
      CurveSystem reduced = minimal_position(cs);
      auto ids = cs.curves();
      json pairs = json::array();
      for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
          std::string key = std::to_string(ids[a]) + "," + std::to_string(ids[b]);
          int before = crossing_count(cs, ids[a], ids[b]);
          int after = crossing_count(reduced, ids[a], ids[b]);
          int gi = geometric_intersection(cs, ids[a], ids[b]);
          if (records()) {
            pairs.push_back({{"pair", key}, {"crossings", before}, {"reduced", after}, {"intersection", gi}});
          } else {
            pairs.push_back(key + " crossings " + std::to_string(before) + " reduced " +
                            std::to_string(after) + " intersection " + std::to_string(gi));
          }
        }
      }
      Report(records())
          .add("bigons", find_bigons(cs).size())
          .add("vertices", cs.vertex_count())
          .add("reduced_vertices", reduced.vertex_count())
          .add("pair", pairs)
          .print(out);
      return 0;
    };
  });

  auto* alex = app.add_subcommand("alexander", "Alexander-system conditions for a curve system");
  alex->add_option("file", file)->required();
  alex->callback([&] {
    action = [&] {
      CurveSystem cs = parse_curve_system(read_file(file));
      AlexanderReport rep = alexander_report(cs);
      json bigon_pairs = json::array(), triples = json::array(), distinct = json::array();
      for (auto [a, b] : rep.bigon_pairs) bigon_pairs.push_back(std::to_string(a) + "," + std::to_string(b));
      for (const auto& t : rep.triples) {
        triples.push_back(std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]));
      }
      for (const auto& d : rep.distinct) {
        std::string pair = std::to_string(d.first) + "," + std::to_string(d.second);
        if (records()) {
          distinct.push_back({{"pair", pair}, {"status", d.status}, {"reasons", d.reasons}});
        } else {
          distinct.push_back(pair + " " + d.status + (d.reasons.empty() ? "" : ": " + join(d.reasons, "; ")));
        }
      }
      Report(records())
          .add("minimal_position", rep.minimal_position)
          .add("bigon_pair", bigon_pairs)
          .add("no_triple", rep.no_triple)
          .add("triple", triples)
          .add("transversal", rep.transversal)
          .add("locally_finite", rep.locally_finite)
          .add("fills", rep.fills)
          .add("distinct", distinct)
          .add("warning", rep.warnings)
          .print(out);
      return 0;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    return action ? action() : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace bcov
