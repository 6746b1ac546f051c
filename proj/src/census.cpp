#include "branchcover/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <tuple>
#include <thread>

#include "branchcover/error.hpp"

namespace bcov {

namespace {

using Index = std::uint16_t;

// Sym(d) with elements numbered by the lexicographic rank of their image
// arrays, so index order is the canonical permutation order.
struct SymTables {
  int d = 0;
  int n = 0;
  std::vector<Perm> perms;
  std::vector<Index> mul, conj, inv;
  std::vector<std::uint8_t> cycles, fixed;
  std::vector<std::uint8_t> images;  // n * d

  Index times(Index a, Index b) const { return mul[a * n + b]; }
  Index conjugate(Index g, Index a) const { return conj[g * n + a]; }
  int image(Index a, int i) const { return images[a * d + i]; }
};

int lex_rank(std::span<const int> img) {
  int d = static_cast<int>(img.size()), rank = 0;
  for (int i = 0; i < d; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < d; ++j) smaller += img[j] < img[i];
    rank = rank * (d - i) + smaller;
  }
  return rank;
}

SymTables build_tables(int d) {
  SymTables t;
  t.d = d;
  t.perms = all_perms(static_cast<std::size_t>(d));
  t.n = static_cast<int>(t.perms.size());
  const int n = t.n;
  auto idx = [&](const Perm& p) { return static_cast<Index>(lex_rank(p.images())); };
  t.mul.resize(static_cast<std::size_t>(n) * n);
  t.conj.resize(static_cast<std::size_t>(n) * n);
  t.inv.resize(n);
  for (int a = 0; a < n; ++a) {
    t.inv[a] = idx(t.perms[a].inverse());
    t.cycles.push_back(static_cast<std::uint8_t>(t.perms[a].cycle_count()));
    int f = 0;
    for (int i = 0; i < d; ++i) {
      f += t.perms[a].apply(i) == i;
      t.images.push_back(static_cast<std::uint8_t>(t.perms[a].apply(i)));
    }
    t.fixed.push_back(static_cast<std::uint8_t>(f));
    for (int b = 0; b < n; ++b) {
      t.mul[a * n + b] = idx(t.perms[a] * t.perms[b]);
      t.conj[a * n + b] = idx(t.perms[b].relabeled(t.perms[a]));
    }
  }
  return t;
}

struct CompiledWord {
  std::vector<std::pair<int, bool>> letters;  // generator, inverse
  // cut[k]: length of the longest prefix using only generators below k.
  std::vector<int> cut;
};

// Only cycle types and triviality of word images are used, so a word may be
// replaced by its inverse; the orientation whose letters appear in the
// order the search fixes generators is kept.
CompiledWord compile(const Word& w, int rank) {
  auto build = [rank](const Word& v) {
    CompiledWord c;
    for (Letter l : v.letters()) c.letters.emplace_back(generator_of(l), is_inverse(l));
    for (int k = 0; k <= rank; ++k) {
      int n = 0;
      while (n < static_cast<int>(c.letters.size()) && c.letters[n].first < k) ++n;
      c.cut.push_back(n);
    }
    return c;
  };
  CompiledWord a = build(w), b = build(w.inverse());
  long sa = 0, sb = 0;
  for (int k = 0; k <= rank; ++k) {
    sa += a.cut[k];
    sb += b.cut[k];
  }
  return sb > sa ? b : a;
}

struct Cell {
  SurfaceSig base;
  int branch = 0;
  int degree = 0;
  int rank = 0;
  int base_euler = 0;
  // Peripheral words, then the relator when the base is closed.
  std::vector<CompiledWord> words;
  std::vector<PeripheralKind> peripheral_kinds;
  bool has_relator = false;
  std::vector<bool> branch_generator;  // free generator that is a branch peripheral
  std::vector<int> orientation;        // per generator
  const SymTables* tables = nullptr;
};

// Search state after the first k generators are fixed: partial products of
// every word, and the sheet partition with a relative orientation colouring.
struct LevelState {
  std::vector<Index> prod;
  std::array<std::int8_t, kCensusMaxDegree> comp{}, colour{};
  bool conflict = false;
};

void start_state(const Cell& cell, LevelState& s) {
  s.prod.assign(cell.words.size(), 0);
  for (int i = 0; i < cell.degree; ++i) {
    s.comp[i] = static_cast<std::int8_t>(i);
    s.colour[i] = 0;
  }
  s.conflict = false;
}

void advance(const Cell& cell, int k, const std::vector<Index>& tuple, const LevelState& from,
             LevelState& to) {
  const SymTables& t = *cell.tables;
  to.prod.resize(from.prod.size());
  for (std::size_t w = 0; w < cell.words.size(); ++w) {
    const CompiledWord& cw = cell.words[w];
    Index acc = from.prod[w];
    for (int pos = cw.cut[k]; pos < cw.cut[k + 1]; ++pos) {
      auto [g, inverse] = cw.letters[pos];
      acc = t.times(acc, inverse ? t.inv[tuple[g]] : tuple[g]);
    }
    to.prod[w] = acc;
  }
  to.comp = from.comp;
  to.colour = from.colour;
  to.conflict = from.conflict;
  const int d = cell.degree, parity = cell.orientation[k];
  const Index x = tuple[k];
  for (int i = 0; i < d; ++i) {
    int j = t.image(x, i);
    int want = to.colour[i] ^ parity;
    if (to.comp[i] == to.comp[j]) {
      if (to.colour[j] != want) to.conflict = true;
      continue;
    }
    std::int8_t old = to.comp[j];
    int flip = to.colour[j] ^ want;
    for (int m = 0; m < d; ++m) {
      if (to.comp[m] == old) {
        to.comp[m] = to.comp[i];
        to.colour[m] = static_cast<std::int8_t>(to.colour[m] ^ flip);
      }
    }
  }
}

struct Unit {
  int cell = 0;
  std::vector<Index> prefix;
  std::vector<Index> stab;
};

struct PendingRecord {
  int cell = 0;
  std::vector<Index> tuple;
  CensusRecord record;
};

using TotalKey = std::tuple<bool, int, int, int>;

struct UnitResult {
  CensusCell tally;
  std::map<TotalKey, long long> totals;
  std::vector<PendingRecord> records;
  long long nodes = 0;
  long long counterexamples = 0;
};

class Search {
 public:
  Search(const CensusQuery& q, const std::vector<Cell>& cells)
      : query_(q), cells_(cells), start_(std::chrono::steady_clock::now()) {}

  std::atomic<bool> stop{false};
  std::string stop_reason;

  void run_unit(const Unit& u, UnitResult& out) {
    const Cell& cell = cells_[u.cell];
    out.tally.base = cell.base;
    out.tally.branch = cell.branch;
    out.tally.degree = cell.degree;
    std::vector<Index> tuple = u.prefix;
    tuple.resize(cell.rank);
    std::vector<std::vector<Index>> stabs(cell.rank + 1);
    std::vector<LevelState> states(cell.rank + 1);
    start_state(cell, states[0]);
    const int depth = static_cast<int>(u.prefix.size());
    for (int k = 0; k < depth; ++k) advance(cell, k, tuple, states[k], states[k + 1]);
    stabs[depth] = u.stab;
    descend(cell, depth, tuple, stabs, states, out);
    flush(out);
  }

  bool count_node(UnitResult& out) {
    ++out.nodes;
    if (++pending_local_ >= 4096) return flush(out);
    return !stop.load(std::memory_order_relaxed);
  }

 private:
  bool flush(UnitResult&) {
    long long total = nodes_.fetch_add(pending_local_) + pending_local_;
    pending_local_ = 0;
    if (total > query_.budget_nodes) halt("node-budget");
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (elapsed > query_.budget_seconds) halt("wall-clock");
    return !stop.load();
  }

  void halt(const char* reason) {
    std::lock_guard lock(mu_);
    if (!stop.load()) {
      stop_reason = reason;
      stop.store(true);
    }
  }

  void descend(const Cell& cell, int level, std::vector<Index>& tuple,
               std::vector<std::vector<Index>>& stabs, std::vector<LevelState>& states,
               UnitResult& out) {
    if (stop.load(std::memory_order_relaxed)) return;
    if (level == cell.rank) {
      if (!query_.pruning && !full_canonical(cell, tuple)) return;
      evaluate(cell, tuple, states[level], out);
      return;
    }
    const SymTables& t = *cell.tables;
    for (int x = cell.branch_generator[level] ? 1 : 0; x < t.n; ++x) {
      if (!count_node(out)) return;
      tuple[level] = static_cast<Index>(x);
      if (query_.pruning) {
        auto& next = stabs[level + 1];
        next.clear();
        bool ok = true;
        for (Index g : stabs[level]) {
          Index c = t.conjugate(g, static_cast<Index>(x));
          if (c < x) {
            ok = false;
            break;
          }
          if (c == x) next.push_back(g);
        }
        if (!ok) continue;
      }
      advance(cell, level, tuple, states[level], states[level + 1]);
      descend(cell, level + 1, tuple, stabs, states, out);
    }
  }

  // Thread-local accumulation of nodes not yet published.
  static thread_local long long pending_local_;

  bool full_canonical(const Cell& cell, const std::vector<Index>& tuple) const {
    const SymTables& t = *cell.tables;
    for (int g = 1; g < t.n; ++g) {
      for (int k = 0; k < cell.rank; ++k) {
        Index c = t.conjugate(static_cast<Index>(g), tuple[k]);
        if (c < tuple[k]) return false;
        if (c > tuple[k]) break;
      }
    }
    return true;
  }

  void evaluate(const Cell& cell, const std::vector<Index>& tuple, const LevelState& s,
                UnitResult& out) {
    const SymTables& t = *cell.tables;
    const int d = t.d;
    if (cell.has_relator && s.prod.back() != 0) return;
    for (int i = 1; i < d; ++i) {
      if (s.comp[i] != s.comp[0]) return;
    }
    int total_euler = d * (cell.base_euler - cell.branch);
    int punctures = 0, boundary = 0;
    bool fully_ramified = true;
    for (std::size_t j = 0; j < cell.peripheral_kinds.size(); ++j) {
      Index p = s.prod[j];
      switch (cell.peripheral_kinds[j]) {
        case PeripheralKind::Puncture: punctures += t.cycles[p]; break;
        case PeripheralKind::Boundary: boundary += t.cycles[p]; break;
        case PeripheralKind::Branch:
          if (p == 0) return;
          total_euler += t.cycles[p];
          if (t.fixed[p] > 0) fully_ramified = false;
          break;
      }
    }
    SurfaceSig total = signature_from_euler(!s.conflict, total_euler, punctures, boundary);
    out.tally.covers++;
    out.totals[{total.orientable, total.genus, total.punctures, total.boundary}]++;

    const SurfaceSig annulus{true, 0, 0, 2};
    if (query_.lemma_annulus) {
      if (total == annulus && !(cell.base == annulus && cell.branch == 0)) {
        out.counterexamples++;
        out.records.push_back({cell_index(cell), tuple, make_record(cell, tuple, total, fully_ramified, std::nullopt, false, true)});
      }
      return;
    }
    bool regular = is_regular_tuple(cell, tuple);
    bool bh = cell.base.boundary == 0 && total.boundary == 0 && total_euler < 0 && fully_ramified;
    if (fully_ramified) out.tally.fully_ramified++;
    if (regular) out.tally.regular++;
    if (bh) out.tally.bh_guaranteed++;
    if (query_.fully_ramified && *query_.fully_ramified != fully_ramified) return;
    if (query_.regular && *query_.regular != regular) return;
    if (query_.bh_guaranteed && *query_.bh_guaranteed != bh) return;
    if (query_.total && *query_.total != total) return;
    out.records.push_back({cell_index(cell), tuple, make_record(cell, tuple, total, fully_ramified, regular, bh, false)});
  }

  int cell_index(const Cell& cell) const { return static_cast<int>(&cell - cells_.data()); }

  static bool is_regular_tuple(const Cell& cell, const std::vector<Index>& tuple) {
    const SymTables& t = *cell.tables;
    const int d = t.d;
    for (int k = 1; k < d; ++k) {
      int delta[kCensusMaxDegree];
      std::fill(delta, delta + d, -1);
      delta[0] = k;
      int stack[kCensusMaxDegree], top = 0;
      stack[top++] = 0;
      bool ok = true;
      while (top > 0 && ok) {
        int i = stack[--top];
        for (int g = 0; g < cell.rank && ok; ++g) {
          int j = t.image(tuple[g], i), img = t.image(tuple[g], delta[i]);
          if (delta[j] < 0) {
            delta[j] = img;
            stack[top++] = j;
          } else if (delta[j] != img) {
            ok = false;
          }
        }
      }
      if (!ok) return false;
    }
    return true;
  }

  static CensusRecord make_record(const Cell& cell, const std::vector<Index>& tuple,
                                  const SurfaceSig& total, bool fully_ramified,
                                  std::optional<bool> regular, bool bh, bool counterexample) {
    CensusRecord r;
    r.base = cell.base;
    r.branch = cell.branch;
    r.degree = cell.degree;
    for (Index x : tuple) r.monodromy.push_back(cell.tables->perms[x]);
    r.total = total;
    r.fully_ramified = fully_ramified;
    r.regular = regular;
    r.bh_guaranteed = bh;
    r.counterexample = counterexample;
    return r;
  }

  const CensusQuery& query_;
  const std::vector<Cell>& cells_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<long long> nodes_{0};
  std::mutex mu_;

  friend std::vector<Unit> make_units(Search&, const std::vector<Cell>&, UnitResult&);
};

thread_local long long Search::pending_local_ = 0;

// Canonical (or, without pruning, all admissible) prefixes of length up to
// two; each is one unit of parallel work.
std::vector<Unit> make_units(Search& search, const std::vector<Cell>& cells, UnitResult& acct) {
  std::vector<Unit> units;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    const SymTables& t = *cell.tables;
    const int depth = std::min(cell.rank, 2);
    std::vector<Index> all(t.n);
    for (int g = 0; g < t.n; ++g) all[g] = static_cast<Index>(g);
    std::vector<Unit> frontier{{static_cast<int>(c), {}, all}};
    for (int level = 0; level < depth; ++level) {
      std::vector<Unit> next;
      for (const Unit& u : frontier) {
        for (int x = cell.branch_generator[level] ? 1 : 0; x < t.n; ++x) {
          search.count_node(acct);
          Unit child{u.cell, u.prefix, {}};
          child.prefix.push_back(static_cast<Index>(x));
          bool ok = true;
          if (search.query_.pruning) {
            for (Index g : u.stab) {
              Index cx = t.conjugate(g, static_cast<Index>(x));
              if (cx < x) {
                ok = false;
                break;
              }
              if (cx == x) child.stab.push_back(g);
            }
          }
          if (ok) next.push_back(std::move(child));
        }
      }
      frontier = std::move(next);
    }
    for (Unit& u : frontier) units.push_back(std::move(u));
  }
  return units;
}

}  // namespace

std::vector<SurfaceSig> lemma_annulus_bases() {
  std::vector<SurfaceSig> out;
  for (int g = 0; g <= 2; ++g) out.push_back({true, g, 0, 2});
  for (int k = 1; k <= 3; ++k) out.push_back({false, k, 0, 2});
  return out;
}

CensusQuery lemma_annulus_query(int max_degree) {
  CensusQuery q;
  q.bases = lemma_annulus_bases();
  q.max_degree = max_degree;
  q.max_branch = 2;
  q.lemma_annulus = true;
  return q;
}

bool is_canonical_tuple(const std::vector<Perm>& tuple) {
  if (tuple.empty()) return true;
  const std::size_t d = tuple.front().degree();
  for (const Perm& g : all_perms(d)) {
    for (const Perm& p : tuple) {
      Perm c = p.relabeled(g);
      if (c < p) return false;
      if (p < c) break;
    }
  }
  return true;
}

CensusResult run_census(const CensusQuery& query) {
  if (query.bases.empty()) throw ValidationError("invalid-query", "no base surfaces given");
  if (query.min_degree < 1 || query.max_degree < query.min_degree ||
      query.max_degree > kCensusMaxDegree) {
    throw ValidationError("invalid-query", "degree bounds must satisfy 1 <= min <= max <= " +
                                               std::to_string(kCensusMaxDegree));
  }
  if (query.min_branch < 0 || query.max_branch < query.min_branch) {
    throw ValidationError("invalid-query", "branch bounds must satisfy 0 <= min <= max");
  }
  if (query.budget_nodes <= 0 || query.budget_seconds <= 0) {
    throw ValidationError("invalid-query", "budgets must be positive");
  }
  std::vector<SymTables> tables;
  for (int d = 1; d <= query.max_degree; ++d) tables.push_back(build_tables(d));

  std::vector<Cell> cells;
  for (const SurfaceSig& base : query.bases) {
    validate(base);
    for (int b = query.min_branch; b <= query.max_branch; ++b) {
      Presentation pres(base, b);
      for (int d = query.min_degree; d <= query.max_degree; ++d) {
        Cell c;
        c.base = base;
        c.branch = b;
        c.degree = d;
        c.rank = pres.rank();
        c.base_euler = euler_characteristic(base);
        c.branch_generator.assign(c.rank, false);
        for (const Peripheral& p : pres.peripherals()) {
          c.words.push_back(compile(p.word, c.rank));
          c.peripheral_kinds.push_back(p.kind);
          if (p.kind == PeripheralKind::Branch && p.word.length() == 1) {
            c.branch_generator[generator_of(p.word.letters()[0])] = true;
          }
        }
        if (pres.relator()) {
          c.words.push_back(compile(*pres.relator(), c.rank));
          c.has_relator = true;
        }
        for (int g = 0; g < c.rank; ++g) c.orientation.push_back(pres.orientation_bit(g));
        c.tables = &tables[d - 1];
        cells.push_back(std::move(c));
      }
    }
  }

  Search search(query, cells);
  UnitResult setup;
  std::vector<Unit> units = make_units(search, cells, setup);
  std::vector<UnitResult> results(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= units.size() || search.stop.load()) break;
      search.run_unit(units[i], results[i]);
    }
  };
  const int workers = std::max(1, query.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  CensusResult out;
  for (const Cell& c : cells) out.cells.push_back({c.base, c.branch, c.degree, 0, 0, 0, 0, {}});
  out.nodes = setup.nodes;
  std::vector<PendingRecord> pending;
  for (std::size_t i = 0; i < units.size(); ++i) {
    UnitResult& r = results[i];
    CensusCell& cell = out.cells[units[i].cell];
    cell.covers += r.tally.covers;
    cell.fully_ramified += r.tally.fully_ramified;
    cell.regular += r.tally.regular;
    cell.bh_guaranteed += r.tally.bh_guaranteed;
    for (auto& [k, v] : r.totals) {
      auto [o, g, p, b] = k;
      cell.totals[to_string(SurfaceSig{o, g, p, b})] += v;
    }
    out.nodes += r.nodes;
    out.counterexamples += r.counterexamples;
    for (auto& p : r.records) pending.push_back(std::move(p));
  }
  std::sort(pending.begin(), pending.end(), [](const PendingRecord& a, const PendingRecord& b) {
    return std::tie(a.cell, a.tuple) < std::tie(b.cell, b.tuple);
  });
  for (auto& p : pending) out.records.push_back(std::move(p.record));
  out.complete = !search.stop.load();
  out.stop_reason = search.stop_reason;
  return out;
}

}  // namespace bcov
