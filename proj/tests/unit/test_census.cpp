#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "branchcover/census.hpp"
#include "branchcover/cover.hpp"
#include "branchcover/error.hpp"
#include "oracles.hpp"

using namespace bcov;
namespace bt = bcov::testing;

namespace {

CensusQuery small_query(std::vector<SurfaceSig> bases, int max_degree, int max_branch) {
  CensusQuery q;
  q.bases = std::move(bases);
  q.max_degree = max_degree;
  q.max_branch = max_branch;
  return q;
}

const std::vector<SurfaceSig> kSmallBases{
    {true, 0, 0, 2}, {true, 0, 3, 0}, {true, 1, 0, 0}, {false, 1, 0, 2},
    {false, 2, 0, 0}, {true, 0, 0, 0}, {false, 1, 1, 0}};

}  // namespace

TEST_CASE("census records match a brute-force sweep") {
  CensusQuery q = small_query(kSmallBases, 3, 2);
  CensusResult r = run_census(q);
  REQUIRE(r.complete);
  std::map<std::tuple<std::string, int, int>, std::set<std::vector<Perm>>> got;
  for (const CensusRecord& rec : r.records) {
    got[{to_string(rec.base), rec.branch, rec.degree}].insert(rec.monodromy);
    CHECK(is_canonical_tuple(rec.monodromy));
  }
  for (const SurfaceSig& base : kSmallBases) {
    for (int m = 0; m <= 2; ++m) {
      for (int d = 1; d <= 3; ++d) {
        INFO(to_string(base), " branch ", m, " degree ", d);
        auto want = bt::brute_force_classes(base, m, d);
        CHECK(got[{to_string(base), m, d}] == want);
      }
    }
  }
}

TEST_CASE("census record predicates agree with the cover module") {
  CensusResult r = run_census(small_query(kSmallBases, 3, 2));
  for (const CensusRecord& rec : r.records) {
    CoverSpec s(rec.base, rec.branch, rec.degree, rec.monodromy);
    REQUIRE(validate(s).empty());
    CHECK(rec.total == classify_total(s));
    CHECK(rec.fully_ramified == is_fully_ramified(s));
    REQUIRE(rec.regular);
    CHECK(*rec.regular == is_regular(s));
    CHECK(rec.bh_guaranteed == bh_guaranteed(s).guaranteed);
  }
}

TEST_CASE("pruning is sound") {
  CensusQuery q = small_query(kSmallBases, 3, 2);
  CensusResult pruned = run_census(q);
  q.pruning = false;
  CensusResult full = run_census(q);
  CHECK(pruned.cells == full.cells);
  CHECK(pruned.records == full.records);
  CHECK(pruned.nodes < full.nodes);

  CensusQuery lemma = lemma_annulus_query(3);
  CensusResult a = run_census(lemma);
  lemma.pruning = false;
  CensusResult b = run_census(lemma);
  CHECK(a.cells == b.cells);
  CHECK(a.counterexamples == 0);
  CHECK(b.counterexamples == 0);
}

TEST_CASE("worker count does not change the result") {
  CensusQuery q = small_query(kSmallBases, 4, 1);
  CensusResult one = run_census(q);
  for (int w : {2, 3, 8}) {
    q.workers = w;
    CensusResult many = run_census(q);
    CHECK(many.cells == one.cells);
    CHECK(many.records == one.records);
    CHECK(many.nodes == one.nodes);
  }
}

TEST_CASE("hyperelliptic record in the fully ramified sphere census") {
  CensusQuery q = small_query({{true, 0, 0, 0}}, 2, 6);
  q.fully_ramified = true;
  CensusResult r = run_census(q);
  std::vector<Perm> hyp(5, Perm(std::vector<int>{1, 0}));
  bool found = std::any_of(r.records.begin(), r.records.end(), [&](const CensusRecord& rec) {
    return rec.branch == 6 && rec.degree == 2 && rec.monodromy == hyp;
  });
  CHECK(found);
  for (const CensusRecord& rec : r.records) CHECK(rec.fully_ramified);
}

TEST_CASE("degree one census") {
  CensusResult r = run_census(small_query(kSmallBases, 1, 2));
  for (const CensusRecord& rec : r.records) {
    CHECK(rec.degree == 1);
    CHECK(rec.branch == 0);
    CHECK(rec.total == rec.base);
    CHECK(rec.fully_ramified);
    CHECK(rec.regular.value_or(false));
  }
  CHECK(r.records.size() == kSmallBases.size());
}

TEST_CASE("budgets and query validation") {
  CensusQuery q = lemma_annulus_query(4);
  q.budget_nodes = 1000;
  CensusResult r = run_census(q);
  CHECK(!r.complete);
  CHECK(r.stop_reason == "node-budget");

  CensusQuery bad = small_query(kSmallBases, 7, 0);
  CHECK_THROWS_AS(run_census(bad), ValidationError);
  CHECK_THROWS_AS(run_census(small_query({}, 2, 0)), ValidationError);
}

TEST_CASE("canonical tuples") {
  // Image arrays: (2 3) is 1 3 2, (1 2) is 2 1 3.
  CHECK(is_canonical_tuple({parse_cycles("(2 3)", 3), parse_cycles("(1 2)", 3)}));
  CHECK(!is_canonical_tuple({parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)}));
  CHECK(!is_canonical_tuple({parse_cycles("(2 3)", 3), parse_cycles("(1 3)", 3)}));
}
