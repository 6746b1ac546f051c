#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branchcover/perm.hpp"
#include "branchcover/surface.hpp"

namespace bcov {

// Degrees above this have no precomputed Sym(d) tables.
inline constexpr int kCensusMaxDegree = 6;
inline constexpr long long kDefaultBudgetNodes = 2'000'000'000;
inline constexpr double kDefaultBudgetSeconds = 600.0;

struct CensusQuery {
  std::vector<SurfaceSig> bases;
  int min_degree = 1;
  int max_degree = 1;
  int min_branch = 0;
  int max_branch = 0;

  // Lemma mode: only the total type is evaluated; a record is emitted for
  // every cover whose total is the closed annulus unless the base is the
  // closed annulus with no branch points.
  bool lemma_annulus = false;

  std::optional<bool> fully_ramified;
  std::optional<bool> regular;
  std::optional<bool> bh_guaranteed;
  std::optional<SurfaceSig> total;

  long long budget_nodes = kDefaultBudgetNodes;
  double budget_seconds = kDefaultBudgetSeconds;
  int workers = 1;
  // Off: every tuple is generated and kept only when it is its own canonical
  // form. Used to cross-check the pruned search.
  bool pruning = true;
};

// The bases with two boundary components that the lemma census ranges over.
std::vector<SurfaceSig> lemma_annulus_bases();
CensusQuery lemma_annulus_query(int max_degree);

struct CensusRecord {
  SurfaceSig base;
  int branch = 0;
  int degree = 0;
  std::vector<Perm> monodromy;  // per free generator of the presentation
  SurfaceSig total;
  bool fully_ramified = false;
  std::optional<bool> regular;  // not evaluated in lemma mode
  bool bh_guaranteed = false;
  bool counterexample = false;

  friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

// Counters for one (base, branch, degree) cell.
struct CensusCell {
  SurfaceSig base;
  int branch = 0;
  int degree = 0;
  long long covers = 0;
  long long fully_ramified = 0;
  long long regular = 0;
  long long bh_guaranteed = 0;
  std::map<std::string, long long> totals;

  friend bool operator==(const CensusCell&, const CensusCell&) = default;
};

struct CensusResult {
  std::vector<CensusCell> cells;
  std::vector<CensusRecord> records;
  long long nodes = 0;
  bool complete = true;
  std::string stop_reason;  // "node-budget" or "wall-clock" when incomplete
  long long counterexamples = 0;
};

// Enumerates transitive monodromy tuples up to simultaneous conjugation.
//
// Canonical form: permutations of a degree are ordered lexicographically by
// their image arrays (sheet 1 first), tuples lexicographically, and a tuple
// is kept iff no relabeling of the fiber makes it smaller. Branch
// peripherals must have non-identity monodromy; a closed base without marked
// points requires the relator to map to the identity.
//
// Throws ValidationError("invalid-query") on empty or out-of-range bounds.
CensusResult run_census(const CensusQuery& query);

// Whether a tuple over Sym(d) is its own canonical form.
bool is_canonical_tuple(const std::vector<Perm>& tuple);

}  // namespace bcov
