#include <doctest.h>

#include "branchcover/charsub.hpp"
#include "branchcover/error.hpp"
#include "branchcover/mcglift.hpp"
#include "common.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

using namespace bcov;
namespace bt = bcov::testing;

TEST_CASE("schreier graph invariants") {
  CoverSpec hyp = fixtures::cover("hyperelliptic");
  SchreierGraph sg = schreier(hyp);
  CHECK(sg.generators().size() == 9);
  CHECK(!contains(hyp, hyp.presentation().parse_word("x1")));
  CHECK(contains(hyp, Word{}));

  bt::SpecGenerator gen(99);
  for (int t = 0; t < 300; ++t) {
    CoverSpec s = gen.spec();
    SchreierGraph g = schreier(s);
    const int d = s.degree();
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < s.presentation().rank(); ++k) {
        CHECK(g.target(i, k) == s.monodromy()[k].apply(i));
      }
      CHECK(g.trace(g.transversal(i)) == i);
    }
    for (const Word& w : g.generators()) {
      CHECK(g.trace(w) == 0);
      CHECK(contains(s, w));
    }
    // Membership agrees with the monodromy, and members rewrite back.
    Word w = gen.word(s.presentation().rank(), 8);
    CHECK(contains(s, w) == (s.image(w).apply(0) == 0));
    if (contains(s, w)) CHECK(g.push_forward(g.rewrite(w)) == w);
  }
}

TEST_CASE("representations equivalent") {
  bt::SpecGenerator gen(7);
  for (int t = 0; t < 200; ++t) {
    int d = gen.uniform(1, 5);
    std::vector<Perm> mu{gen.perm(d), gen.perm(d)};
    Perm r = gen.perm(d), q = gen.perm(d);
    std::vector<Perm> nu, xi;
    for (const Perm& p : mu) nu.push_back(p.relabeled(r));
    for (const Perm& p : nu) xi.push_back(p.relabeled(q));
    auto self = representations_equivalent(mu, mu);
    REQUIRE(self);
    auto s1 = representations_equivalent(mu, nu);
    auto s2 = representations_equivalent(nu, mu);
    auto s3 = representations_equivalent(mu, xi);
    REQUIRE(s1);
    REQUIRE(s2);
    REQUIRE(s3);
    for (std::size_t g = 0; g < mu.size(); ++g) {
      CHECK(nu[g] == s1->inverse() * mu[g] * *s1);
      CHECK(mu[g] == s2->inverse() * nu[g] * *s2);
    }
  }
  std::vector<Perm> a{parse_cycles("(1 2 3)", 3), parse_cycles("()", 3)};
  std::vector<Perm> b{parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)};
  CHECK(!representations_equivalent(a, b));
  auto swap = representations_equivalent(
      std::vector<Perm>{parse_cycles("(1 2)", 3)}, std::vector<Perm>{parse_cycles("(2 3)", 3)});
  CHECK(swap);
}

TEST_CASE("orientable double covers") {
  CHECK(classify_total(orientable_double_cover({false, 2, 0, 0})) == SurfaceSig{true, 1, 0, 0});
  CHECK(classify_total(orientable_double_cover({false, 3, 0, 0})) == SurfaceSig{true, 2, 0, 0});
  CHECK(classify_total(orientable_double_cover({false, 1, 1, 0})) == SurfaceSig{true, 0, 2, 0});
  for (int k = 1; k <= 4; ++k) {
    for (int p = 0; p <= 2; ++p) {
      SurfaceSig sig{false, k, p, 0};
      CoverSpec s = orientable_double_cover(sig);
      CHECK(validate(s).empty());
      SurfaceSig total = classify_total(s);
      CHECK(total.orientable);
      CHECK(euler_characteristic(total) == 2 * euler_characteristic(sig));
    }
  }
  CHECK_THROWS_AS(orientable_double_cover({true, 1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(orientable_double_cover({false, 1, 0, 1}), ValidationError);
}

TEST_CASE("schottky doubles") {
  CHECK(classify_total(schottky_double({true, 0, 0, 2})) == SurfaceSig{true, 1, 0, 0});
  CHECK(classify_total(schottky_double({false, 1, 0, 1})) == SurfaceSig{false, 2, 0, 0});
  CHECK(classify_total(schottky_double({true, 1, 0, 1})) == SurfaceSig{true, 2, 0, 0});
  for (int o = 0; o < 2; ++o) {
    for (int g = o ? 0 : 1; g <= 3; ++g) {
      for (int p = 0; p <= 2; ++p) {
        for (int b = 1; b <= 3; ++b) {
          SurfaceSig sig{o == 1, g, p, b};
          CoverSpec s = schottky_double(sig);
          SurfaceSig total = classify_total(s);
          CHECK(total.boundary == 0);
          CHECK(total.punctures == 2 * p);
          CHECK(total.orientable == sig.orientable);
          CHECK(total.orientable == bt::parity_orientable(s));
          CHECK(euler_characteristic(total) == 2 * euler_characteristic(sig));
          CHECK(bt::lifted_cells(s).euler() == 2 * euler_characteristic(sig));
        }
      }
    }
  }
  CHECK_THROWS_AS(schottky_double({true, 1, 0, 0}), ValidationError);
}

TEST_CASE("homology covers") {
  CoverSpec t = homology_cover({true, 1, 1, 0}, 2);
  CHECK(t.degree() == 4);
  CHECK(total_euler(t) == -4);
  CHECK(deck_group(t).size() == 4);
  CoverSpec pants = homology_cover({true, 0, 3, 0}, 2);
  CHECK(pants.degree() == 4);
  CHECK(classify_total(pants) == SurfaceSig{true, 0, 6, 0});
  CHECK(homology_cover({true, 2, 0, 0}, 1).degree() == 1);
  CHECK(homology_cover({false, 2, 0, 0}, 2).degree() == 4);
  CHECK(homology_cover({false, 2, 0, 0}, 3).degree() == 3);
  CHECK(homology_cover({true, 1, 0, 0}, 3).degree() == 9);
  for (const SurfaceSig& sig : {SurfaceSig{true, 1, 0, 0}, SurfaceSig{true, 1, 1, 0},
                                SurfaceSig{false, 2, 0, 0}, SurfaceSig{false, 3, 0, 0},
                                SurfaceSig{false, 2, 1, 0}, SurfaceSig{true, 0, 4, 0}}) {
    for (int n = 2; n <= 4; ++n) {
      CoverSpec s = homology_cover(sig, n);
      CHECK(validate(s).empty());
      CHECK(is_regular(s));
      CHECK(static_cast<int>(deck_group(s).size()) == s.degree());
    }
  }
  CHECK_THROWS_AS(homology_cover({true, 3, 0, 0}, 5), ValidationError);
}

TEST_CASE("invariance and geometric characteristicity") {
  auto ta = fixtures::automorphism("punctured_torus_T_a");
  auto tb = fixtures::automorphism("punctured_torus_T_b");
  CHECK(is_invariant_under(fixtures::cover("punctured_torus_mod2"), ta));
  CHECK(is_invariant_under(fixtures::cover("punctured_torus_mod2"), tb));
  auto rep = is_geometrically_characteristic(fixtures::cover("punctured_torus_nonnormal3"), {ta, tb});
  CHECK(!rep.verdict);
  CHECK(rep.generators == std::vector<std::string>{"T_a", "T_b"});

  CoverSpec dbl = orientable_double_cover({false, 2, 1, 0});
  auto presets = preset_classes({false, 2, 1, 0});
  CHECK(is_geometrically_characteristic(dbl, presets).verdict);
  CoverSpec id = dbl;
  CHECK(is_invariant_under(id, Automorphism::identity(id.presentation())));
}
