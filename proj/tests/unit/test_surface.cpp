#include <doctest.h>

#include "branchcover/error.hpp"
#include "branchcover/perm.hpp"
#include "branchcover/smith.hpp"
#include "branchcover/surface.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

using namespace bcov;

TEST_CASE("perm composition acts on the right") {
  Perm a = parse_cycles("(1 2)", 3), b = parse_cycles("(2 3)", 3);
  // 1 -a-> 2 -b-> 3
  CHECK((a * b).apply(0) == 2);
  CHECK(to_cycle_string(a * b) == "(1 3 2)");
  CHECK((a * a).is_identity());
  CHECK(to_cycle_string(parse_cycles("(1 2)(3)", 3)) == "(1 2)");
  CHECK(parse_cycles("()", 4).is_identity());
  CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 4)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(1 2", 3), ParseError);
}

TEST_CASE("relabeling conjugates") {
  bcov::testing::SpecGenerator gen(11);
  for (int t = 0; t < 200; ++t) {
    int d = gen.uniform(1, 6);
    Perm p = gen.perm(d), r = gen.perm(d);
    Perm q = p.relabeled(r);
    for (int i = 0; i < d; ++i) CHECK(q.apply(r.apply(i)) == r.apply(p.apply(i)));
    CHECK(q.cycle_lengths().size() == p.cycle_count());
  }
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic({true, 0, 0, 0}) == 2);
  CHECK(euler_characteristic({true, 0, 0, 2}) == 0);
  CHECK(euler_characteristic({false, 3, 0, 0}) == -1);
  for (int o = 0; o < 2; ++o) {
    for (int g = o ? 0 : 1; g <= 4; ++g) {
      for (int p = 0; p <= 3; ++p) {
        for (int b = 0; b <= 3; ++b) {
          SurfaceSig sig{o == 1, g, p, b};
          CHECK(euler_characteristic(sig) == bcov::testing::polygon_euler(sig));
          CHECK(signature_from_euler(sig.orientable, euler_characteristic(sig), p, b) == sig);
        }
      }
    }
  }
  CHECK_THROWS_AS(validate(SurfaceSig{false, 0, 0, 0}), ValidationError);
  CHECK_THROWS_AS(signature_from_euler(true, 1, 0, 0), ValidationError);
}

TEST_CASE("signature text") {
  CHECK(to_string(parse_signature("N 2 1 0")) == "N 2 1 0");
  CHECK_THROWS_AS(parse_signature("X 1 0 0"), ParseError);
  CHECK_THROWS_AS(parse_signature("O 1 0"), ParseError);
}

TEST_CASE("sporadic surfaces") {
  CHECK(is_sporadic({true, 0, 3, 0}));
  CHECK(!is_sporadic({true, 0, 4, 0}));
  CHECK(is_sporadic({false, 1, 1, 0}));
  CHECK(!is_sporadic({false, 1, 2, 0}));
  CHECK(!is_sporadic({true, 1, 0, 0}));
}

TEST_CASE("standard presentations") {
  Presentation torus1({true, 1, 1, 0});
  CHECK(torus1.rank() == 2);
  CHECK(torus1.is_free());
  CHECK(torus1.format(torus1.peripherals()[0].word) == "b a b^-1 a^-1");

  Presentation klein({false, 2, 0, 0});
  CHECK(klein.generator_names() == std::vector<std::string>{"d1", "d2"});
  REQUIRE(klein.relator());
  CHECK(klein.format(*klein.relator()) == "d1^2 d2^2");
  CHECK(klein.abelianization(*klein.relator()) == std::vector<long long>{2, 2});
  CHECK(klein.orientation_character(Word::generator(0)) == 1);
  CHECK(klein.orientation_character(klein.parse_word("d1 d2")) == 0);

  Presentation sphere6({true, 0, 6, 0});
  CHECK(sphere6.rank() == 5);
  CHECK(sphere6.format(sphere6.peripherals()[5].word) == "x5^-1 x4^-1 x3^-1 x2^-1 x1^-1");

  Presentation branched({true, 0, 0, 0}, 6);
  CHECK(branched.peripherals()[0].kind == PeripheralKind::Branch);
  CHECK(branched.generator_names()[0] == "x1");

  Presentation mixed({true, 2, 1, 1}, 1);
  CHECK(mixed.generator_names()[4] == "e1");
  CHECK(mixed.peripherals()[1].kind == PeripheralKind::Boundary);
  CHECK(mixed.schottky_bit(5) == 1);
  CHECK(mixed.schottky_bit(4) == 0);
}

TEST_CASE("presentation ranks and characters over many signatures") {
  for (int o = 0; o < 2; ++o) {
    for (int g = o ? 0 : 1; g <= 3; ++g) {
      for (int p = 0; p <= 2; ++p) {
        for (int b = 0; b <= 2; ++b) {
          for (int m = 0; m <= 2; ++m) {
            SurfaceSig sig{o == 1, g, p, b};
            Presentation pres(sig, m);
            int s = p + b + m;
            if (s >= 1) {
              CHECK(pres.is_free());
              CHECK(pres.rank() == (o ? 2 * g : g) + s - 1);
            } else {
              CHECK(!pres.is_free());
              CHECK(pres.orientation_character(*pres.relator()) == 0);
            }
            for (const Peripheral& per : pres.peripherals()) {
              CHECK(pres.orientation_character(per.word) == 0);
            }
            if (s >= 1) {
              // Product of the surface word and every peripheral is trivial.
              Word total = pres.surface_product();
              for (const Peripheral& per : pres.peripherals()) total = total * per.word;
              CHECK(total.empty());
            }
          }
        }
      }
    }
  }
}

TEST_CASE("free words") {
  CHECK(Word{1, -1}.empty());
  CHECK(Word{1, 2}.inverse() == Word{-2, -1});
  CHECK(Word{1, 2, -2, -1, 3} == Word{3});
  CHECK(cyclically_reduced(Word{1, 2, -1}) == Word{2});
  CHECK(are_conjugate(Word{1, 2}, Word{2, 1}));
  CHECK(!are_conjugate(Word{1, 2}, Word{1, -2}));
  Presentation t({true, 1, 1, 0});
  CHECK(t.abelianization(t.parse_word("a b a^-1 b^-1")) == std::vector<long long>{0, 0});
  CHECK(t.abelianization(t.parse_word("a^2 b")) == std::vector<long long>{2, 1});
  CHECK_THROWS_AS(t.parse_word("a c"), ParseError);
  CHECK_THROWS_AS(t.check_word(Word{5}), ValidationError);

  Presentation n3({false, 3, 1, 0});
  bcov::testing::SpecGenerator gen(5);
  for (int k = 0; k < 500; ++k) {
    Word u = gen.word(3, 8), v = gen.word(3, 8), w = gen.word(3, 8);
    CHECK((u * v) * w == u * (v * w));
    CHECK(u.inverse().inverse() == u);
    CHECK((u * u.inverse()).empty());
    CHECK(Word(std::vector<Letter>(u.letters().begin(), u.letters().end())) == u);
    CHECK(n3.orientation_character(u * v) ==
          (n3.orientation_character(u) ^ n3.orientation_character(v)));
  }
}

TEST_CASE("smith normal form") {
  IntMatrix a(2, 3);
  a(0, 0) = 2; a(0, 1) = 4; a(0, 2) = 4;
  a(1, 0) = -6; a(1, 1) = 6; a(1, 2) = 12;
  SmithForm s = smith_normal_form(a);
  CHECK(s.invariants == std::vector<long long>{2, 6});
  IntMatrix d = s.left * a * s.right;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      CHECK(d(i, j) == (i == j ? s.invariants[i] : 0));
    }
  }

  Lattice klein(2, {{2, 2}});
  CHECK(klein.torsion() == std::vector<long long>{2});
  CHECK(klein.free_rank() == 1);
  CHECK(klein.contains({4, 4}));
  CHECK(!klein.contains({1, 1}));

  bcov::testing::SpecGenerator gen(17);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = static_cast<std::size_t>(gen.uniform(1, 4));
    std::size_t c = static_cast<std::size_t>(gen.uniform(1, 4));
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m(i, j) = gen.uniform(-6, 6);
    }
    SmithForm f = smith_normal_form(m);
    IntMatrix dm = f.left * m * f.right;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        long long want = (i == j && i < f.rank()) ? f.invariants[i] : 0;
        CHECK(dm(i, j) == want);
      }
    }
    for (std::size_t k = 1; k < f.rank(); ++k) CHECK(f.invariants[k] % f.invariants[k - 1] == 0);
  }
}
