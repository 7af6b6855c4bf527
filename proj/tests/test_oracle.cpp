#include "doctest.h"
#include "hfcx/error.hpp"
#include "hfcx/knot_surgery.hpp"
#include "hfcx/oracle.hpp"

using namespace hfcx;

TEST_CASE("window homology on tiny complexes") {
  CHECK(truncated_field_homology(make_free_complex({Rational(0)}), 5) == ModuleDecomp(1, {}));
  FreeUComplex c = make_free_complex({Rational(0), Rational(3)});
  c.differential.set(1, 0, 2);
  CHECK(truncated_field_homology(c, 5) == ModuleDecomp(0, {2}));
  // Too shallow a window mistakes the U^2 string for a tower.
  CHECK_THROWS_AS(truncated_field_homology(c, 1), Error);
  CHECK(oracle_homology(c) == ModuleDecomp(0, {2}));
}

TEST_CASE("two-variable window and unit cancellation") {
  // d x = (U1 + U2) y: homology is F[U1,U2]/(U1+U2) on y, a single tower in U1.
  MultiFreeComplex m;
  m.ell = 2;
  m.maslov = {Rational(-1), Rational(0)};
  m.entries = {{0, 1, {1, 0}}, {0, 1, {0, 1}}};
  CHECK(window_homology(m, 6) == ModuleDecomp(1, {}));
  // Adding a cancelling pair changes nothing.
  MultiFreeComplex big = m;
  big.maslov.push_back(Rational(-5));
  big.maslov.push_back(Rational(-6));
  big.entries.push_back({2, 3, {0, 0}});
  big.entries.push_back({2, 1, {2, 1}});
  const MultiFreeComplex small = cancel_unit_entries(big);
  CHECK(small.maslov.size() == 2);
  CHECK(window_homology(small, 6) == window_homology(big, 6));
}

TEST_CASE("random knot complexes are valid") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const KnotComplex k = random_knot_complex(seed);
    INFO("seed " << seed);
    CHECK(validate_knot_complex(k).ok());
  }
}

TEST_CASE("zero deformations leave the complex alone") {
  const KnotComplex k = named_model("T34");
  const KnotComplex d = deform(k, 0, 0);
  CHECK(d.differential == k.differential);
  CHECK(d.gens.size() == k.gens.size());
}

TEST_CASE("deformations preserve every A complex") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    RandomKnotParams p;
    p.deformations = 0;
    const KnotComplex base = random_knot_complex(seed, p);
    const KnotComplex moved = deform(base, seed + 100, 8);
    INFO("seed " << seed);
    CHECK(validate_knot_complex(moved).ok());
    const int g = base.genus_bound();
    for (int s = -g - 1; s <= g + 1; ++s) {
      CHECK(homology_decomp(a_complex(base, s)) == homology_decomp(a_complex(moved, s)));
    }
  }
}

TEST_CASE("snf and oracle agree on random A complexes and cones") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const KnotComplex k = random_knot_complex(seed);
    const int g = k.genus_bound();
    for (int s = -g - 1; s <= g + 1; ++s) {
      const FreeUComplex a = a_complex(k, s);
      CHECK(homology_decomp(a) == oracle_homology(a));
    }
    const FreeUComplex c = surgery_cone(k, 2, 1, 0, g + 1);
    CHECK(homology_decomp(c) == oracle_homology(c));
  }
}

TEST_CASE("crosscheck on random complexes") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const KnotComplex k = random_knot_complex(seed);
    const auto r = crosscheck_surgery(k, 3, 2);
    INFO(r.detail);
    CHECK(r.match);
  }
}
