#include <random>

#include "doctest.h"
#include "hfcx/geography.hpp"
#include "hfcx/knot_surgery.hpp"

using namespace hfcx;

TEST_CASE("lin restriction") {
  CHECK(lin_check(ModuleDecomp(3, {})));
  CHECK_FALSE(lin_check(ModuleDecomp(1, {2})));
  CHECK(lin_check(ModuleDecomp(1, {2, 1})));
}

TEST_CASE("strong restriction") {
  CHECK(strong_check(ModuleDecomp(1, {3, 2, 1})));
  CHECK_FALSE(strong_check(ModuleDecomp(1, {3, 1})));
  CHECK(strong_check(ModuleDecomp(5, {})));
  CHECK(strong_check(ModuleDecomp(1, {1, 1, 1})));
}

TEST_CASE("skyline similarity") {
  CHECK(skyline_similar(ModuleDecomp(1, {2}), ModuleDecomp(1, {3})));
  CHECK_FALSE(skyline_similar(ModuleDecomp(1, {}), ModuleDecomp(2, {})));
  CHECK(skyline_similar(ModuleDecomp(1, {1}), ModuleDecomp(1, {})));
  CHECK(skyline_similar(ModuleDecomp(1, {}), ModuleDecomp(1, {1})));
  CHECK_FALSE(skyline_similar(ModuleDecomp(1, {3}), ModuleDecomp(1, {})));
  CHECK(skyline_similar(ModuleDecomp(1, {4, 2}), ModuleDecomp(1, {3, 3, 1, 1})));
  CHECK_FALSE(skyline_similar(ModuleDecomp(1, {}), ModuleDecomp(1, {2})));
  const auto m = skyline_match(ModuleDecomp(1, {2}), ModuleDecomp(1, {2, 1}));
  REQUIRE(m);
  CHECK(m->extra_ones == 1);
}

TEST_CASE("intermediate values") {
  CHECK(intermediate_value_check({ModuleDecomp(1, {3}), ModuleDecomp(1, {2}), ModuleDecomp(1, {1}), ModuleDecomp(1, {})}));
  CHECK_FALSE(intermediate_value_check({ModuleDecomp(1, {3}), ModuleDecomp(1, {})}));
  CHECK(intermediate_value_check({ModuleDecomp(1, {})}));
}

TEST_CASE("large surgery sequence of the trefoil") {
  const KnotComplex t = named_model("T23");
  std::vector<ModuleDecomp> seq;
  for (int s = 0; s <= 2; ++s) seq.push_back(homology_decomp(a_complex(t, s)));
  CHECK(intermediate_value_check(seq));
}

TEST_CASE("properties on random modules") {
  std::mt19937 rng(3);
  auto random_module = [&] {
    std::vector<unsigned> t(rng() % 5);
    for (auto& k : t) k = 1 + rng() % 4;
    return ModuleDecomp(1, t);
  };
  for (int i = 0; i < 2000; ++i) {
    const ModuleDecomp a = random_module();
    const ModuleDecomp b = random_module();
    // strong implies lin
    if (strong_check(a)) CHECK(lin_check(a));
    CHECK(skyline_similar(a, a));
    CHECK(skyline_similar(a, b) == skyline_similar(b, a));
    // Shifting every summand up by one keeps the skyline similar.
    std::vector<unsigned> up = a.torsion;
    for (auto& k : up) ++k;
    CHECK(skyline_similar(a, ModuleDecomp(1, up)));
  }
}
