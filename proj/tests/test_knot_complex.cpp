#include <algorithm>
#include <functional>

#include "doctest.h"
#include "hfcx/error.hpp"
#include "hfcx/knot_complex.hpp"
#include "hfcx/oracle.hpp"

using namespace hfcx;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

bool all_ones(const ModuleDecomp& d) {
  return std::all_of(d.torsion.begin(), d.torsion.end(), [](unsigned k) { return k == 1; });
}

}  // namespace

TEST_CASE("corpus models validate") {
  for (const auto& name : model_names()) {
    const KnotComplex k = named_model(name);
    const ValidationReport r = validate_knot_complex(k);
    INFO(name << "\n" << r.to_string());
    CHECK(r.ok());
    for (const char* check : {"d_squared", "maslov_drop", "filtration", "homology_axiom", "flip"}) {
      REQUIRE(r.find(check) != nullptr);
    }
  }
  CHECK(named_model("unknot").size() == 1);
  CHECK(named_model("T23").size() == 3);
  CHECK(named_model("fig8").size() == 5);
}

TEST_CASE("filtration violation is reported with a witness") {
  KnotComplex k;
  k.gens = {{"a", Rational(0), 0}, {"b", Rational(-1), 1}};
  k.differential = {{0, 1, 0}};
  const ValidationReport r = validate_knot_complex(k);
  CHECK_FALSE(r.ok());
  REQUIRE(r.find("filtration"));
  CHECK_FALSE(r.find("filtration")->passed);
  CHECK_FALSE(r.find("filtration")->witness.empty());
}

TEST_CASE("d squared and grading failures") {
  KnotComplex k = named_model("T23");
  k.differential.push_back({0, 2, 0});
  CHECK_FALSE(validate_knot_complex(k).find("maslov_drop")->passed);
  KnotComplex sq;
  sq.gens = {{"a", Rational(1), 0}, {"b", Rational(0), 0}, {"c", Rational(-1), 0}};
  sq.differential = {{0, 1, 0}, {1, 2, 0}};
  CHECK_FALSE(validate_knot_complex(sq).find("d_squared")->passed);
}

TEST_CASE("a missing or wrong flip is caught") {
  KnotComplex k = named_model("T23");
  k.flip = {};
  CHECK_FALSE(validate_knot_complex(k).find("flip")->passed);
  CHECK(kind_of([&] { edge_maps(k, 0); }) == ErrorKind::FlipUndefined);
  k.flip.involution = std::vector<std::size_t>{0, 1, 2};
  CHECK_FALSE(validate_knot_complex(k).find("flip")->passed);
}

TEST_CASE("involution search finds the flip") {
  for (const auto& name : model_names()) {
    KnotComplex k = named_model(name);
    k.flip = {};
    const auto inv = find_involution(k);
    REQUIRE(inv);
    k.flip.involution = inv;
    CHECK(validate_knot_complex(k).ok());
  }
}

TEST_CASE("south-west regions") {
  const KnotComplex unknot = named_model("unknot");
  CHECK(homology_decomp(region_complex(unknot, SouthWestRegion::half_plane_j(0))) == ModuleDecomp(1, {}));

  const KnotComplex t = named_model("T23");
  CHECK(homology_decomp(region_complex(t, SouthWestRegion::half_plane_j(0))) == ModuleDecomp(1, {}));

  // The strip {j = 0, i < 0} is finite dimensional, so U kills its homology.
  const auto strip =
      SouthWestRegion::difference(SouthWestRegion::quadrant(-1, 0), SouthWestRegion::quadrant(-1, -1));
  const ModuleDecomp d = homology_decomp(region_complex(t, strip));
  CHECK(d.free_rank == 0);
  CHECK(all_ones(d));

  const auto empty = SouthWestRegion::difference(SouthWestRegion::quadrant(0, 0), SouthWestRegion::quadrant(0, 0));
  CHECK(region_complex(t, empty).size() == 0);

  const auto bad = SouthWestRegion::difference(SouthWestRegion::quadrant(0, 0), SouthWestRegion::quadrant(1, -5));
  const auto wider = SouthWestRegion::difference(SouthWestRegion::quadrant(0, 0), SouthWestRegion::quadrant(2, 2));
  CHECK(kind_of([&] { region_complex(t, wider); }) == ErrorKind::NotNested);
  CHECK(kind_of([&] { region_complex(t, bad); }) == ErrorKind::NotNested);
  CHECK(kind_of([&] { region_complex(t, SouthWestRegion::staircase({})); }) == ErrorKind::NotSouthWest);
  CHECK(kind_of([&] {
          region_complex(t, SouthWestRegion::staircase({{SouthWestRegion::kInf, SouthWestRegion::kInf}}));
        }) == ErrorKind::NotSouthWest);

  const auto st = SouthWestRegion::staircase({{0, 2}, {2, 0}});
  CHECK(st.contains(1, 0));
  CHECK_FALSE(st.contains(1, 1));
  CHECK(strip.contains(-3, 0));
  CHECK_FALSE(strip.contains(-3, -1));
}

TEST_CASE("every region of the corpus has the homology of a tower") {
  for (const auto& name : model_names()) {
    const KnotComplex k = named_model(name);
    for (int s = -4; s <= 4; ++s) {
      CHECK(homology_decomp(region_complex(k, SouthWestRegion::half_plane_j(s))) == ModuleDecomp(1, {}));
      CHECK(homology_decomp(region_complex(k, SouthWestRegion::half_plane_i(s))) == ModuleDecomp(1, {}));
    }
  }
}

TEST_CASE("A and B complexes with their edge maps") {
  const KnotComplex u = named_model("unknot");
  const EdgeMaps e0 = edge_maps(u, 0);
  CHECK(e0.v == UMonomialMatrix::identity(1));
  CHECK(e0.h == UMonomialMatrix::identity(1));

  const KnotComplex t = named_model("T23");
  CHECK(homology_decomp(b_complex(t)) == ModuleDecomp(1, {}));
  for (int s = -3; s <= 3; ++s) CHECK(homology_decomp(a_complex(t, s)) == ModuleDecomp(1, {}));
  const EdgeMaps e = edge_maps(t, 0);
  CHECK(induced_tower_exponent(e.v, e.a, e.b) == 1u);
  CHECK(induced_tower_exponent(e.h, e.a, e.b) == 1u);
  CHECK(map_degree(e.h, e.a, e.b) == Rational(0));
  for (const auto& name : model_names()) {
    const KnotComplex k = named_model(name);
    const int g = k.genus_bound();
    const EdgeMaps eg = edge_maps(k, g);
    CHECK(induced_tower_exponent(eg.v, eg.a, eg.b) == 0u);
  }
  // At s >= g the A complex is B itself.
  CHECK(homology_decomp(a_complex(t, 1)) == homology_decomp(b_complex(t)));
}

TEST_CASE("A complex agrees with the field homology oracle") {
  for (const auto& name : model_names()) {
    const KnotComplex k = named_model(name);
    for (int s = -4; s <= 4; ++s) {
      const FreeUComplex a = a_complex(k, s);
      CHECK(homology_decomp(a) == oracle_homology(a));
    }
  }
}

TEST_CASE("builders") {
  CHECK(staircase({}).size() == 1);
  CHECK(validate_knot_complex(staircase({})).ok());
  CHECK(staircase({1, 1}).size() == 3);
  CHECK(kind_of([] { staircase({1}); }) == ErrorKind::BadSteps);
  CHECK(kind_of([] { staircase({1, 0}); }) == ErrorKind::BadSteps);
  const KnotComplex f8 = named_model("fig8");
  CHECK(validate_knot_complex(f8).find("homology_axiom")->passed);

  const KnotComplex sum = direct_sum({named_model("T23"), box(1, 2, 2, 3)});
  CHECK(sum.size() == 7);
  const KnotComplex shifted = grading_shift(named_model("T23"), 2);
  CHECK(shifted.gens[0].maslov == named_model("T23").gens[0].maslov + Rational(2));
}

TEST_CASE("mirror reverses the complex") {
  for (const auto& name : model_names()) {
    const KnotComplex k = named_model(name);
    const KnotComplex m = mirror(k);
    CHECK(validate_knot_complex(m).ok());
    CHECK(mirror(m).gens[0].maslov == k.gens[0].maslov);
    CHECK(m.genus_bound() == k.genus_bound());
  }
}
