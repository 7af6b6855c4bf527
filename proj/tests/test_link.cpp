#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "hfcx/error.hpp"
#include "hfcx/knot_surgery.hpp"
#include "hfcx/link_surgery.hpp"

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

LatticePoint pt(std::initializer_list<int> v) { return LatticePoint(v); }

std::vector<ModuleDecomp> sorted_decomps(const LinkSurgeryResult& r) {
  std::vector<ModuleDecomp> out;
  for (const auto& [p, d] : r.labels) out.push_back(d);
  std::sort(out.begin(), out.end(), [](const ModuleDecomp& a, const ModuleDecomp& b) {
    return std::tie(a.free_rank, a.torsion) < std::tie(b.free_rank, b.torsion);
  });
  return out;
}

}  // namespace

TEST_CASE("link validation") {
  CHECK(validate_link_complex(link_from_knot(named_model("unknot"))).ok());
  CHECK(validate_link_complex(hopf_link()).ok());
  LinkComplex bad = hopf_link();
  bad.entries[0].m = {-1, 0};
  const ValidationReport r = validate_link_complex(bad);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.find("exponents")->passed);
  LinkComplex coset = hopf_link();
  coset.gens[0].alex2 = {2, 1};
  CHECK_FALSE(validate_link_complex(coset).find("coset")->passed);
}

TEST_CASE("hat polytope and box") {
  const Polytope u = hat_polytope(link_from_knot(named_model("unknot")));
  CHECK(u.support == std::vector<LatticePoint>{pt({0})});
  CHECK(u.box.q2 == std::vector<int>{0});
  CHECK(hat_polytope(link_from_knot(named_model("T23"))).box.q2 == std::vector<int>{2});
  const Polytope h = hat_polytope(hopf_link());
  CHECK(h.box.q2 == std::vector<int>{1, 1});
  for (const auto& p : h.support) {
    CHECK(std::abs(p[0]) == 1);
    CHECK(std::abs(p[1]) == 1);
  }
}

TEST_CASE("one-component A complexes match the knot path") {
  for (const auto& name : model_names()) {
    const KnotComplex k = named_model(name);
    const LinkComplex c = link_from_knot(k);
    for (int s = -4; s <= 4; ++s) {
      CHECK(link_homology_decomp(a_minus_link(c, {2 * s})) == homology_decomp(a_complex(k, s)));
    }
  }
}

TEST_CASE("hopf A complex and torsion detection") {
  CHECK(link_homology_decomp(a_minus_link(hopf_link(), {1, 1})) == ModuleDecomp(1, {}));
  CHECK(kind_of([] { a_minus_link(hopf_link(), {0, 1}); }) == ErrorKind::InvalidArgument);

  LinkComplex c = link_from_knot(named_model("unknot"));
  c.gens.push_back({"p", Rational(1), {0}});
  c.gens.push_back({"q", Rational(2), {0}});
  c.entries.push_back({1, 2, {1}});
  CHECK(link_homology_decomp(a_minus_link(c, {0})) == ModuleDecomp(1, {1}));
}

TEST_CASE("clamping to the box") {
  const HyperBox box{{2, 2}};
  CHECK(clamp_to_box(pt({1, -1}), box) == pt({1, -1}));
  CHECK(clamp_to_box(pt({7, -9}), box) == pt({2, -2}));

  const KnotComplex t = named_model("T23");
  const LinkComplex c = link_from_knot(t);
  const HyperBox kb = hat_polytope(c).box;
  const int g = t.genus_bound();
  const LatticePoint hi = {2 * (g + 5)};
  CHECK(clamp_to_box(hi, kb) == LatticePoint{2 * g});
  CHECK(link_homology_decomp(a_minus_link(c, hi)) == link_homology_decomp(a_minus_link(c, clamp_to_box(hi, kb))));
  const LatticePoint lo = {-kb.q2[0] - 6};
  CHECK(link_homology_decomp(a_minus_link(c, lo)) == link_homology_decomp(a_minus_link(c, clamp_to_box(lo, kb))));
}

TEST_CASE("spin^c enumeration") {
  CHECK(spinc_enumerate({{2, 0}, {0, 3}}).size() == 6);
  CHECK(spinc_enumerate({{2, 1}, {1, 3}}).size() == 5);
  CHECK(spinc_enumerate({{1}}) == std::vector<LatticePoint>{pt({0})});
  CHECK(spinc_enumerate({{5}}) == std::vector<LatticePoint>{pt({-4}), pt({-2}), pt({0}), pt({2}), pt({4})});
  CHECK(spinc_enumerate({{4}}) == std::vector<LatticePoint>{pt({-2}), pt({0}), pt({2}), pt({4})});
  CHECK(spinc_enumerate({{4}}, FaceConvention::LowerClosed) ==
        std::vector<LatticePoint>{pt({-4}), pt({-2}), pt({0}), pt({2})});
  CHECK(kind_of([] { spinc_enumerate({{2, 2}, {2, 2}}); }) == ErrorKind::DegenerateFraming);
  CHECK(kind_of([] { spinc_enumerate({{2, 1}, {0, 2}}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("P(Lambda) is a complete system of residues") {
  std::mt19937 rng(9);
  int tested = 0;
  while (tested < 60) {
    const std::size_t ell = 1 + rng() % 3;
    LinkingMatrix lam(ell, std::vector<long>(ell));
    for (std::size_t i = 0; i < ell; ++i) {
      for (std::size_t j = i; j < ell; ++j) lam[i][j] = lam[j][i] = static_cast<long>(rng() % 9) - 4;
    }
    const long det = determinant(lam);
    if (det == 0) continue;
    ++tested;
    const auto pts = spinc_enumerate(lam);
    CHECK(static_cast<long>(pts.size()) == std::labs(det));
    // s - s' lies in Lambda Z^l iff adj (s - s') / 2 is divisible by det.
    LinkingMatrix adj(ell, std::vector<long>(ell));
    for (std::size_t i = 0; i < ell; ++i) {
      for (std::size_t j = 0; j < ell; ++j) {
        LinkingMatrix minor;
        for (std::size_t r = 0; r < ell; ++r) {
          if (r == j) continue;
          std::vector<long> row;
          for (std::size_t c = 0; c < ell; ++c) {
            if (c != i) row.push_back(lam[r][c]);
          }
          minor.push_back(row);
        }
        adj[i][j] = ((i + j) % 2 ? -1 : 1) * (ell == 1 ? 1 : determinant(minor));
      }
    }
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        bool same = true;
        for (std::size_t i = 0; i < ell; ++i) {
          long w = 0;
          for (std::size_t k = 0; k < ell; ++k) w += adj[i][k] * (pts[a][k] - pts[b][k]) / 2;
          if (w % det != 0) same = false;
        }
        CHECK_FALSE(same);
      }
    }
  }
}

TEST_CASE("largeness") {
  CHECK(is_large({{1}}, HyperBox{{0}}));
  CHECK(is_large({{2, 1}, {1, 3}}, hat_polytope(hopf_link()).box));
  CHECK_FALSE(is_large({{2, 1}, {1, -3}}, hat_polytope(hopf_link()).box));
  CHECK(kind_of([] { is_large({{1}}, HyperBox{{0, 0}}); }) == ErrorKind::InvalidArgument);
  for (int g = 0; g <= 3; ++g) {
    for (long n = -8; n <= 8; ++n) CHECK(is_large({{n}}, HyperBox{{2 * g}}) == (n >= 2 * g - 1));
  }
}

TEST_CASE("large link surgery") {
  const LinkSurgeryResult h = large_link_surgery(hopf_link(), {{2, 1}, {1, 3}});
  CHECK(h.labels.size() == 5);
  for (const auto& [p, d] : h.labels) CHECK(d == ModuleDecomp(1, {}));
  CHECK(h.total_free_rank() == 5);
  CHECK(kind_of([] { large_link_surgery(hopf_link(), {{-2, 1}, {1, 3}}); }) == ErrorKind::NotLarge);
  CHECK(kind_of([] { large_link_surgery(hopf_link(), {{2, 0}, {0, 3}}); }) == ErrorKind::InvalidArgument);

  // One component: same answer as the knot path.
  const KnotComplex t = named_model("T23");
  const LinkSurgeryResult a = large_link_surgery(link_from_knot(t), {{5}});
  const SurgeryResult b = large_integer_surgery(t, 5);
  REQUIRE(a.labels.size() == b.labels.size());
  CHECK(a.total() == b.total());
}

TEST_CASE("face conventions give the same manifold") {
  for (const LinkingMatrix& lam : {LinkingMatrix{{2, 1}, {1, 3}}, LinkingMatrix{{3, 1}, {1, 5}}}) {
    const auto up = large_link_surgery(hopf_link(), lam, FaceConvention::UpperClosed);
    const auto lo = large_link_surgery(hopf_link(), lam, FaceConvention::LowerClosed);
    CHECK(sorted_decomps(up) == sorted_decomps(lo));
  }
  const LinkComplex c = link_from_knot(named_model("fig8"));
  for (long n : {2L, 3L, 4L}) {
    CHECK(sorted_decomps(large_link_surgery(c, {{n}}, FaceConvention::UpperClosed)) ==
          sorted_decomps(large_link_surgery(c, {{n}}, FaceConvention::LowerClosed)));
  }
}

TEST_CASE("lattice paths") {
  CHECK(lattice_path(pt({0, 0}), pt({4, 4})) == std::vector<LatticePoint>{pt({0, 0}), pt({2, 2}), pt({4, 4})});
  CHECK(lattice_path(pt({0, 0}), pt({0, 0})) == std::vector<LatticePoint>{pt({0, 0})});
  CHECK(lattice_path(pt({0, 2}), pt({4, 4})) == std::vector<LatticePoint>{pt({0, 2}), pt({2, 4}), pt({4, 4})});
  CHECK(kind_of([] { lattice_path(pt({2, 0}), pt({0, 4})); }) == ErrorKind::NotComparable);
}

TEST_CASE("geography audit") {
  const LinkComplex hopf = hopf_link();
  const LinkSurgeryResult h = large_link_surgery(hopf, {{2, 1}, {1, 3}});
  const AuditReport a = geography_audit(h, AuditContext{&hopf, hat_polytope(hopf).box});
  CHECK(a.passed());
  CHECK(a.strong);
  REQUIRE(a.skyline_path);
  CHECK(*a.skyline_path);

  const LinkComplex f8 = link_from_knot(named_model("fig8"));
  const LinkSurgeryResult f = large_link_surgery(f8, {{1}});
  const AuditReport af = geography_audit(f, AuditContext{&f8, hat_polytope(f8).box});
  CHECK(af.strong);
  CHECK_FALSE(af.total.torsion.empty());
  REQUIRE(af.homology_sphere_shape);
  CHECK(*af.homology_sphere_shape);

  LinkSurgeryResult synthetic;
  synthetic.lambda = {{7}};
  synthetic.labels = {{pt({0}), ModuleDecomp(1, {3, 1})}};
  const AuditReport as = geography_audit(synthetic);
  CHECK_FALSE(as.strong);
  CHECK_FALSE(as.passed());
  CHECK_FALSE(as.findings.empty());
}

TEST_CASE("unimodular framing gives F[U] plus a vector space") {
  const LinkComplex hopf = hopf_link();
  const LinkSurgeryResult r = large_link_surgery(hopf, {{1, 1}, {1, 2}});
  CHECK(r.labels.size() == 1);
  const AuditReport a = geography_audit(r);
  REQUIRE(a.homology_sphere_shape);
  CHECK(*a.homology_sphere_shape);
}

TEST_CASE("builders produce valid links") {
  CHECK(validate_link_complex(split_link(named_model("T23"), named_model("unknot"))).ok());
  CHECK(validate_link_complex(hopf_sum(named_model("T23"), named_model("fig8"))).ok());
  for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(validate_link_complex(random_link_complex(seed)).ok());
  const KnotComplex back = knot_from_link(link_from_knot(named_model("T34")));
  CHECK(validate_knot_complex(back).ok());
}
