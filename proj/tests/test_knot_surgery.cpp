#include <algorithm>
#include <functional>

#include "doctest.h"
#include "hfcx/error.hpp"
#include "hfcx/geography.hpp"
#include "hfcx/knot_surgery.hpp"
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

bool lspace(const SurgeryResult& r) {
  return std::all_of(r.labels.begin(), r.labels.end(),
                     [](const LabeledDecomp& l) { return l.decomp == ModuleDecomp(1, {}); });
}

}  // namespace

TEST_CASE("V, H, M tables") {
  const VHMTable u = vhm_table(named_model("unknot"));
  for (long s = -5; s <= 5; ++s) {
    CHECK(u.m_at(s) == 0);
    if (s >= 0) CHECK(u.v_at(s) == 0);
    if (s <= 0) CHECK(u.h_at(s) == 0);
  }
  // Below the window V keeps growing: V_{-s} = V_s + s.
  CHECK(u.v_at(-3) == 3);

  const VHMTable t = vhm_table(named_model("T23"));
  CHECK(t.v_at(0) == 1);
  for (long s = 1; s <= 4; ++s) CHECK(t.v_at(s) == 0);
  for (long s = -4; s <= 4; ++s) {
    CHECK(t.h_at(s) == t.v_at(-s));
    CHECK(t.m_at(s) == (s == 0 ? 1u : 0u));
  }

  const VHMTable f = vhm_table(named_model("fig8"));
  for (long s = -4; s <= 4; ++s) CHECK(f.m_at(s) == 0);
}

TEST_CASE("large integer surgery") {
  const SurgeryResult u = large_integer_surgery(named_model("unknot"), 3);
  CHECK(u.labels.size() == 3);
  CHECK(lspace(u));
  const SurgeryResult t = large_integer_surgery(named_model("T23"), 5);
  CHECK(t.labels.size() == 5);
  CHECK(lspace(t));
  const SurgeryResult f = large_integer_surgery(named_model("fig8"), 5);
  CHECK(f.total_free_rank() == 5);
  const ModuleDecomp ft = f.total();
  CHECK(std::all_of(ft.torsion.begin(), ft.torsion.end(), [](unsigned k) { return k == 1; }));
  CHECK(kind_of([] { large_integer_surgery(named_model("T25"), 2); }) == ErrorKind::NotLarge);
  CHECK(kind_of([] { large_integer_surgery(named_model("T23"), 0); }) == ErrorKind::ZeroSurgery);
}

TEST_CASE("integer surgery through the cone") {
  const SurgeryResult u = integer_surgery(named_model("unknot"), -4);
  CHECK(u.labels.size() == 4);
  CHECK(lspace(u));
  const SurgeryResult t = integer_surgery(named_model("T23"), 1);
  CHECK(t.labels.size() == 1);
  CHECK(lspace(t));
  const SurgeryResult r = integer_surgery(named_model("T27"), -1);
  REQUIRE(r.labels.size() == 1);
  const ModuleDecomp d = r.labels[0].decomp;
  CHECK(d.free_rank == 1);
  CHECK(std::count(d.torsion.begin(), d.torsion.end(), 2u) >= 1);
  CHECK(std::count(d.torsion.begin(), d.torsion.end(), 1u) >= 1);
  CHECK(kind_of([] { integer_surgery(named_model("T23"), 0); }) == ErrorKind::ZeroSurgery);
}

TEST_CASE("large surgery agrees with the cone") {
  for (const char* name : {"unknot", "T23", "T25", "fig8", "T34"}) {
    const KnotComplex k = named_model(name);
    const long n = std::max(1, 2 * k.genus_bound() - 1) + 1;
    const SurgeryResult a = large_integer_surgery(k, n);
    const SurgeryResult b = integer_surgery(k, n);
    REQUIRE(a.labels.size() == b.labels.size());
    ModuleDecomp ta = a.total();
    ModuleDecomp tb = b.total();
    CHECK(ta == tb);
  }
}

TEST_CASE("rational surgery") {
  const SurgeryResult u = rational_surgery(named_model("unknot"), 1, 2);
  CHECK(u.labels.size() == 1);
  CHECK(lspace(u));
  const SurgeryResult t = rational_surgery(named_model("T23"), 3, 2);
  CHECK(t.labels.size() == 3);
  CHECK(lspace(t));
  const SurgeryResult f = rational_surgery(named_model("fig8"), 1, 2);
  REQUIRE(f.labels.size() == 1);
  const ModuleDecomp d = f.labels[0].decomp;
  CHECK(d.free_rank == 1);
  CHECK_FALSE(d.torsion.empty());
  CHECK(std::all_of(d.torsion.begin(), d.torsion.end(), [](unsigned k) { return k == 1; }));
  CHECK(lin_check(d));
}

TEST_CASE("window handling") {
  const KnotComplex t = named_model("T25");
  const SurgeryResult a = rational_surgery(t, 3, 2);
  const SurgeryResult b = rational_surgery(t, 3, 2, t.genus_bound() + 4);
  CHECK(a.total() == b.total());
  CHECK_THROWS_AS(rational_surgery(t, 3, 2, 1), Error);
}

TEST_CASE("cone pieces pass the oracle") {
  const KnotComplex k = named_model("T34");
  const FreeUComplex c = surgery_cone(k, 3, 2, 1, k.genus_bound() + 1);
  CHECK(check_free_complex(c).empty());
  CHECK(homology_decomp(c) == oracle_homology(c));
}

TEST_CASE("fast path") {
  const SurgeryResult t = red_fastpath(named_model("T23"), 1, 1);
  for (const auto& l : t.labels) CHECK(l.decomp.torsion.empty());
  for (long p : {1L, 2L, 5L}) {
    for (const auto& l : red_fastpath(named_model("unknot"), p, 3).labels) CHECK(l.decomp.torsion.empty());
  }
  const SurgeryResult f = red_fastpath(named_model("fig8"), 1, 2);
  const SurgeryResult c = rational_surgery(named_model("fig8"), 1, 2);
  CHECK(f.total().torsion == c.total().torsion);
}

TEST_CASE("crosscheck") {
  CHECK(crosscheck_surgery(named_model("T23"), 1, 1).match);
  CHECK(crosscheck_surgery(named_model("fig8"), 1, 2).match);
  for (long p : {-3L, 1L, 4L}) CHECK(crosscheck_surgery(named_model("unknot"), p, 1).match);
}

TEST_CASE("negative slopes go through the mirror") {
  const KnotComplex t = named_model("T23");
  const SurgeryResult a = rational_surgery(t, -3, 2);
  const SurgeryResult b = rational_surgery(mirror(t), 3, 2);
  CHECK(a.total() == b.total());
  CHECK(a.total_free_rank() == 3);
}
