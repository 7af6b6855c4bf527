#pragma once

// Multi-filtered link complexes over F2[U_1..U_l]. Alexander gradings live in
// a half-integer lattice and are stored doubled.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hfcx/knot_complex.hpp"
#include "hfcx/oracle.hpp"
#include "hfcx/rational.hpp"
#include "hfcx/ualgebra.hpp"

namespace hfcx {

// Point of H(L), doubled coordinates.
using LatticePoint = std::vector<int>;

std::string lattice_to_string(const LatticePoint& p);

struct LinkGenerator {
  std::string id;
  Rational maslov;
  LatticePoint alex2;
};

struct LinkEntry {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::vector<int> m;  // exponent of each U_i; negative values fail validation
};

struct LinkComplex {
  std::size_t ell = 1;
  std::vector<std::vector<int>> linking;  // symmetric, zero diagonal
  std::vector<LinkGenerator> gens;
  std::vector<LinkEntry> entries;

  std::size_t size() const { return gens.size(); }
  // Parity of 2 s_i for points of H(L).
  int coset_parity(std::size_t i) const;
};

struct HyperBox {
  std::vector<int> q2;  // doubled half-widths
  bool contains(const LatticePoint& s) const;
};

// Checks "shape", "exponents", "coset", "d_squared", "maslov_drop",
// "filtration"; for one component also the knot checks.
ValidationReport validate_link_complex(const LinkComplex& c);

struct Polytope {
  std::vector<LatticePoint> support;  // sorted
  HyperBox box;
};

// Associated graded with all U_i = 0, field homology per multidegree.
Polytope hat_polytope(const LinkComplex& c);

// A^-_s with its U = U_1 module structure read through window homology.
struct LinkAComplex {
  MultiFreeComplex complex;
  LatticePoint s2;
  unsigned N = 0;  // starting depth
};

// N defaults to half the grading spread + box diameter + 2.
LinkAComplex a_minus_link(const LinkComplex& c, const LatticePoint& s2, std::optional<HyperBox> box = std::nullopt);

// Depth N against 2N, doubling up to three times; TruncationUnstable if no
// agreement is reached.
ModuleDecomp link_homology_decomp(const LinkAComplex& a);

LatticePoint clamp_to_box(const LatticePoint& s2, const HyperBox& box);

// ---- builders ----

LinkComplex link_from_knot(const KnotComplex& k);
// One-component link back to a knot complex (flip found by search).
KnotComplex knot_from_link(const LinkComplex& c);

LinkComplex hopf_link();
// K1 and K2 far apart: CFK(K1) x CFK(K2) x W with W = <a, b>, da = (U1 + U2) b.
LinkComplex split_link(const KnotComplex& k1, const KnotComplex& k2);
// Hopf link with K1 summed into the first component and K2 into the second.
LinkComplex hopf_sum(const KnotComplex& k1, const KnotComplex& k2);

// Two-component link built as a split union or a Hopf sum of small random
// knot complexes, kept below `max_gens` generators.
LinkComplex random_link_complex(std::uint64_t seed, std::size_t max_gens = 72);

}  // namespace hfcx
