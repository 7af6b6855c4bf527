#pragma once

// Integer and rational surgery on knots via the truncated mapping cone,
// the V/H/M invariants and the reduced-homology fast path.

#include <optional>
#include <vector>

#include "hfcx/knot_complex.hpp"
#include "hfcx/ualgebra.hpp"

namespace hfcx {

struct VHMTable {
  int S = 0;  // table covers s in [-S, S]
  std::vector<unsigned> V, H, M;  // index s + S

  // Tails: H_s and V_{-s} keep growing by one past the window.
  bool h_diverges_pos = false;
  bool v_diverges_neg = false;

  unsigned v_at(long s) const;
  unsigned h_at(long s) const;
  unsigned m_at(long s) const;
};

// Computes the table and verifies V_s = H_{-s}, M symmetry, the step bound
// M_i >= M_{i+1} >= M_i - 1 >= 0 for i >= 0, and M_{+-S} = 0.
// Throws InvariantViolation naming the failed property.
VHMTable vhm_table(const KnotComplex& k);

struct LabeledDecomp {
  long label = 0;    // interval label for integer slopes, residue otherwise
  long residue = 0;  // residue in [0, |p|)
  ModuleDecomp decomp;
};

struct SurgeryResult {
  long p = 0;
  long q = 1;
  int window = 0;
  std::vector<LabeledDecomp> labels;  // sorted by label

  unsigned total_free_rank() const;
  ModuleDecomp total() const;
};

// Per-label homology of A^-_s for n >= 2g - 1; throws NotLarge otherwise and
// ZeroSurgery for n = 0.
SurgeryResult large_integer_surgery(const KnotComplex& k, long n);

// Mapping-cone computation. window defaults to genus_bound + 1 and must be at
// least that; the result is recomputed at window + 2 (WindowUnstable on
// disagreement). Negative slopes are computed on the mirror.
SurgeryResult rational_surgery(const KnotComplex& k, long p, long q, std::optional<int> window = std::nullopt);
SurgeryResult integer_surgery(const KnotComplex& k, long n, std::optional<int> window = std::nullopt);

// The truncated cone for residue i of p/q > 0.
FreeUComplex surgery_cone(const KnotComplex& k, long p, long q, long i, int window);

// Reduced part (torsion only) per residue, assembled from H(A^-) torsion and
// the M-tower family with the i_s term omitted.
SurgeryResult red_fastpath(const KnotComplex& k, long p, long q);

}  // namespace hfcx
