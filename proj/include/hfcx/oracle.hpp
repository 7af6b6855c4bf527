#pragma once

// Independent checks: homology over the field from graded pieces with the
// U-action as a linear operator, random complexes, and surgery cross-checks.

#include <cstdint>
#include <string>
#include <vector>

#include "hfcx/knot_complex.hpp"
#include "hfcx/knot_surgery.hpp"
#include "hfcx/ualgebra.hpp"

namespace hfcx {

// Free complex over F2[U_1..U_l]; entries may repeat a (src, dst) pair.
struct MultiFreeComplex {
  struct Entry {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<unsigned> m;
  };
  std::size_t ell = 1;
  std::vector<Rational> maslov;
  std::vector<Entry> entries;
};

MultiFreeComplex to_multi(const FreeUComplex& c);

// Gaussian elimination of every unit entry; the result is homotopy
// equivalent, usually far smaller, and may carry polynomial entries.
MultiFreeComplex cancel_unit_entries(const MultiFreeComplex& c);

// Homology read off graded pieces down to depth N below the lowest generator,
// with U = U_1. Strings longer than N count as towers.
ModuleDecomp window_homology(const MultiFreeComplex& c, unsigned N);

// window_homology at N and 2N; TruncationTooLow if they differ.
ModuleDecomp truncated_field_homology(const FreeUComplex& c, unsigned N);

// Starts at half the grading spread + 4 and doubles up to three times.
ModuleDecomp oracle_homology(const FreeUComplex& c);
unsigned default_truncation(const FreeUComplex& c);

struct RandomKnotParams {
  int max_stair_pairs = 3;  // staircase has 2 * pairs steps
  int max_step = 2;
  int max_boxes = 2;
  int max_box_size = 2;
  int deformations = 6;
};

// Symmetric staircase plus boxes, then random filtered basis changes that
// respect the flip.
KnotComplex random_knot_complex(std::uint64_t seed, const RandomKnotParams& params = {});

// Applies `count` random flip-compatible filtered basis changes.
KnotComplex deform(const KnotComplex& k, std::uint64_t seed, int count);

struct CrosscheckReport {
  bool match = true;
  std::string detail;  // first mismatch
};

// Cone torsion against the fast path, per residue.
CrosscheckReport crosscheck_surgery(const KnotComplex& k, long p, long q);

}  // namespace hfcx
