#pragma once

// Doubly filtered knot-type complexes over F2[U,U^-1], their south-west
// sub/quotient complexes, the A_s complexes and the v/h edge maps.

#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hfcx/rational.hpp"
#include "hfcx/ualgebra.hpp"

namespace hfcx {

struct KnotGenerator {
  std::string id;
  Rational maslov;
  int alexander = 0;
};

// Differential entry: src -> U^u dst.
struct KnotEntry {
  std::size_t src = 0;
  std::size_t dst = 0;
  unsigned u = 0;
  bool operator==(const KnotEntry&) const = default;
};

// Either an involution on generators (the filtration swap) or an explicit
// map from the C{j<=0} basis to the C{i<=0} basis (rows = targets).
struct FlipSpec {
  std::optional<std::vector<std::size_t>> involution;
  std::optional<UMonomialMatrix> explicit_map;

  bool present() const { return involution.has_value() || explicit_map.has_value(); }
};

struct KnotComplex {
  std::vector<KnotGenerator> gens;
  std::vector<KnotEntry> differential;
  FlipSpec flip;

  std::size_t size() const { return gens.size(); }
  // max |alexander|, the genus bound used for windows and thresholds.
  int genus_bound() const;
  std::optional<std::size_t> index_of(const std::string& id) const;
};

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  const ValidationCheck* find(const std::string& name) const;
  std::string to_string() const;
};

// Check names: "d_squared", "maslov_drop", "filtration", "homology_axiom", "flip".
ValidationReport validate_knot_complex(const KnotComplex& k);

// Union of quadrants {i <= a, j <= b}; kInf stands for an absent bound.
// Optionally minus another such region (a quotient complex).
class SouthWestRegion {
 public:
  static constexpr int kInf = INT_MAX / 4;
  struct Corner {
    int a;
    int b;
    bool operator==(const Corner&) const = default;
  };

  static SouthWestRegion half_plane_i(int a) { return SouthWestRegion({{a, kInf}}); }
  static SouthWestRegion half_plane_j(int b) { return SouthWestRegion({{kInf, b}}); }
  static SouthWestRegion quadrant(int a, int b) { return SouthWestRegion({{a, b}}); }
  static SouthWestRegion staircase(std::vector<Corner> corners) { return SouthWestRegion(std::move(corners)); }
  static SouthWestRegion intersection(const SouthWestRegion& x, const SouthWestRegion& y);
  // x minus y; nesting is checked when the complex is built.
  static SouthWestRegion difference(const SouthWestRegion& x, const SouthWestRegion& y);

  const std::vector<Corner>& corners() const { return corners_; }
  const std::optional<std::vector<Corner>>& removed() const { return removed_; }
  bool is_difference() const { return removed_.has_value(); }

  bool contains(long i, long j) const;

 private:
  explicit SouthWestRegion(std::vector<Corner> c) : corners_(std::move(c)) {}
  std::vector<Corner> corners_;
  std::optional<std::vector<Corner>> removed_;
};

// Free F[U] model of C_*S. For a difference S1 - S2 this is the mapping cone
// of the inclusion C_*S2 -> C_*S1, quasi-isomorphic to the quotient; an empty
// difference gives the zero complex. Throws NotSouthWest, NotNested.
FreeUComplex region_complex(const KnotComplex& k, const SouthWestRegion& s);

// A^-_s = C{i <= 0, j <= s}.
FreeUComplex a_complex(const KnotComplex& k, int s);
// B^- = C{i <= 0}.
FreeUComplex b_complex(const KnotComplex& k);

struct EdgeMaps {
  FreeUComplex a;  // A^-_s
  FreeUComplex b;  // B^-
  UMonomialMatrix v;  // degree 0
  UMonomialMatrix h;  // degree -2s
};

// Throws FlipUndefined when the flip is missing or is not a chain map.
EdgeMaps edge_maps(const KnotComplex& k, int s);

// Dual complex: alexander and maslov negated, arrows reversed.
KnotComplex mirror(const KnotComplex& k);

// Searches for a filtration-swapping involution preserving the differential.
std::optional<std::vector<std::size_t>> find_involution(const KnotComplex& k, std::size_t node_cap = 200000);

// ---- model builders ----

// Lattice node of a model: the translate of a generator sitting at (i, j)
// with grading p. Arrows run between nodes with i, j non-increasing.
struct ModelNode {
  std::string id;
  int i = 0;
  int j = 0;
  int p = 0;
};

// Builds the complex; the flip is the (i, j) swap when the node set is
// symmetric under it.
KnotComplex from_nodes(const std::vector<ModelNode>& nodes, const std::vector<std::pair<std::size_t, std::size_t>>& arrows);

// Staircase with the given step lengths (empty = unknot). Throws BadSteps for
// an odd count or a non-positive length.
KnotComplex staircase(const std::vector<int>& steps);
// Square with side n whose lower-left corner is (ci, cj) and top grading g.
KnotComplex box(int n, int ci, int cj, int g);
KnotComplex direct_sum(const std::vector<KnotComplex>& parts);
KnotComplex grading_shift(const KnotComplex& k, int shift);

// Corpus models: "unknot", "T23", "T25", "T27", "T34", "fig8".
KnotComplex named_model(const std::string& name);
std::vector<std::string> model_names();

}  // namespace hfcx
