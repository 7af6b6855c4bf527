#pragma once

// Framing-matrix lattice geometry, the largeness test, large surgery on links
// and the whole-manifold geography audit.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hfcx/link_complex.hpp"
#include "hfcx/ualgebra.hpp"

namespace hfcx {

using LinkingMatrix = std::vector<std::vector<long>>;

long determinant(const LinkingMatrix& m);

// Which faces of the parallelepiped P(L) = {L t : t in (-1/2, 1/2]^l} count.
enum class FaceConvention {
  UpperClosed,  // t in (-1/2, 1/2]
  LowerClosed,  // t in [-1/2, 1/2)
};

// Points of H(L) in P(Lambda); there are |det Lambda| of them. Coordinates
// doubled. Throws DegenerateFraming when det = 0, InvalidArgument on a
// non-symmetric matrix.
std::vector<LatticePoint> spinc_enumerate(const LinkingMatrix& lambda,
                                          FaceConvention conv = FaceConvention::UpperClosed);

// Lattice points within L-infinity distance one of the set.
std::vector<LatticePoint> lattice_closure(const std::vector<LatticePoint>& pts, const LinkingMatrix& lambda);

// Every framing at least 2 q_i - 1 and every lattice point of the box in the
// closure of P(Lambda). A singular matrix is large only for one component
// with framing 0 (P is then the single point 0).
bool is_large(const LinkingMatrix& lambda, const HyperBox& box);

struct LinkSurgeryResult {
  LinkingMatrix lambda;
  std::vector<std::pair<LatticePoint, ModuleDecomp>> labels;  // sorted by point

  unsigned total_free_rank() const;
  ModuleDecomp total() const;
};

LinkSurgeryResult large_link_surgery(const LinkComplex& c, const LinkingMatrix& lambda,
                                     FaceConvention conv = FaceConvention::UpperClosed);

// Adjacent steps from start to end, raising every deficient coordinate by one
// per step. Throws NotComparable unless end >= start.
std::vector<LatticePoint> lattice_path(const LatticePoint& start, const LatticePoint& end);

struct AuditContext {
  const LinkComplex* complex = nullptr;
  HyperBox box;
};

struct AuditReport {
  ModuleDecomp total;
  bool lin = false;
  bool strong = false;
  // Path from a maximal-torsion label to the torsion-free top corner.
  std::optional<bool> skyline_path;
  std::vector<LatticePoint> path;
  std::optional<bool> homology_sphere_shape;  // set when |det| = 1
  std::vector<std::string> findings;

  bool passed() const;
};

AuditReport geography_audit(const LinkSurgeryResult& result, const std::optional<AuditContext>& ctx = std::nullopt);

}  // namespace hfcx
