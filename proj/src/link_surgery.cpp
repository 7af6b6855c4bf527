#include "hfcx/link_surgery.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <future>
#include <set>

#include "hfcx/error.hpp"
#include "hfcx/geography.hpp"

namespace hfcx {

namespace {

LinkingMatrix minor_of(const LinkingMatrix& m, std::size_t r, std::size_t c) {
  LinkingMatrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == r) continue;
    std::vector<long> row;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != c) row.push_back(m[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

void check_square_symmetric(const LinkingMatrix& m) {
  if (m.empty()) throw Error(ErrorKind::InvalidArgument, "empty framing matrix");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw Error(ErrorKind::InvalidArgument, "framing matrix is not square");
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[i][j] != m[j][i]) throw Error(ErrorKind::InvalidArgument, "framing matrix is not symmetric");
    }
  }
}

int parity_of(const LinkingMatrix& m, std::size_t i) {
  long sum = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j != i) sum += m[i][j];
  }
  return static_cast<int>(((sum % 2) + 2) % 2);
}

// Calls fn on every point of H(L) inside the doubled box [-bound_i, bound_i].
void for_each_point(const LinkingMatrix& m, const std::vector<long>& bound,
                    const std::function<void(const LatticePoint&)>& fn) {
  const std::size_t ell = m.size();
  LatticePoint cur(ell);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ell) {
      fn(cur);
      return;
    }
    const int par = parity_of(m, i);
    for (long v = -bound[i]; v <= bound[i]; ++v) {
      if (((v % 2) + 2) % 2 != par) continue;
      cur[i] = static_cast<int>(v);
      rec(i + 1);
    }
  };
  rec(0);
}

std::vector<LatticePoint> neighbours(const LatticePoint& p) {
  std::vector<LatticePoint> out;
  const std::size_t ell = p.size();
  std::vector<int> off(ell, -2);
  while (true) {
    LatticePoint q = p;
    for (std::size_t i = 0; i < ell; ++i) q[i] += off[i];
    out.push_back(std::move(q));
    std::size_t i = 0;
    while (i < ell && off[i] == 2) off[i++] = -2;
    if (i == ell) break;
    off[i] += 2;
  }
  return out;
}

}  // namespace

long determinant(const LinkingMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  long det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const long term = m[0][j] * determinant(minor_of(m, 0, j));
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

std::vector<LatticePoint> spinc_enumerate(const LinkingMatrix& lambda, FaceConvention conv) {
  check_square_symmetric(lambda);
  const std::size_t ell = lambda.size();
  const long det = determinant(lambda);
  if (det == 0) throw Error(ErrorKind::DegenerateFraming, "det of the framing matrix is 0");
  const long ad = std::labs(det);
  const long sign = det > 0 ? 1 : -1;
  LinkingMatrix adj(ell, std::vector<long>(ell));
  if (ell == 1) {
    adj[0][0] = 1;
  } else {
    for (std::size_t i = 0; i < ell; ++i) {
      for (std::size_t j = 0; j < ell; ++j) {
        const long cof = determinant(minor_of(lambda, i, j));
        adj[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
      }
    }
  }
  std::vector<long> bound(ell, 0);
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t j = 0; j < ell; ++j) bound[i] += std::labs(lambda[i][j]);
  }
  std::vector<LatticePoint> out;
  // t = adj s2 / (2 det); require -1/2 < t_j <= 1/2 (or the mirrored faces).
  for_each_point(lambda, bound, [&](const LatticePoint& s2) {
    for (std::size_t j = 0; j < ell; ++j) {
      long w = 0;
      for (std::size_t k = 0; k < ell; ++k) w += adj[j][k] * s2[k];
      w *= sign;
      const bool in = conv == FaceConvention::UpperClosed ? (-ad < w && w <= ad) : (-ad <= w && w < ad);
      if (!in) return;
    }
    out.push_back(s2);
  });
  if (static_cast<long>(out.size()) != ad) {
    throw Error(ErrorKind::InvariantViolation, "P(Lambda) has " + std::to_string(out.size()) + " points, |det| = " +
                                                   std::to_string(ad));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> lattice_closure(const std::vector<LatticePoint>& pts, const LinkingMatrix&) {
  std::set<LatticePoint> out;
  for (const auto& p : pts) {
    for (auto& q : neighbours(p)) out.insert(std::move(q));
  }
  return {out.begin(), out.end()};
}

bool is_large(const LinkingMatrix& lambda, const HyperBox& box) {
  check_square_symmetric(lambda);
  const std::size_t ell = lambda.size();
  if (box.q2.size() != ell) throw Error(ErrorKind::InvalidArgument, "box dimension does not match the framing matrix");
  for (std::size_t i = 0; i < ell; ++i) {
    if (lambda[i][i] < box.q2[i] - 1) return false;
  }
  std::vector<LatticePoint> p;
  if (determinant(lambda) == 0) {
    if (ell != 1) return false;
    p = {LatticePoint{0}};
  } else {
    p = spinc_enumerate(lambda);
  }
  const auto cl = lattice_closure(p, lambda);
  const std::set<LatticePoint> closure(cl.begin(), cl.end());
  std::vector<long> bound(box.q2.begin(), box.q2.end());
  bool all = true;
  for_each_point(lambda, bound, [&](const LatticePoint& s) {
    if (!closure.count(s)) all = false;
  });
  return all;
}

unsigned LinkSurgeryResult::total_free_rank() const {
  unsigned r = 0;
  for (const auto& [pt, d] : labels) r += d.free_rank;
  return r;
}

ModuleDecomp LinkSurgeryResult::total() const {
  ModuleDecomp m(0, {});
  for (const auto& [pt, d] : labels) m = direct_sum(m, d);
  return m;
}

LinkSurgeryResult large_link_surgery(const LinkComplex& c, const LinkingMatrix& lambda, FaceConvention conv) {
  check_square_symmetric(lambda);
  if (lambda.size() != c.ell) throw Error(ErrorKind::InvalidArgument, "framing matrix size differs from component count");
  for (std::size_t i = 0; i < c.ell; ++i) {
    for (std::size_t j = 0; j < c.ell; ++j) {
      if (i != j && lambda[i][j] != c.linking[i][j]) {
        throw Error(ErrorKind::InvalidArgument, "off-diagonal framing entries must equal the linking numbers");
      }
    }
  }
  const auto pts = spinc_enumerate(lambda, conv);
  const HyperBox box = hat_polytope(c).box;
  if (!is_large(lambda, box)) throw Error(ErrorKind::NotLarge, "box is not inside the closure of P(Lambda)");
  std::vector<std::future<ModuleDecomp>> jobs;
  for (const auto& p : pts) {
    jobs.push_back(std::async(pts.size() > 1 ? std::launch::async : std::launch::deferred,
                              [&c, &box, p] { return link_homology_decomp(a_minus_link(c, p, box)); }));
  }
  LinkSurgeryResult r;
  r.lambda = lambda;
  for (std::size_t i = 0; i < pts.size(); ++i) r.labels.emplace_back(pts[i], jobs[i].get());
  return r;
}

std::vector<LatticePoint> lattice_path(const LatticePoint& start, const LatticePoint& end) {
  if (start.size() != end.size()) throw Error(ErrorKind::InvalidArgument, "points have different dimensions");
  for (std::size_t i = 0; i < start.size(); ++i) {
    if (end[i] < start[i]) {
      throw Error(ErrorKind::NotComparable, lattice_to_string(end) + " is not above " + lattice_to_string(start));
    }
    if ((end[i] - start[i]) % 2 != 0) throw Error(ErrorKind::InvalidArgument, "points lie in different cosets");
  }
  std::vector<LatticePoint> path = {start};
  LatticePoint cur = start;
  while (cur != end) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] < end[i]) cur[i] += 2;
    }
    path.push_back(cur);
  }
  return path;
}

bool AuditReport::passed() const {
  return lin && strong && skyline_path.value_or(true) && homology_sphere_shape.value_or(true);
}

AuditReport geography_audit(const LinkSurgeryResult& result, const std::optional<AuditContext>& ctx) {
  AuditReport rep;
  rep.total = result.total();
  rep.lin = lin_check(rep.total);
  rep.strong = strong_check(rep.total);
  if (!rep.lin) rep.findings.push_back("Lin restriction fails: " + rep.total.to_string());
  if (!rep.strong) rep.findings.push_back("strong geography fails: " + rep.total.to_string());

  if (!result.lambda.empty() && std::labs(determinant(result.lambda)) == 1) {
    bool ok = rep.total.free_rank == 1 &&
              std::all_of(rep.total.torsion.begin(), rep.total.torsion.end(), [](unsigned k) { return k == 1; });
    rep.homology_sphere_shape = ok;
    if (!ok) rep.findings.push_back("|det| = 1 but decomposition is " + rep.total.to_string());
  }

  if (ctx && ctx->complex && !result.labels.empty()) {
    const auto& c = *ctx->complex;
    const HyperBox& box = ctx->box;
    std::size_t best = 0;
    for (std::size_t i = 1; i < result.labels.size(); ++i) {
      if (annihilator_exponent(result.labels[i].second) > annihilator_exponent(result.labels[best].second)) best = i;
    }
    const LatticePoint start = result.labels[best].first;
    LatticePoint cur = clamp_to_box(start, box);
    const LatticePoint top = box.q2;

    std::vector<ModuleDecomp> seq = {result.labels[best].second};
    auto decomp_at = [&](const LatticePoint& p) { return link_homology_decomp(a_minus_link(c, p, box)); };
    bool ok = true;
    if (cur != start) {
      const ModuleDecomp d = decomp_at(cur);
      if (!(d == seq.front())) {
        ok = false;
        rep.findings.push_back("clamping " + lattice_to_string(start) + " changed the homology");
      }
    }
    // A start on the boundary of the closure first steps inward.
    const auto cl = lattice_closure(spinc_enumerate(result.lambda), result.lambda);
    const std::set<LatticePoint> closure(cl.begin(), cl.end());
    bool boundary = false;
    for (const auto& nb : neighbours(cur)) {
      if (!closure.count(nb)) boundary = true;
    }
    rep.path = {start};
    if (boundary && cur != top) {
      rep.path.push_back(cur);
      cur = lattice_path(cur, top)[1];
    }
    for (const auto& p : lattice_path(cur, top)) {
      if (rep.path.back() != p) rep.path.push_back(p);
    }
    for (std::size_t i = 1; i < rep.path.size(); ++i) seq.push_back(decomp_at(rep.path[i]));
    if (!seq.back().torsion.empty()) {
      ok = false;
      rep.findings.push_back("top corner " + lattice_to_string(top) + " is not torsion-free");
    }
    if (!intermediate_value_check(seq)) {
      ok = false;
      rep.findings.push_back("skyline similarity fails along the lattice path");
    }
    rep.skyline_path = ok;
  }
  return rep;
}

}  // namespace hfcx
