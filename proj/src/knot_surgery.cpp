#include "hfcx/knot_surgery.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>

#include "hfcx/error.hpp"

namespace hfcx {

namespace {

long floor_div(long a, long b) {
  long d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

long mod_pos(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

unsigned tower_exponent_or_throw(const UMonomialMatrix& f, const FreeUComplex& a, const FreeUComplex& b,
                                 const char* what, int s) {
  auto e = induced_tower_exponent(f, a, b);
  if (!e) {
    throw Error(ErrorKind::InvariantViolation,
                std::string(what) + "_" + std::to_string(s) + " kills the tower");
  }
  return *e;
}

void check_slope(long p, long q) {
  if (p == 0) throw Error(ErrorKind::ZeroSurgery, "slope 0 gives b1 > 0");
  if (q <= 0) throw Error(ErrorKind::InvalidArgument, "slope denominator must be positive");
  if (std::gcd(std::labs(p), q) != 1) throw Error(ErrorKind::InvalidArgument, "slope p/q must be reduced");
}

template <class F>
std::vector<ModuleDecomp> per_label(long count, F&& fn) {
  std::vector<std::future<ModuleDecomp>> jobs;
  jobs.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) jobs.push_back(std::async(count > 1 ? std::launch::async : std::launch::deferred, fn, i));
  std::vector<ModuleDecomp> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace

unsigned VHMTable::v_at(long s) const {
  if (s > S) return 0;
  if (s < -S) return V.front() + static_cast<unsigned>(-S - s);
  return V[static_cast<std::size_t>(s + S)];
}

unsigned VHMTable::h_at(long s) const { return v_at(-s); }

unsigned VHMTable::m_at(long s) const { return std::min(v_at(s), h_at(s)); }

VHMTable vhm_table(const KnotComplex& k) {
  VHMTable t;
  t.S = k.genus_bound() + 1;
  for (int s = -t.S; s <= t.S; ++s) {
    const EdgeMaps em = edge_maps(k, s);
    t.V.push_back(tower_exponent_or_throw(em.v, em.a, em.b, "v", s));
    t.H.push_back(tower_exponent_or_throw(em.h, em.a, em.b, "h", s));
    t.M.push_back(std::min(t.V.back(), t.H.back()));
  }
  const int S = t.S;
  auto at = [&](const std::vector<unsigned>& v, int s) { return v[static_cast<std::size_t>(s + S)]; };
  for (int s = -S; s <= S; ++s) {
    if (at(t.V, s) != at(t.H, -s)) {
      throw Error(ErrorKind::InvariantViolation, "V_s = H_-s fails at s = " + std::to_string(s));
    }
    if (at(t.M, s) != at(t.M, -s)) {
      throw Error(ErrorKind::InvariantViolation, "symmetry M_-i = M_i fails at i = " + std::to_string(s));
    }
  }
  for (int i = 0; i < S; ++i) {
    const long mi = at(t.M, i);
    const long mn = at(t.M, i + 1);
    if (mi < mn || mn < mi - 1) {
      throw Error(ErrorKind::InvariantViolation, "step bound M_i >= M_{i+1} >= M_i - 1 fails at i = " + std::to_string(i));
    }
  }
  if (at(t.M, S) != 0 || at(t.M, -S) != 0) {
    throw Error(ErrorKind::InvariantViolation, "eventual vanishing M_{+-S} = 0 fails");
  }
  t.h_diverges_pos = at(t.H, S) == at(t.H, S - 1) + 1;
  t.v_diverges_neg = at(t.V, -S) == at(t.V, -S + 1) + 1;
  return t;
}

unsigned SurgeryResult::total_free_rank() const {
  unsigned r = 0;
  for (const auto& l : labels) r += l.decomp.free_rank;
  return r;
}

ModuleDecomp SurgeryResult::total() const {
  ModuleDecomp m(0, {});
  for (const auto& l : labels) m = direct_sum(m, l.decomp);
  return m;
}

SurgeryResult large_integer_surgery(const KnotComplex& k, long n) {
  if (n == 0) throw Error(ErrorKind::ZeroSurgery, "slope 0 gives b1 > 0");
  const long g = k.genus_bound();
  if (n < 2 * g - 1) {
    throw Error(ErrorKind::NotLarge, "n = " + std::to_string(n) + " is below 2g - 1 = " + std::to_string(2 * g - 1));
  }
  const long an = std::labs(n);
  SurgeryResult r;
  r.p = n;
  r.q = 1;
  r.window = 0;
  const long lo = -((an - 1) / 2);  // smallest t with -|n|/2 < t
  auto decomps = per_label(an, [&](long idx) { return homology_decomp(a_complex(k, static_cast<int>(lo + idx))); });
  for (long idx = 0; idx < an; ++idx) {
    const long t = lo + idx;
    r.labels.push_back({t, mod_pos(t, an), decomps[static_cast<std::size_t>(idx)]});
  }
  return r;
}

FreeUComplex surgery_cone(const KnotComplex& k, long p, long q, long i, int b) {
  if (p <= 0 || q <= 0) throw Error(ErrorKind::InvalidArgument, "surgery_cone needs p, q > 0");
  auto kk = [&](long s) { return floor_div(i + p * s, q); };
  long s_hi = 0;
  while (kk(s_hi) < b) ++s_hi;
  while (kk(s_hi - 1) >= b) --s_hi;
  long s_lo = 0;
  while (kk(s_lo) > -b) --s_lo;
  while (kk(s_lo + 1) <= -b) ++s_lo;

  std::map<long, EdgeMaps> maps;
  for (long s = s_lo; s <= s_hi; ++s) {
    const long key = kk(s);
    if (!maps.count(key)) maps.emplace(key, edge_maps(k, static_cast<int>(key)));
  }
  const std::size_t n = k.size();
  // Block layout: A-parts for s in [s_lo, s_hi], then B-parts for s in [s_lo+1, s_hi].
  const long na = s_hi - s_lo + 1;
  const long nb = s_hi - s_lo;
  auto a_off = [&](long s) { return static_cast<std::size_t>(s - s_lo) * n; };
  auto b_off = [&](long s) { return static_cast<std::size_t>(na + (s - s_lo - 1)) * n; };

  // Grading shifts: A(s) -> B(s) by v (degree 0), A(s) -> B(s+1) by h
  // (degree -2k). Cone degree -1 forces shB = shA - 1 - deg.
  std::vector<Rational> sh_a(static_cast<std::size_t>(na)), sh_b(static_cast<std::size_t>(nb));
  sh_a[0] = Rational(0);
  for (long s = s_lo; s < s_hi; ++s) {
    const std::size_t ia = static_cast<std::size_t>(s - s_lo);
    const Rational hdeg(-2 * kk(s));
    sh_b[ia] = sh_a[ia] - Rational(1) - hdeg;  // B(s+1)
    sh_a[ia + 1] = sh_b[ia] + Rational(1);     // via v from A(s+1)
  }

  std::vector<Rational> gr(static_cast<std::size_t>(na + nb) * n);
  std::vector<std::string> ids(gr.size());
  for (long s = s_lo; s <= s_hi; ++s) {
    const auto& em = maps.at(kk(s));
    for (std::size_t x = 0; x < n; ++x) {
      gr[a_off(s) + x] = em.a.maslov[x] + sh_a[static_cast<std::size_t>(s - s_lo)];
      ids[a_off(s) + x] = "A" + std::to_string(s) + "." + k.gens[x].id;
    }
    if (s > s_lo) {
      for (std::size_t x = 0; x < n; ++x) {
        gr[b_off(s) + x] = em.b.maslov[x] + sh_b[static_cast<std::size_t>(s - s_lo - 1)];
        ids[b_off(s) + x] = "B" + std::to_string(s) + "." + k.gens[x].id;
      }
    }
  }
  FreeUComplex cone = make_free_complex(std::move(gr), std::move(ids));
  for (long s = s_lo; s <= s_hi; ++s) {
    const auto& em = maps.at(kk(s));
    for (const auto& [key, e] : em.a.differential.entries()) cone.differential.set(a_off(s) + key.first, a_off(s) + key.second, e);
    if (s > s_lo) {
      for (const auto& [key, e] : em.b.differential.entries())
        cone.differential.set(b_off(s) + key.first, b_off(s) + key.second, e);
      for (const auto& [key, e] : em.v.entries()) cone.differential.set(b_off(s) + key.first, a_off(s) + key.second, e);
    }
    if (s < s_hi) {
      for (const auto& [key, e] : em.h.entries()) cone.differential.set(b_off(s + 1) + key.first, a_off(s) + key.second, e);
    }
  }
  return cone;
}

namespace {

SurgeryResult cone_surgery_positive(const KnotComplex& k, long p, long q, int b) {
  SurgeryResult r;
  r.p = p;
  r.q = q;
  r.window = b;
  auto decomps = per_label(p, [&](long i) { return homology_decomp(surgery_cone(k, p, q, i, b)); });
  for (long i = 0; i < p; ++i) r.labels.push_back({i, i, decomps[static_cast<std::size_t>(i)]});
  return r;
}

}  // namespace

SurgeryResult rational_surgery(const KnotComplex& k, long p, long q, std::optional<int> window) {
  check_slope(p, q);
  const int g = k.genus_bound();
  const int b = window.value_or(g + 1);
  if (b < g + 1) {
    throw Error(ErrorKind::InvalidArgument, "window " + std::to_string(b) + " is below max|A| + 1 = " + std::to_string(g + 1));
  }
  // Negative slopes: -p/q surgery is p/q surgery on the mirror with reversed orientation.
  const KnotComplex& base = k;
  KnotComplex mirrored;
  const KnotComplex* use = &base;
  if (p < 0) {
    mirrored = mirror(k);
    use = &mirrored;
  }
  const long ap = std::labs(p);
  SurgeryResult r = cone_surgery_positive(*use, ap, q, b);
  SurgeryResult check = cone_surgery_positive(*use, ap, q, b + 2);
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const auto& x = r.labels[i].decomp;
    const auto& y = check.labels[i].decomp;
    if (!(x == y)) {
      throw Error(ErrorKind::WindowUnstable, "residue " + std::to_string(i) + ": window " + std::to_string(b) + " gives " +
                                                 x.to_string() + ", window " + std::to_string(b + 2) + " gives " +
                                                 y.to_string());
    }
  }
  r.p = p;
  return r;
}

SurgeryResult integer_surgery(const KnotComplex& k, long n, std::optional<int> window) {
  SurgeryResult r = rational_surgery(k, n, 1, window);
  const long an = std::labs(n);
  // Interval labels -|n|/2 < t <= |n|/2 with residue t mod |n|.
  for (auto& l : r.labels) {
    long t = l.residue;
    if (2 * t > an) t -= an;
    l.label = t;
  }
  std::sort(r.labels.begin(), r.labels.end(), [](const auto& a, const auto& b) { return a.label < b.label; });
  return r;
}

SurgeryResult red_fastpath(const KnotComplex& k, long p, long q) {
  check_slope(p, q);
  KnotComplex mirrored;
  const KnotComplex* use = &k;
  if (p < 0) {
    mirrored = mirror(k);
    use = &mirrored;
  }
  const long ap = std::labs(p);
  const long g = use->genus_bound();
  const VHMTable t = vhm_table(*use);

  std::map<long, std::vector<unsigned>> torsion_cache;
  auto torsion_of = [&](long kidx) -> const std::vector<unsigned>& {
    auto it = torsion_cache.find(kidx);
    if (it == torsion_cache.end()) {
      it = torsion_cache.emplace(kidx, homology_decomp(a_complex(*use, static_cast<int>(kidx))).torsion).first;
    }
    return it->second;
  };

  SurgeryResult r;
  r.p = p;
  r.q = q;
  for (long s = 0; s < ap; ++s) {
    // Only indices with |floor((s + p i)/q)| <= g + 1 can contribute.
    const long reach = (g + 2) * q / ap + 2;
    long i_s = 0;
    long best = -1;
    std::vector<unsigned> parts;
    std::vector<std::pair<long, long>> terms;  // (i, k)
    for (long i = -reach - 1; i <= reach + 1; ++i) {
      const long kidx = floor_div(s + ap * i, q);
      terms.emplace_back(i, kidx);
      if (best < 0 || std::labs(kidx) < best) {
        best = std::labs(kidx);
        i_s = i;
      }
    }
    for (const auto& [i, kidx] : terms) {
      if (std::labs(kidx) < g + 1) {
        const auto& tor = torsion_of(kidx);
        parts.insert(parts.end(), tor.begin(), tor.end());
      }
      if (i != i_s) {
        const unsigned m = t.m_at(kidx);
        if (m > 0) parts.push_back(m);
      }
    }
    r.labels.push_back({s, s, ModuleDecomp(0, std::move(parts))});
  }
  return r;
}

}  // namespace hfcx
