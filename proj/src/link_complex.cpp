#include "hfcx/link_complex.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hfcx/error.hpp"
#include "hfcx/gf2_matrix.hpp"

namespace hfcx {

std::string lattice_to_string(const LatticePoint& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ",";
    os << Rational(p[i], 2).to_string();
  }
  os << ")";
  return os.str();
}

int LinkComplex::coset_parity(std::size_t i) const {
  int sum = 0;
  for (std::size_t j = 0; j < ell; ++j) {
    if (j != i) sum += linking[i][j];
  }
  return ((sum % 2) + 2) % 2;
}

bool HyperBox::contains(const LatticePoint& s) const {
  for (std::size_t i = 0; i < q2.size(); ++i) {
    if (s[i] > q2[i] || s[i] < -q2[i]) return false;
  }
  return true;
}

namespace {

std::string shape_witness(const LinkComplex& c) {
  if (c.ell == 0) return "no components";
  if (c.linking.size() != c.ell) return "linking matrix has wrong size";
  for (std::size_t i = 0; i < c.ell; ++i) {
    if (c.linking[i].size() != c.ell) return "linking matrix has wrong size";
    if (c.linking[i][i] != 0) return "linking matrix diagonal must be zero";
    for (std::size_t j = 0; j < c.ell; ++j) {
      if (c.linking[i][j] != c.linking[j][i]) return "linking matrix is not symmetric";
    }
  }
  for (const auto& g : c.gens) {
    if (g.alex2.size() != c.ell) return "generator " + g.id + " has wrong alexander length";
  }
  for (const auto& e : c.entries) {
    if (e.src >= c.size() || e.dst >= c.size()) return "entry index out of range";
    if (e.m.size() != c.ell) return "entry has wrong exponent length";
  }
  return {};
}

}  // namespace

ValidationReport validate_link_complex(const LinkComplex& c) {
  ValidationReport rep;
  ValidationCheck shape{"shape", true, shape_witness(c)};
  shape.passed = shape.witness.empty();
  rep.checks.push_back(shape);
  if (!shape.passed) {
    for (const char* name : {"exponents", "coset", "d_squared", "maslov_drop", "filtration"}) {
      rep.checks.push_back({name, false, "not evaluated"});
    }
    return rep;
  }

  ValidationCheck expo{"exponents", true, {}};
  ValidationCheck maslov{"maslov_drop", true, {}};
  ValidationCheck filt{"filtration", true, {}};
  for (const auto& e : c.entries) {
    const auto& s = c.gens[e.src];
    const auto& d = c.gens[e.dst];
    long total = 0;
    for (std::size_t i = 0; i < c.ell; ++i) {
      if (e.m[i] < 0 && expo.passed) {
        expo.passed = false;
        expo.witness = s.id + " -> " + d.id + " has a negative exponent";
      }
      total += e.m[i];
      if (filt.passed && d.alex2[i] - 2 * e.m[i] > s.alex2[i]) {
        filt.passed = false;
        filt.witness = s.id + " -> " + d.id + " raises filtration " + std::to_string(i + 1);
      }
    }
    if (maslov.passed && d.maslov - Rational(2 * total) != s.maslov - Rational(1)) {
      maslov.passed = false;
      maslov.witness = s.id + " -> " + d.id;
    }
  }

  ValidationCheck coset{"coset", true, {}};
  for (const auto& g : c.gens) {
    for (std::size_t i = 0; i < c.ell && coset.passed; ++i) {
      if (((g.alex2[i] % 2) + 2) % 2 != c.coset_parity(i)) {
        coset.passed = false;
        coset.witness = "alexander of " + g.id + " outside H(L) in component " + std::to_string(i + 1);
      }
    }
  }

  ValidationCheck dsq{"d_squared", true, {}};
  std::vector<std::vector<std::size_t>> from(c.size());
  for (std::size_t k = 0; k < c.entries.size(); ++k) from[c.entries[k].src].push_back(k);
  std::map<std::pair<std::size_t, std::size_t>, std::set<std::vector<int>>> sq;
  for (const auto& e1 : c.entries) {
    for (std::size_t k : from[e1.dst]) {
      const auto& e2 = c.entries[k];
      std::vector<int> m = e1.m;
      for (std::size_t i = 0; i < c.ell; ++i) m[i] += e2.m[i];
      auto& bucket = sq[{e1.src, e2.dst}];
      if (!bucket.erase(m)) bucket.insert(m);
    }
  }
  for (const auto& [key, terms] : sq) {
    if (!terms.empty()) {
      dsq.passed = false;
      dsq.witness = "d^2(" + c.gens[key.first].id + ") contains " + c.gens[key.second].id;
      break;
    }
  }
  rep.checks.push_back(expo);
  rep.checks.push_back(coset);
  rep.checks.push_back(dsq);
  rep.checks.push_back(maslov);
  rep.checks.push_back(filt);

  if (c.ell == 1 && rep.ok()) {
    const ValidationReport kr = validate_knot_complex(knot_from_link(c));
    for (const auto& ch : kr.checks) {
      if (ch.name == "homology_axiom" || ch.name == "flip") rep.checks.push_back({"knot." + ch.name, ch.passed, ch.witness});
    }
  }
  return rep;
}

Polytope hat_polytope(const LinkComplex& c) {
  std::map<LatticePoint, std::vector<std::size_t>> groups;
  for (std::size_t x = 0; x < c.size(); ++x) groups[c.gens[x].alex2].push_back(x);
  std::vector<std::size_t> pos(c.size());
  for (const auto& [a, xs] : groups) {
    for (std::size_t k = 0; k < xs.size(); ++k) pos[xs[k]] = k;
  }
  std::map<LatticePoint, BitMatrix> mats;
  for (const auto& [a, xs] : groups) mats.emplace(a, BitMatrix(xs.size(), xs.size()));
  for (const auto& e : c.entries) {
    const bool unit = std::all_of(e.m.begin(), e.m.end(), [](int v) { return v == 0; });
    if (!unit || c.gens[e.src].alex2 != c.gens[e.dst].alex2) continue;
    mats.at(c.gens[e.src].alex2).flip(pos[e.src], pos[e.dst]);
  }
  Polytope out;
  out.box.q2.assign(c.ell, 0);
  for (const auto& [a, xs] : groups) {
    const std::size_t r = gf2_rank(mats.at(a));
    if (xs.size() > 2 * r) {
      out.support.push_back(a);
      for (std::size_t i = 0; i < c.ell; ++i) out.box.q2[i] = std::max(out.box.q2[i], std::abs(a[i]));
    }
  }
  return out;
}

LinkAComplex a_minus_link(const LinkComplex& c, const LatticePoint& s2, std::optional<HyperBox> box) {
  if (s2.size() != c.ell) throw Error(ErrorKind::InvalidArgument, "lattice point has wrong length");
  for (std::size_t i = 0; i < c.ell; ++i) {
    if (((s2[i] % 2) + 2) % 2 != c.coset_parity(i)) {
      throw Error(ErrorKind::InvalidArgument, "point " + lattice_to_string(s2) + " is not in H(L)");
    }
  }
  if (!box) box = hat_polytope(c).box;
  LinkAComplex a;
  a.s2 = s2;
  a.complex.ell = c.ell;
  std::vector<std::vector<unsigned>> base(c.size(), std::vector<unsigned>(c.ell, 0));
  for (std::size_t x = 0; x < c.size(); ++x) {
    long total = 0;
    for (std::size_t i = 0; i < c.ell; ++i) {
      const int need = (c.gens[x].alex2[i] - s2[i]) / 2;
      base[x][i] = static_cast<unsigned>(std::max(0, need));
      total += base[x][i];
    }
    a.complex.maslov.push_back(c.gens[x].maslov - Rational(2 * total));
  }
  for (const auto& e : c.entries) {
    MultiFreeComplex::Entry out{e.src, e.dst, std::vector<unsigned>(c.ell)};
    for (std::size_t i = 0; i < c.ell; ++i) {
      const long v = static_cast<long>(base[e.src][i]) + e.m[i] - static_cast<long>(base[e.dst][i]);
      if (v < 0) throw Error(ErrorKind::InvalidComplex, "entry leaves A^-_s; complex is not filtered");
      out.m[i] = static_cast<unsigned>(v);
    }
    a.complex.entries.push_back(std::move(out));
  }
  unsigned spread_half = 0;
  if (!a.complex.maslov.empty()) {
    const Rational hi = *std::max_element(a.complex.maslov.begin(), a.complex.maslov.end());
    const Rational lo = *std::min_element(a.complex.maslov.begin(), a.complex.maslov.end());
    const Rational sp = hi - lo;
    spread_half = static_cast<unsigned>((sp.num() + 2 * sp.den() - 1) / (2 * sp.den()));
  }
  unsigned diameter = 0;
  for (int q : box->q2) diameter += static_cast<unsigned>(q);
  a.N = spread_half + diameter + 2;
  return a;
}

ModuleDecomp link_homology_decomp(const LinkAComplex& a) {
  unsigned N = a.N;
  const MultiFreeComplex small = cancel_unit_entries(a.complex);
  std::string last;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    const ModuleDecomp x = window_homology(small, N);
    const ModuleDecomp y = window_homology(small, 2 * N);
    if (x == y) return x;
    last = "N = " + std::to_string(N) + " gives " + x.to_string() + ", 2N gives " + y.to_string();
    N *= 2;
  }
  throw Error(ErrorKind::TruncationUnstable, "at " + lattice_to_string(a.s2) + ": " + last);
}

LatticePoint clamp_to_box(const LatticePoint& s2, const HyperBox& box) {
  LatticePoint out = s2;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], -box.q2[i], box.q2[i]);
  return out;
}

// ---------------------------------------------------------------- builders

LinkComplex link_from_knot(const KnotComplex& k) {
  LinkComplex c;
  c.ell = 1;
  c.linking = {{0}};
  for (const auto& g : k.gens) c.gens.push_back({g.id, g.maslov, {2 * g.alexander}});
  for (const auto& e : k.differential) c.entries.push_back({e.src, e.dst, {static_cast<int>(e.u)}});
  return c;
}

KnotComplex knot_from_link(const LinkComplex& c) {
  if (c.ell != 1) throw Error(ErrorKind::InvalidArgument, "knot_from_link needs one component");
  KnotComplex k;
  for (const auto& g : c.gens) {
    if (g.alex2[0] % 2 != 0) throw Error(ErrorKind::InvalidComplex, "knot alexander grading must be an integer");
    k.gens.push_back({g.id, g.maslov, g.alex2[0] / 2});
  }
  for (const auto& e : c.entries) {
    if (e.m[0] < 0) throw Error(ErrorKind::InvalidComplex, "negative exponent");
    k.differential.push_back({e.src, e.dst, static_cast<unsigned>(e.m[0])});
  }
  k.flip.involution = find_involution(k);
  return k;
}

LinkComplex hopf_link() {
  LinkComplex c;
  c.ell = 2;
  c.linking = {{0, 1}, {1, 0}};
  c.gens = {
      {"a", Rational(0), {1, 1}},
      {"b", Rational(-1), {-1, 1}},
      {"c", Rational(-1), {1, -1}},
      {"d", Rational(-2), {-1, -1}},
  };
  c.entries = {{1, 0, {1, 0}}, {1, 3, {0, 0}}, {2, 0, {0, 1}}, {2, 3, {0, 0}}};
  return c;
}

namespace {

// Tensor product; variable i of x (resp. y) becomes variable mx[i] (my[i]).
LinkComplex tensor(const LinkComplex& x, const std::vector<std::size_t>& mx, const LinkComplex& y,
                   const std::vector<std::size_t>& my, std::size_t ell, std::vector<std::vector<int>> linking) {
  LinkComplex out;
  out.ell = ell;
  out.linking = std::move(linking);
  const std::size_t ny = y.size();
  for (const auto& gx : x.gens) {
    for (const auto& gy : y.gens) {
      LatticePoint a(ell, 0);
      for (std::size_t i = 0; i < x.ell; ++i) a[mx[i]] += gx.alex2[i];
      for (std::size_t i = 0; i < y.ell; ++i) a[my[i]] += gy.alex2[i];
      out.gens.push_back({gx.id + "|" + gy.id, gx.maslov + gy.maslov, a});
    }
  }
  for (const auto& e : x.entries) {
    std::vector<int> m(ell, 0);
    for (std::size_t i = 0; i < x.ell; ++i) m[mx[i]] += e.m[i];
    for (std::size_t j = 0; j < ny; ++j) out.entries.push_back({e.src * ny + j, e.dst * ny + j, m});
  }
  for (const auto& e : y.entries) {
    std::vector<int> m(ell, 0);
    for (std::size_t i = 0; i < y.ell; ++i) m[my[i]] += e.m[i];
    for (std::size_t j = 0; j < x.size(); ++j) out.entries.push_back({j * ny + e.src, j * ny + e.dst, m});
  }
  return out;
}

}  // namespace

LinkComplex split_link(const KnotComplex& k1, const KnotComplex& k2) {
  const std::vector<std::vector<int>> lk = {{0, 0}, {0, 0}};
  LinkComplex both = tensor(link_from_knot(k1), {0}, link_from_knot(k2), {1}, 2, lk);
  LinkComplex w;
  w.ell = 2;
  w.linking = lk;
  w.gens = {{"wa", Rational(-1), {0, 0}}, {"wb", Rational(0), {0, 0}}};
  w.entries = {{0, 1, {1, 0}}, {0, 1, {0, 1}}};
  return tensor(both, {0, 1}, w, {0, 1}, 2, lk);
}

LinkComplex hopf_sum(const KnotComplex& k1, const KnotComplex& k2) {
  const std::vector<std::vector<int>> lk = {{0, 1}, {1, 0}};
  LinkComplex left = tensor(link_from_knot(k1), {0}, hopf_link(), {0, 1}, 2, lk);
  return tensor(left, {0, 1}, link_from_knot(k2), {1}, 2, lk);
}

LinkComplex random_link_complex(std::uint64_t seed, std::size_t max_gens) {
  std::mt19937_64 rng(seed);
  RandomKnotParams small;
  small.max_stair_pairs = 2;
  small.max_step = 2;
  small.max_boxes = 1;
  small.max_box_size = 1;
  small.deformations = 3;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 4) {
      small.max_boxes = 0;
      small.max_stair_pairs = 1;
    }
    const KnotComplex k1 = random_knot_complex(rng(), small);
    const KnotComplex k2 = random_knot_complex(rng(), small);
    const bool linked = (rng() & 1) != 0;
    const std::size_t n = k1.size() * k2.size() * (linked ? 4 : 2);
    if (n > max_gens) continue;
    return linked ? hopf_sum(k1, k2) : split_link(k1, k2);
  }
}

}  // namespace hfcx
