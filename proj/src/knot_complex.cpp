#include "hfcx/knot_complex.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "hfcx/error.hpp"

namespace hfcx {

int KnotComplex::genus_bound() const {
  int g = 0;
  for (const auto& x : gens) g = std::max(g, std::abs(x.alexander));
  return g;
}

std::optional<std::size_t> KnotComplex::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].id == id) return i;
  }
  return std::nullopt;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << c.name << ": " << (c.passed ? "pass" : "FAIL");
    if (!c.witness.empty()) os << " (" << c.witness << ")";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- regions

SouthWestRegion SouthWestRegion::intersection(const SouthWestRegion& x, const SouthWestRegion& y) {
  if (x.is_difference() || y.is_difference()) {
    throw Error(ErrorKind::InvalidArgument, "intersection of quotient regions is not supported");
  }
  std::vector<Corner> out;
  for (const auto& p : x.corners_) {
    for (const auto& q : y.corners_) out.push_back({std::min(p.a, q.a), std::min(p.b, q.b)});
  }
  return SouthWestRegion(std::move(out));
}

SouthWestRegion SouthWestRegion::difference(const SouthWestRegion& x, const SouthWestRegion& y) {
  if (x.is_difference() || y.is_difference()) {
    throw Error(ErrorKind::InvalidArgument, "nested differences are not supported");
  }
  SouthWestRegion r(x.corners_);
  r.removed_ = y.corners_;
  return r;
}

namespace {

bool corners_contain(const std::vector<SouthWestRegion::Corner>& cs, long i, long j) {
  return std::any_of(cs.begin(), cs.end(), [&](const auto& c) { return i <= c.a && j <= c.b; });
}

// Every quadrant of `inner` lies in some quadrant of `outer`.
bool corners_nested(const std::vector<SouthWestRegion::Corner>& inner,
                    const std::vector<SouthWestRegion::Corner>& outer) {
  return std::all_of(inner.begin(), inner.end(), [&](const auto& p) {
    return std::any_of(outer.begin(), outer.end(), [&](const auto& q) { return p.a <= q.a && p.b <= q.b; });
  });
}

void check_south_west(const std::vector<SouthWestRegion::Corner>& cs) {
  if (cs.empty()) throw Error(ErrorKind::NotSouthWest, "region is empty");
  for (const auto& c : cs) {
    if (c.a >= SouthWestRegion::kInf && c.b >= SouthWestRegion::kInf) {
      throw Error(ErrorKind::NotSouthWest, "region is the whole plane; its complex is not finitely generated over F[U]");
    }
    if ((c.a > SouthWestRegion::kInf) || (c.b > SouthWestRegion::kInf)) {
      throw Error(ErrorKind::NotSouthWest, "corner coordinate out of range");
    }
  }
}

// Smallest m with U^m x inside the region, for every generator.
std::vector<long> region_exponents(const KnotComplex& k, const std::vector<SouthWestRegion::Corner>& cs) {
  std::vector<long> m(k.size());
  for (std::size_t x = 0; x < k.size(); ++x) {
    const long A = k.gens[x].alexander;
    long best = std::numeric_limits<long>::max();
    for (const auto& c : cs) {
      long need;
      if (c.a >= SouthWestRegion::kInf) {
        need = -static_cast<long>(c.b);
      } else if (c.b >= SouthWestRegion::kInf) {
        need = A - c.a;
      } else {
        need = std::max(A - c.a, -static_cast<long>(c.b));
      }
      best = std::min(best, need);
    }
    m[x] = best;
  }
  return m;
}

FreeUComplex free_from_exponents(const KnotComplex& k, const std::vector<long>& m, const std::string& tag) {
  std::vector<Rational> gr;
  std::vector<std::string> ids;
  for (std::size_t x = 0; x < k.size(); ++x) {
    gr.push_back(k.gens[x].maslov - Rational(2 * m[x]));
    ids.push_back(tag + k.gens[x].id);
  }
  FreeUComplex c = make_free_complex(std::move(gr), std::move(ids));
  for (const auto& e : k.differential) {
    const long exp = m[e.src] + static_cast<long>(e.u) - m[e.dst];
    if (exp < 0) {
      throw Error(ErrorKind::InvalidComplex, "arrow " + k.gens[e.src].id + " -> " + k.gens[e.dst].id +
                                                 " leaves the region; complex is not filtered");
    }
    c.differential.add(e.dst, e.src, static_cast<unsigned>(exp));
  }
  return c;
}

std::vector<long> a_exponents(const KnotComplex& k, int s) {
  std::vector<long> m(k.size());
  for (std::size_t x = 0; x < k.size(); ++x) m[x] = std::max<long>(k.gens[x].alexander, -s);
  return m;
}

std::vector<long> b_exponents(const KnotComplex& k) {
  std::vector<long> m(k.size());
  for (std::size_t x = 0; x < k.size(); ++x) m[x] = k.gens[x].alexander;
  return m;
}

// Flip as a map from the C{j<=0} basis (x itself) to the C{i<=0} basis.
UMonomialMatrix flip_matrix(const KnotComplex& k) {
  const std::size_t n = k.size();
  if (k.flip.explicit_map) {
    const auto& f = *k.flip.explicit_map;
    if (f.rows() != n || f.cols() != n) throw Error(ErrorKind::FlipUndefined, "explicit flip has wrong shape");
    return f;
  }
  if (!k.flip.involution) throw Error(ErrorKind::FlipUndefined, "complex carries no flip");
  const auto& iota = *k.flip.involution;
  if (iota.size() != n) throw Error(ErrorKind::FlipUndefined, "involution has wrong length");
  UMonomialMatrix f(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (iota[x] >= n) throw Error(ErrorKind::FlipUndefined, "involution index out of range");
    f.set(iota[x], x, 0);
  }
  return f;
}

std::string involution_witness(const KnotComplex& k) {
  const auto& iota = *k.flip.involution;
  const std::size_t n = k.size();
  if (iota.size() != n) return "involution has wrong length";
  for (std::size_t x = 0; x < n; ++x) {
    if (iota[x] >= n) return "involution index out of range";
    if (iota[iota[x]] != x) return "not an involution at " + k.gens[x].id;
    const auto& g = k.gens[x];
    const auto& h = k.gens[iota[x]];
    if (h.alexander != -g.alexander) return "alexander not negated at " + g.id;
    if (h.maslov != g.maslov - Rational(2 * g.alexander)) return "maslov shift wrong at " + g.id;
  }
  std::map<std::pair<std::size_t, std::size_t>, unsigned> entries;
  for (const auto& e : k.differential) entries[{e.src, e.dst}] = e.u;
  for (const auto& e : k.differential) {
    const long want = static_cast<long>(e.u) + k.gens[e.src].alexander - k.gens[e.dst].alexander;
    auto it = entries.find({iota[e.src], iota[e.dst]});
    if (it == entries.end() || static_cast<long>(it->second) != want) {
      return "image of arrow " + k.gens[e.src].id + " -> " + k.gens[e.dst].id + " missing";
    }
  }
  return {};
}

}  // namespace

bool SouthWestRegion::contains(long i, long j) const {
  if (!corners_contain(corners_, i, j)) return false;
  return !(removed_ && corners_contain(*removed_, i, j));
}

FreeUComplex region_complex(const KnotComplex& k, const SouthWestRegion& s) {
  check_south_west(s.corners());
  if (!s.is_difference()) return free_from_exponents(k, region_exponents(k, s.corners()), "");
  const auto& inner = *s.removed();
  check_south_west(inner);
  if (!corners_nested(inner, s.corners())) throw Error(ErrorKind::NotNested, "removed region is not contained");
  if (corners_nested(s.corners(), inner)) return make_free_complex({});

  FreeUComplex outer = free_from_exponents(k, region_exponents(k, s.corners()), "");
  const auto m_in = region_exponents(k, inner);
  const auto m_out = region_exponents(k, s.corners());
  FreeUComplex sub = free_from_exponents(k, m_in, "");
  UMonomialMatrix incl(k.size(), k.size());
  for (std::size_t x = 0; x < k.size(); ++x) incl.set(x, x, static_cast<unsigned>(m_in[x] - m_out[x]));
  return mapping_cone(incl, sub, outer);
}

FreeUComplex a_complex(const KnotComplex& k, int s) { return free_from_exponents(k, a_exponents(k, s), ""); }

FreeUComplex b_complex(const KnotComplex& k) { return free_from_exponents(k, b_exponents(k), ""); }

EdgeMaps edge_maps(const KnotComplex& k, int s) {
  EdgeMaps out;
  const auto ma = a_exponents(k, s);
  const auto mb = b_exponents(k);
  out.a = free_from_exponents(k, ma, "");
  out.b = free_from_exponents(k, mb, "");
  const std::size_t n = k.size();
  out.v = UMonomialMatrix(n, n);
  for (std::size_t x = 0; x < n; ++x) out.v.set(x, x, static_cast<unsigned>(ma[x] - mb[x]));

  const UMonomialMatrix f = flip_matrix(k);
  out.h = UMonomialMatrix(n, n);
  for (const auto& [key, e] : f.entries()) {
    const auto [y, x] = key;
    out.h.add(y, x, e + static_cast<unsigned>(ma[x] + s));
  }
  if (!is_chain_map(out.h, out.a, out.b)) throw Error(ErrorKind::FlipUndefined, "flip does not induce a chain map");
  return out;
}

ValidationReport validate_knot_complex(const KnotComplex& k) {
  ValidationReport rep;
  const std::size_t n = k.size();

  ValidationCheck maslov{"maslov_drop", true, {}};
  ValidationCheck filt{"filtration", true, {}};
  for (const auto& e : k.differential) {
    if (e.src >= n || e.dst >= n) {
      maslov.passed = false;
      maslov.witness = "entry index out of range";
      break;
    }
    const auto& s = k.gens[e.src];
    const auto& d = k.gens[e.dst];
    if (maslov.passed && d.maslov - Rational(2 * static_cast<std::int64_t>(e.u)) != s.maslov - Rational(1)) {
      maslov.passed = false;
      maslov.witness = s.id + " -> " + d.id + " u=" + std::to_string(e.u);
    }
    if (filt.passed && d.alexander - static_cast<long>(e.u) > s.alexander) {
      filt.passed = false;
      filt.witness = s.id + " -> " + d.id + " u=" + std::to_string(e.u) + " raises alexander filtration";
    }
  }

  ValidationCheck dsq{"d_squared", true, {}};
  UMonomialMatrix d(n, n);
  if (maslov.passed) {
    try {
      for (const auto& e : k.differential) d.add(e.dst, e.src, e.u);
      auto sq = multiply(d, d);
      if (!sq.is_zero()) {
        const auto& [key, poly] = *sq.entries().begin();
        dsq.passed = false;
        dsq.witness = "d^2(" + k.gens[key.second].id + ") contains U^" + std::to_string(poly.begin()->first) + " " +
                      k.gens[key.first].id;
      }
    } catch (const Error& err) {
      dsq.passed = false;
      dsq.witness = err.what();
    }
  } else {
    dsq.passed = false;
    dsq.witness = "not evaluated: maslov check failed";
  }
  rep.checks.push_back(dsq);
  rep.checks.push_back(maslov);
  rep.checks.push_back(filt);

  const bool basic = dsq.passed && maslov.passed && filt.passed;
  ValidationCheck hom{"homology_axiom", true, {}};
  if (!basic) {
    hom.passed = false;
    hom.witness = "not evaluated";
  } else {
    const ModuleDecomp h = homology_decomp(region_complex(k, SouthWestRegion::half_plane_j(0)));
    if (h.free_rank != 1 || !h.torsion.empty()) {
      hom.passed = false;
      hom.witness = "H(C{j<=0}) = " + h.to_string();
    } else {
      const Rational top = h.tower_gradings->front();
      if (!top.is_integer() || top.num() % 2 != 0) {
        hom.passed = false;
        hom.witness = "tower top grading " + top.to_string() + " is not even";
      }
    }
  }
  rep.checks.push_back(hom);

  ValidationCheck flip{"flip", true, {}};
  if (!k.flip.present()) {
    flip.passed = false;
    flip.witness = "no flip data";
  } else if (k.flip.involution && !(flip.witness = involution_witness(k)).empty()) {
    flip.passed = false;
  } else if (!basic) {
    flip.passed = false;
    flip.witness = "not evaluated";
  } else {
    try {
      const FreeUComplex j0 = region_complex(k, SouthWestRegion::half_plane_j(0));
      const FreeUComplex i0 = b_complex(k);
      const UMonomialMatrix f = flip_matrix(k);
      if (!is_chain_map(f, j0, i0)) {
        flip.passed = false;
        flip.witness = "flip is not a chain map";
      } else if (!(homology_decomp(mapping_cone(f, j0, i0)) == ModuleDecomp(0, {}))) {
        flip.passed = false;
        flip.witness = "flip is not a quasi-isomorphism";
      }
    } catch (const Error& err) {
      flip.passed = false;
      flip.witness = err.what();
    }
  }
  rep.checks.push_back(flip);
  return rep;
}

KnotComplex mirror(const KnotComplex& k) {
  KnotComplex m;
  for (const auto& g : k.gens) m.gens.push_back({g.id, -g.maslov, -g.alexander});
  for (const auto& e : k.differential) m.differential.push_back({e.dst, e.src, e.u});
  if (k.flip.involution) {
    m.flip.involution = k.flip.involution;
  } else if (k.flip.explicit_map) {
    m.flip.involution = find_involution(m);
  }
  return m;
}

std::optional<std::vector<std::size_t>> find_involution(const KnotComplex& k, std::size_t node_cap) {
  const std::size_t n = k.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::map<std::pair<std::size_t, std::size_t>, unsigned> entries;
  std::vector<std::vector<std::size_t>> touching(n);
  for (std::size_t idx = 0; idx < k.differential.size(); ++idx) {
    const auto& e = k.differential[idx];
    entries[{e.src, e.dst}] = e.u;
    touching[e.src].push_back(idx);
    if (e.dst != e.src) touching[e.dst].push_back(idx);
  }
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (k.gens[y].alexander == -k.gens[x].alexander &&
          k.gens[y].maslov == k.gens[x].maslov - Rational(2 * k.gens[x].alexander)) {
        candidates[x].push_back(y);
      }
    }
    if (candidates[x].empty()) return std::nullopt;
  }

  std::vector<std::size_t> iota(n, kUnset);
  std::size_t nodes = 0;

  auto consistent = [&](std::size_t x) {
    for (std::size_t idx : touching[x]) {
      const auto& e = k.differential[idx];
      if (iota[e.src] == kUnset || iota[e.dst] == kUnset) continue;
      const long want = static_cast<long>(e.u) + k.gens[e.src].alexander - k.gens[e.dst].alexander;
      auto it = entries.find({iota[e.src], iota[e.dst]});
      if (it == entries.end() || static_cast<long>(it->second) != want) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t x) -> bool {
    while (x < n && iota[x] != kUnset) ++x;
    if (x == n) return true;
    for (std::size_t y : candidates[x]) {
      if (iota[y] != kUnset) continue;
      if (++nodes > node_cap) return false;
      iota[x] = y;
      iota[y] = x;
      if (consistent(x) && consistent(y) && search(x + 1)) return true;
      iota[x] = kUnset;
      iota[y] = kUnset;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return iota;
}

// ---------------------------------------------------------------- builders

KnotComplex from_nodes(const std::vector<ModelNode>& nodes,
                       const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
  KnotComplex k;
  for (const auto& v : nodes) k.gens.push_back({v.id, Rational(v.p - 2 * v.j), v.i - v.j});
  for (const auto& [s, d] : arrows) {
    if (s >= nodes.size() || d >= nodes.size()) throw Error(ErrorKind::InvalidArgument, "arrow index out of range");
    const int u = nodes[s].j - nodes[d].j;
    if (u < 0 || nodes[d].i > nodes[s].i || nodes[d].p != nodes[s].p - 1) {
      throw Error(ErrorKind::InvalidArgument, "arrow " + nodes[s].id + " -> " + nodes[d].id + " is not filtered");
    }
    k.differential.push_back({s, d, static_cast<unsigned>(u)});
  }
  std::vector<std::size_t> iota(nodes.size(), nodes.size());
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    if (iota[a] != nodes.size()) continue;
    for (std::size_t b = a; b < nodes.size(); ++b) {
      if (iota[b] != nodes.size()) continue;
      if (nodes[b].i == nodes[a].j && nodes[b].j == nodes[a].i && nodes[b].p == nodes[a].p) {
        iota[a] = b;
        iota[b] = a;
        break;
      }
    }
    if (iota[a] == nodes.size()) return k;  // asymmetric: no flip
  }
  k.flip.involution = iota;
  return k;
}

KnotComplex staircase(const std::vector<int>& steps) {
  if (steps.size() % 2 != 0) throw Error(ErrorKind::BadSteps, "staircase needs an even number of steps");
  for (int s : steps) {
    if (s <= 0) throw Error(ErrorKind::BadSteps, "step lengths must be positive, got " + std::to_string(s));
  }
  int height = 0;
  for (std::size_t t = 1; t < steps.size(); t += 2) height += steps[t];
  std::vector<ModelNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  int i = 0;
  int j = height;
  nodes.push_back({"x0", i, j, 0});
  for (std::size_t t = 0; t < steps.size(); ++t) {
    if (t % 2 == 0) {
      i += steps[t];
    } else {
      j -= steps[t];
    }
    nodes.push_back({"x" + std::to_string(t + 1), i, j, t % 2 == 0 ? 1 : 0});
  }
  for (std::size_t r = 1; r < nodes.size(); r += 2) {
    arrows.emplace_back(r, r - 1);
    arrows.emplace_back(r, r + 1);
  }
  return from_nodes(nodes, arrows);
}

KnotComplex box(int n, int ci, int cj, int g) {
  if (n <= 0) throw Error(ErrorKind::BadSteps, "box side must be positive");
  std::vector<ModelNode> nodes = {
      {"t", ci + n, cj + n, g},
      {"l", ci, cj + n, g - 1},
      {"y", ci + n, cj, g - 1},
      {"z", ci, cj, g - 2},
  };
  return from_nodes(nodes, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

KnotComplex direct_sum(const std::vector<KnotComplex>& parts) {
  if (parts.size() == 1) return parts.front();
  KnotComplex out;
  bool all_involutions = true;
  std::vector<std::size_t> iota;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& k = parts[p];
    const std::size_t off = out.gens.size();
    for (const auto& g : k.gens) out.gens.push_back({"p" + std::to_string(p) + "." + g.id, g.maslov, g.alexander});
    for (const auto& e : k.differential) out.differential.push_back({e.src + off, e.dst + off, e.u});
    if (k.flip.involution) {
      for (std::size_t x : *k.flip.involution) iota.push_back(x + off);
    } else {
      all_involutions = false;
    }
  }
  if (all_involutions) out.flip.involution = iota;
  return out;
}

KnotComplex grading_shift(const KnotComplex& k, int shift) {
  KnotComplex out = k;
  for (auto& g : out.gens) g.maslov += Rational(shift);
  return out;
}

std::vector<std::string> model_names() { return {"unknot", "T23", "T25", "T27", "T34", "fig8"}; }

KnotComplex named_model(const std::string& name) {
  if (name == "unknot") return staircase({});
  if (name == "T23") return staircase({1, 1});
  if (name == "T25") return staircase({1, 1, 1, 1});
  if (name == "T27") return staircase({1, 1, 1, 1, 1, 1});
  if (name == "T34") return staircase({1, 2, 2, 1});
  if (name == "fig8") {
    std::vector<ModelNode> nodes = {
        {"t", 1, 1, 2}, {"l", 0, 1, 1}, {"y", 1, 0, 1}, {"z", 0, 0, 0}, {"d", 0, 0, 0},
    };
    return from_nodes(nodes, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  }
  throw Error(ErrorKind::InvalidArgument, "unknown model '" + name + "'");
}

}  // namespace hfcx
