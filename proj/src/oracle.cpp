#include "hfcx/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <random>
#include <sstream>

#include "hfcx/error.hpp"
#include "hfcx/gf2_matrix.hpp"

namespace hfcx {

MultiFreeComplex to_multi(const FreeUComplex& c) {
  MultiFreeComplex m;
  m.ell = 1;
  m.maslov = c.maslov;
  for (const auto& [key, e] : c.differential.entries()) m.entries.push_back({key.second, key.first, {e}});
  return m;
}

MultiFreeComplex cancel_unit_entries(const MultiFreeComplex& c) {
  using Mono = std::vector<unsigned>;
  using Poly = std::set<Mono>;
  const std::size_t n = c.maslov.size();
  std::vector<std::map<std::size_t, Poly>> out(n);
  std::vector<std::set<std::size_t>> in(n);
  auto toggle = [&](std::size_t s, std::size_t d, const Mono& m) {
    Poly& p = out[s][d];
    if (!p.erase(m)) p.insert(m);
    if (p.empty()) {
      out[s].erase(d);
      in[d].erase(s);
    } else {
      in[d].insert(s);
    }
  };
  for (const auto& e : c.entries) toggle(e.src, e.dst, e.m);
  const Mono one(c.ell, 0);
  std::vector<bool> alive(n, true);
  for (std::size_t x = 0; x < n; ++x) {
    if (!alive[x]) continue;
    std::optional<std::size_t> y;
    for (const auto& [d, p] : out[x]) {
      if (p.size() == 1 && *p.begin() == one) {
        y = d;
        break;
      }
    }
    if (!y) continue;
    // d'z = dz + <dz, y> dx for every z hitting y.
    const std::map<std::size_t, Poly> dx = out[x];
    const std::vector<std::size_t> hitters(in[*y].begin(), in[*y].end());
    for (std::size_t z : hitters) {
      if (z == x) continue;
      const Poly coef = out[z].at(*y);
      for (const auto& [w, p] : dx) {
        for (const auto& a : coef) {
          for (const auto& b : p) {
            Mono m(c.ell);
            for (std::size_t i = 0; i < c.ell; ++i) m[i] = a[i] + b[i];
            toggle(z, w, m);
          }
        }
      }
    }
    for (std::size_t g : {x, *y}) {
      alive[g] = false;
      for (const auto& [d, p] : std::map<std::size_t, Poly>(out[g])) {
        out[g].erase(d);
        in[d].erase(g);
      }
      for (std::size_t s : std::set<std::size_t>(in[g])) out[s].erase(g);
      in[g].clear();
    }
    // A new unit may now start at an earlier generator.
    x = static_cast<std::size_t>(-1);
  }
  MultiFreeComplex r;
  r.ell = c.ell;
  std::vector<std::size_t> idx(n);
  for (std::size_t g = 0; g < n; ++g) {
    if (!alive[g]) continue;
    idx[g] = r.maslov.size();
    r.maslov.push_back(c.maslov[g]);
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (!alive[g]) continue;
    for (const auto& [d, p] : out[g]) {
      for (const auto& m : p) r.entries.push_back({idx[g], idx[d], m});
    }
  }
  return r;
}

namespace {

// All exponent vectors of length ell with the given sum.
void compositions(std::size_t ell, unsigned total, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> cur(ell, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned rest) {
    if (pos + 1 == ell) {
      cur[pos] = rest;
      out.push_back(cur);
      return;
    }
    for (unsigned v = rest + 1; v-- > 0;) {
      cur[pos] = v;
      rec(pos + 1, rest - v);
    }
  };
  if (ell == 0) {
    if (total == 0) out.push_back({});
    return;
  }
  rec(0, total);
}

struct Level {
  std::vector<std::pair<std::size_t, std::vector<unsigned>>> elems;
  std::vector<std::map<std::vector<unsigned>, std::size_t>> index;  // per generator
};

}  // namespace

ModuleDecomp window_homology(const MultiFreeComplex& c, unsigned N) {
  const std::size_t n = c.maslov.size();
  if (n == 0) return ModuleDecomp(0, {});
  const Rational g_min = *std::min_element(c.maslov.begin(), c.maslov.end());
  const Rational g_lo = g_min - Rational(2 * static_cast<std::int64_t>(N));

  std::map<Rational, Level> levels;
  for (std::size_t g = 0; g < n; ++g) {
    for (unsigned t = 0;; ++t) {
      const Rational d = c.maslov[g] - Rational(2 * static_cast<std::int64_t>(t));
      if (d < g_lo - Rational(1)) break;
      Level& lv = levels[d];
      if (lv.index.empty()) lv.index.resize(n);
      std::vector<std::vector<unsigned>> ms;
      compositions(c.ell, t, ms);
      for (auto& m : ms) {
        lv.index[g].emplace(m, lv.elems.size());
        lv.elems.emplace_back(g, std::move(m));
      }
    }
  }

  std::vector<std::vector<std::size_t>> from(n);
  for (std::size_t e = 0; e < c.entries.size(); ++e) from[c.entries[e].src].push_back(e);

  auto find_in = [&](const Rational& d, std::size_t g, const std::vector<unsigned>& m) -> std::optional<std::size_t> {
    auto lv = levels.find(d);
    if (lv == levels.end()) return std::nullopt;
    auto it = lv->second.index[g].find(m);
    if (it == lv->second.index[g].end()) return std::nullopt;
    return it->second;
  };

  // Differential out of level d, as rows over level d-1.
  auto boundary = [&](const Rational& d) {
    const Level& lv = levels.at(d);
    const Rational t = d - Rational(1);
    const std::size_t cols = levels.count(t) ? levels.at(t).elems.size() : 0;
    BitMatrix D(lv.elems.size(), cols);
    for (std::size_t r = 0; r < lv.elems.size(); ++r) {
      const auto& [g, m] = lv.elems[r];
      for (std::size_t e : from[g]) {
        const auto& ent = c.entries[e];
        std::vector<unsigned> mm = m;
        for (std::size_t i = 0; i < c.ell; ++i) mm[i] += ent.m[i];
        auto idx = find_in(t, ent.dst, mm);
        if (!idx) throw Error(ErrorKind::InvalidComplex, "differential is not homogeneous of degree -1");
        D.flip(r, *idx);
      }
    }
    return D;
  };

  struct Piece {
    BitMatrix Z;
    BitMatrix B;
    std::size_t rank_b = 0;
  };
  std::map<Rational, Piece> pieces;
  std::map<Rational, BitMatrix> bd;
  for (const auto& [d, lv] : levels) {
    if (d < g_lo) continue;
    bd.emplace(d, boundary(d));
  }
  for (const auto& [d, lv] : levels) {
    if (d < g_lo) continue;
    Piece p;
    p.Z = gf2_left_kernel(bd.at(d));
    auto up = bd.find(d + Rational(1));
    p.B = up == bd.end() ? BitMatrix(0, lv.elems.size()) : up->second;
    p.rank_b = gf2_rank(p.B);
    pieces.emplace(d, std::move(p));
  }

  // U = U_1 as an index map from level d to level d-2.
  auto apply_u = [&](const Rational& d, const BitMatrix& rows) {
    const Level& src = levels.at(d);
    const Rational t = d - Rational(2);
    const Level& dst = levels.at(t);
    BitMatrix out(rows.rows(), dst.elems.size());
    for (std::size_t r = 0; r < src.elems.size(); ++r) {
      const auto& [g, m] = src.elems[r];
      std::vector<unsigned> mm = m;
      mm[0] += 1;
      const std::size_t to = dst.index[g].at(mm);
      for (std::size_t row = 0; row < rows.rows(); ++row) {
        if (rows.get(row, r)) out.set(row, to);
      }
    }
    return out;
  };

  std::vector<long> r(N + 2, 0);
  for (const auto& [d, p] : pieces) r[0] += static_cast<long>(p.Z.rows()) - static_cast<long>(p.rank_b);
  for (const auto& [d, p] : pieces) {
    BitMatrix cur = p.Z;
    Rational at = d;
    for (unsigned k = 1; k <= N + 1; ++k) {
      const Rational to = at - Rational(2);
      auto it = pieces.find(to);
      if (it == pieces.end() || cur.rows() == 0) break;
      cur = apply_u(at, cur);
      at = to;
      const std::size_t full = gf2_rank(vstack(it->second.B, cur));
      r[k] += static_cast<long>(full - it->second.rank_b);
    }
  }

  std::vector<unsigned> torsion;
  for (unsigned L = 1; L <= N; ++L) {
    const long count = (r[L - 1] - r[L]) - (r[L] - r[L + 1]);
    if (count < 0) throw Error(ErrorKind::InvalidComplex, "inconsistent U-ranks in window homology");
    for (long i = 0; i < count; ++i) torsion.push_back(L);
  }
  const long towers = r[N] - r[N + 1];
  return ModuleDecomp(static_cast<unsigned>(towers), std::move(torsion));
}

unsigned default_truncation(const FreeUComplex& c) {
  if (c.size() == 0) return 4;
  const Rational hi = *std::max_element(c.maslov.begin(), c.maslov.end());
  const Rational lo = *std::min_element(c.maslov.begin(), c.maslov.end());
  const Rational spread = hi - lo;
  const std::int64_t half = (spread.num() + 2 * spread.den() - 1) / (2 * spread.den());
  return static_cast<unsigned>(half) + 4;
}

ModuleDecomp truncated_field_homology(const FreeUComplex& c, unsigned N) {
  if (auto why = check_free_complex(c); !why.empty()) throw Error(ErrorKind::InvalidComplex, why);
  const MultiFreeComplex m = to_multi(c);
  ModuleDecomp a = window_homology(m, N);
  ModuleDecomp b = window_homology(m, 2 * N);
  if (!(a == b)) {
    throw Error(ErrorKind::TruncationTooLow,
                "N = " + std::to_string(N) + " gives " + a.to_string() + ", 2N gives " + b.to_string());
  }
  return a;
}

ModuleDecomp oracle_homology(const FreeUComplex& c) {
  unsigned N = default_truncation(c);
  for (int attempt = 0;; ++attempt) {
    try {
      return truncated_field_homology(c, N);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TruncationTooLow || attempt >= 3) throw;
      N *= 2;
    }
  }
}

// ---------------------------------------------------------------- random complexes

namespace {

using EntryMap = std::map<std::pair<std::size_t, std::size_t>, unsigned>;  // (dst, src) -> u

void toggle(EntryMap& d, std::size_t dst, std::size_t src, unsigned u) {
  auto it = d.find({dst, src});
  if (it == d.end()) {
    d.emplace(std::make_pair(dst, src), u);
  } else if (it->second == u) {
    d.erase(it);
  } else {
    throw Error(ErrorKind::InvalidComplex, "basis change produced a binomial coefficient");
  }
}

// Basis change x <- x + U^k y.
void elementary_move(EntryMap& d, std::size_t x, std::size_t y, unsigned k) {
  std::vector<std::pair<std::size_t, unsigned>> col_y;
  for (const auto& [key, u] : d) {
    if (key.second == y) col_y.emplace_back(key.first, u);
  }
  for (const auto& [w, u] : col_y) toggle(d, w, x, u + k);
  std::vector<std::pair<std::size_t, unsigned>> row_x;
  for (const auto& [key, u] : d) {
    if (key.first == x) row_x.emplace_back(key.second, u);
  }
  for (const auto& [z, u] : row_x) toggle(d, y, z, u + k);
}

}  // namespace

KnotComplex deform(const KnotComplex& k, std::uint64_t seed, int count) {
  if (!k.flip.involution) throw Error(ErrorKind::FlipUndefined, "deform needs an involution");
  const auto& iota = *k.flip.involution;
  std::mt19937_64 rng(seed);
  EntryMap d;
  for (const auto& e : k.differential) toggle(d, e.dst, e.src, e.u);

  struct Move {
    std::size_t x, y;
    unsigned k;
  };
  std::vector<Move> moves;
  for (std::size_t x = 0; x < k.size(); ++x) {
    for (std::size_t y = 0; y < k.size(); ++y) {
      if (x == y) continue;
      const Rational diff = k.gens[y].maslov - k.gens[x].maslov;
      if (!diff.is_integer() || diff.num() < 0 || diff.num() % 2 != 0) continue;
      const long kk = diff.num() / 2;
      if (k.gens[y].alexander - kk > k.gens[x].alexander) continue;
      const std::size_t ix = iota[x], iy = iota[y];
      const long k2 = kk + k.gens[x].alexander - k.gens[y].alexander;
      const bool disjoint = ix != x && ix != y && iy != x && iy != y;
      const bool fixed = ix == x && iy == y && k2 == kk;
      if (disjoint || fixed) moves.push_back({x, y, static_cast<unsigned>(kk)});
    }
  }
  if (!moves.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    for (int c = 0; c < count; ++c) {
      const Move mv = moves[pick(rng)];
      elementary_move(d, mv.x, mv.y, mv.k);
      const std::size_t ix = iota[mv.x], iy = iota[mv.y];
      if (ix != mv.x) {
        const long k2 = static_cast<long>(mv.k) + k.gens[mv.x].alexander - k.gens[mv.y].alexander;
        elementary_move(d, ix, iy, static_cast<unsigned>(k2));
      }
    }
  }
  KnotComplex out;
  out.gens = k.gens;
  out.flip = k.flip;
  for (const auto& [key, u] : d) out.differential.push_back({key.second, key.first, u});
  return out;
}

KnotComplex random_knot_complex(std::uint64_t seed, const RandomKnotParams& params) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int pairs = uni(0, params.max_stair_pairs);
  std::vector<int> half;
  for (int t = 0; t < pairs; ++t) half.push_back(uni(1, params.max_step));
  std::vector<int> steps = half;
  steps.insert(steps.end(), half.rbegin(), half.rend());
  std::vector<KnotComplex> parts = {staircase(steps)};

  const int boxes = uni(0, params.max_boxes);
  for (int b = 0; b < boxes; ++b) {
    const int n = uni(1, params.max_box_size);
    const int ci = uni(-2, 1);
    const int g = uni(-1, 3);
    if (uni(0, 1) == 0) {
      parts.push_back(box(n, ci, ci, g));
    } else {
      int cj = uni(-2, 1);
      if (cj == ci) cj = ci + 1;
      // Box at (ci, cj) and its reflection, as one flip-symmetric summand.
      const int pi[4] = {ci + n, ci, ci + n, ci};
      const int pj[4] = {cj + n, cj + n, cj, cj};
      const int pp[4] = {g, g - 1, g - 1, g - 2};
      const char* names[4] = {"t", "l", "y", "z"};
      std::vector<ModelNode> nodes;
      for (int v = 0; v < 4; ++v) nodes.push_back({std::string("a") + names[v], pi[v], pj[v], pp[v]});
      for (int v = 0; v < 4; ++v) nodes.push_back({std::string("b") + names[v], pj[v], pi[v], pp[v]});
      std::vector<std::pair<std::size_t, std::size_t>> arrows = {{0, 1}, {0, 2}, {1, 3}, {2, 3},
                                                                 {4, 5}, {4, 6}, {5, 7}, {6, 7}};
      KnotComplex pair = from_nodes(nodes, arrows);
      // Position matching can pair a corner with itself when the boxes touch.
      pair.flip.involution = std::vector<std::size_t>{4, 5, 6, 7, 0, 1, 2, 3};
      parts.push_back(std::move(pair));
    }
  }
  KnotComplex k = direct_sum(parts);
  return params.deformations > 0 ? deform(k, seed ^ 0x9e3779b97f4a7c15ULL, params.deformations) : k;
}

CrosscheckReport crosscheck_surgery(const KnotComplex& k, long p, long q) {
  CrosscheckReport rep;
  const SurgeryResult cone = rational_surgery(k, p, q);
  const SurgeryResult fast = red_fastpath(k, p, q);
  std::map<long, ModuleDecomp> by_residue;
  for (const auto& l : fast.labels) by_residue[l.residue] = l.decomp;
  for (const auto& l : cone.labels) {
    const ModuleDecomp tors(0, l.decomp.torsion);
    const ModuleDecomp& other = by_residue[l.residue];
    if (!(tors == other)) {
      std::ostringstream os;
      os << "slope " << p << "/" << q << " residue " << l.residue << ": cone torsion " << tors.to_string()
         << ", fast path " << other.to_string();
      rep.match = false;
      rep.detail = os.str();
      return rep;
    }
  }
  return rep;
}

}  // namespace hfcx
