#include "hfcx/ualgebra.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "hfcx/error.hpp"

namespace hfcx {

UMonomialMatrix UMonomialMatrix::identity(std::size_t n) {
  UMonomialMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 0);
  return m;
}

void UMonomialMatrix::set(std::size_t row, std::size_t col, unsigned exponent) {
  if (row >= rows_ || col >= cols_) throw Error(ErrorKind::InvalidArgument, "matrix index out of range");
  auto [it, inserted] = entries_.emplace(Key{row, col}, exponent);
  if (!inserted) {
    throw Error(ErrorKind::InvalidArgument,
                "duplicate entry (" + std::to_string(row) + ", " + std::to_string(col) + ")");
  }
}

void UMonomialMatrix::add(std::size_t row, std::size_t col, unsigned exponent) {
  if (row >= rows_ || col >= cols_) throw Error(ErrorKind::InvalidArgument, "matrix index out of range");
  auto it = entries_.find({row, col});
  if (it == entries_.end()) {
    entries_.emplace(Key{row, col}, exponent);
  } else if (it->second == exponent) {
    entries_.erase(it);
  } else {
    throw Error(ErrorKind::NonMonomialPivot, "U^" + std::to_string(it->second) + " + U^" +
                                                 std::to_string(exponent) + " at (" + std::to_string(row) +
                                                 ", " + std::to_string(col) + ")");
  }
}

std::optional<unsigned> UMonomialMatrix::get(std::size_t row, std::size_t col) const {
  auto it = entries_.find({row, col});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

UMonomialMatrix UMonomialMatrix::transposed() const {
  UMonomialMatrix t(cols_, rows_);
  for (const auto& [key, e] : entries_) t.set(key.second, key.first, e);
  return t;
}

void UPolyMatrix::add(std::size_t row, std::size_t col, unsigned exponent) {
  auto& poly = entries_[{row, col}];
  auto [it, inserted] = poly.emplace(exponent, true);
  if (!inserted) poly.erase(it);
  if (poly.empty()) entries_.erase({row, col});
}

bool UPolyMatrix::is_monomial() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& kv) { return kv.second.size() == 1; });
}

UMonomialMatrix UPolyMatrix::to_monomial() const {
  UMonomialMatrix m(rows_, cols_);
  for (const auto& [key, poly] : entries_) {
    if (poly.size() != 1) throw Error(ErrorKind::NonMonomialPivot, "polynomial entry is not a monomial");
    m.set(key.first, key.second, poly.begin()->first);
  }
  return m;
}

namespace {

// Column-indexed view of a monomial matrix: for each row k of b, its entries.
std::vector<std::vector<std::pair<std::size_t, unsigned>>> rows_of(const UMonomialMatrix& b) {
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> out(b.rows());
  for (const auto& [key, e] : b.entries()) out[key.first].emplace_back(key.second, e);
  return out;
}

}  // namespace

UPolyMatrix multiply(const UMonomialMatrix& a, const UMonomialMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in product");
  UPolyMatrix out(a.rows(), b.cols());
  auto brows = rows_of(b);
  for (const auto& [key, ea] : a.entries()) {
    for (const auto& [col, eb] : brows[key.second]) out.add(key.first, col, ea + eb);
  }
  return out;
}

UPolyMatrix multiply(const UPolyMatrix& a, const UMonomialMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in product");
  UPolyMatrix out(a.rows(), b.cols());
  auto brows = rows_of(b);
  for (const auto& [key, poly] : a.entries()) {
    for (const auto& [ea, odd] : poly) {
      (void)odd;
      for (const auto& [col, eb] : brows[key.second]) out.add(key.first, col, ea + eb);
    }
  }
  return out;
}

UPolyMatrix multiply(const UMonomialMatrix& a, const UPolyMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in product");
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> brows(b.rows());
  for (const auto& [key, poly] : b.entries()) {
    for (const auto& [e, odd] : poly) {
      (void)odd;
      brows[key.first].emplace_back(key.second, e);
    }
  }
  UPolyMatrix out(a.rows(), b.cols());
  for (const auto& [key, ea] : a.entries()) {
    for (const auto& [col, eb] : brows[key.second]) out.add(key.first, col, ea + eb);
  }
  return out;
}

FreeUComplex make_free_complex(std::vector<Rational> maslov, std::vector<std::string> ids) {
  FreeUComplex c;
  const std::size_t n = maslov.size();
  if (ids.empty()) {
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back("g" + std::to_string(i));
  }
  c.ids = std::move(ids);
  c.maslov = std::move(maslov);
  c.differential = UMonomialMatrix(n, n);
  return c;
}

std::string check_free_complex(const FreeUComplex& c) {
  const std::size_t n = c.size();
  if (c.differential.rows() != n || c.differential.cols() != n) return "differential has wrong shape";
  if (!c.ids.empty() && c.ids.size() != n) return "id list has wrong length";
  for (const auto& [key, e] : c.differential.entries()) {
    const auto [dst, src] = key;
    if (c.maslov[dst] - Rational(2 * static_cast<std::int64_t>(e)) != c.maslov[src] - Rational(1)) {
      std::ostringstream os;
      os << "entry " << src << " -> " << dst << " (U^" << e << ") is not homogeneous of degree -1";
      return os.str();
    }
  }
  auto sq = multiply(c.differential, c.differential);
  if (!sq.is_zero()) {
    const auto& [key, poly] = *sq.entries().begin();
    std::ostringstream os;
    os << "d^2 != 0: coefficient of generator " << key.first << " in d^2(" << key.second << ") is nonzero (U^"
       << poly.begin()->first << ")";
    return os.str();
  }
  return {};
}

ModuleDecomp::ModuleDecomp(unsigned free, std::vector<unsigned> tors) : free_rank(free), torsion(std::move(tors)) {
  torsion.erase(std::remove(torsion.begin(), torsion.end(), 0u), torsion.end());
  std::sort(torsion.begin(), torsion.end(), std::greater<>());
}

std::string ModuleDecomp::to_string() const {
  std::ostringstream os;
  os << "free " << free_rank << ", torsion {";
  for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
  os << "}";
  return os.str();
}

ModuleDecomp direct_sum(const ModuleDecomp& a, const ModuleDecomp& b) {
  std::vector<unsigned> t = a.torsion;
  t.insert(t.end(), b.torsion.begin(), b.torsion.end());
  return ModuleDecomp(a.free_rank + b.free_rank, std::move(t));
}

namespace {

using SparseLine = std::map<std::size_t, unsigned>;

// line ^= U^shift * other, in characteristic two with monomial entries.
void add_shifted(SparseLine& line, const SparseLine& other, unsigned shift, std::size_t line_index,
                 std::set<std::size_t>* touched_add, std::set<std::size_t>* touched_remove) {
  for (const auto& [idx, e] : other) {
    const unsigned value = e + shift;
    auto it = line.find(idx);
    if (it == line.end()) {
      line.emplace(idx, value);
      if (touched_add) touched_add->insert(idx);
    } else if (it->second == value) {
      line.erase(it);
      if (touched_remove) touched_remove->insert(idx);
    } else {
      throw Error(ErrorKind::NonMonomialPivot, "elimination in line " + std::to_string(line_index) +
                                                   " produces U^" + std::to_string(it->second) + " + U^" +
                                                   std::to_string(value));
    }
  }
}

}  // namespace

SnfResult graded_snf(const UMonomialMatrix& m, bool with_transforms) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();

  std::vector<SparseLine> rows(nr);
  std::vector<std::set<std::size_t>> col_rows(nc);
  for (const auto& [key, e] : m.entries()) {
    rows[key.first].emplace(key.second, e);
    col_rows[key.second].insert(key.first);
  }

  // Row transform stored by rows, column transform stored by columns.
  std::vector<SparseLine> prow;
  std::vector<SparseLine> qcol;
  if (with_transforms) {
    prow.resize(nr);
    qcol.resize(nc);
    for (std::size_t i = 0; i < nr; ++i) prow[i].emplace(i, 0);
    for (std::size_t j = 0; j < nc; ++j) qcol[j].emplace(j, 0);
  }

  std::vector<bool> row_done(nr, false);
  SnfResult result;

  unsigned level = 0;
  unsigned max_exponent = 0;
  for (const auto& [key, e] : m.entries()) max_exponent = std::max(max_exponent, e);

  // Entries never drop below the current level, so scanning levels upward
  // always selects a globally minimal pivot.
  while (true) {
    bool found_any_entry = false;
    bool pivoted = false;
    for (std::size_t r = 0; r < nr; ++r) {
      if (row_done[r] || rows[r].empty()) continue;
      found_any_entry = true;
      auto it = std::find_if(rows[r].begin(), rows[r].end(), [&](const auto& kv) { return kv.second == level; });
      if (it == rows[r].end()) continue;

      const std::size_t pr = r;
      const std::size_t pc = it->first;
      const unsigned p = it->second;

      // Clear the pivot column with row operations.
      std::vector<std::size_t> others;
      for (std::size_t rr : col_rows[pc]) {
        if (rr != pr) others.push_back(rr);
      }
      for (std::size_t rr : others) {
        const unsigned a = rows[rr].at(pc);
        const unsigned shift = a - p;
        std::set<std::size_t> added, removed;
        add_shifted(rows[rr], rows[pr], shift, rr, &added, &removed);
        for (std::size_t c : added) col_rows[c].insert(rr);
        for (std::size_t c : removed) col_rows[c].erase(rr);
        if (with_transforms) add_shifted(prow[rr], prow[pr], shift, rr, nullptr, nullptr);
      }

      // Clear the pivot row with column operations; the pivot column is now
      // zero off the pivot, so only the pivot row changes.
      for (const auto& [c, a] : rows[pr]) {
        if (c == pc) continue;
        col_rows[c].erase(pr);
        if (with_transforms) add_shifted(qcol[c], qcol[pc], a - p, c, nullptr, nullptr);
      }
      rows[pr].clear();
      col_rows[pc].clear();
      row_done[pr] = true;

      result.exponents.push_back(p);
      result.pivots.emplace_back(pr, pc);
      pivoted = true;
      max_exponent = std::max(max_exponent, p);
    }
    if (!found_any_entry) break;
    if (!pivoted) {
      ++level;
      if (level > max_exponent + 4 * (nr + nc) + 64) {
        throw Error(ErrorKind::NonMonomialPivot, "no pivot found; matrix is not homogeneous");
      }
    }
  }

  if (with_transforms) {
    UMonomialMatrix p(nr, nr);
    for (std::size_t i = 0; i < nr; ++i)
      for (const auto& [j, e] : prow[i]) p.set(i, j, e);
    UMonomialMatrix q(nc, nc);
    for (std::size_t j = 0; j < nc; ++j)
      for (const auto& [i, e] : qcol[j]) q.set(i, j, e);
    result.row_transform = std::move(p);
    result.col_transform = std::move(q);
  }
  return result;
}

ModuleDecomp homology_decomp(const FreeUComplex& c) {
  if (auto why = check_free_complex(c); !why.empty()) throw Error(ErrorKind::InvalidComplex, why);
  const std::size_t n = c.size();
  SnfResult snf = graded_snf(c.differential);
  const std::size_t r = snf.exponents.size();

  std::vector<bool> pivot_col(n, false);
  std::multiset<Rational> cycle_gradings;
  for (const auto& [pr, pc] : snf.pivots) pivot_col[pc] = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (!pivot_col[j]) cycle_gradings.insert(c.maslov[j]);
  }

  std::vector<unsigned> torsion;
  std::vector<TorsionSummand> torsion_gr;
  for (std::size_t k = 0; k < r; ++k) {
    const Rational g = c.maslov[snf.pivots[k].first];
    auto it = cycle_gradings.find(g);
    if (it == cycle_gradings.end()) {
      throw Error(ErrorKind::InvalidComplex, "boundary generator grading missing from cycle gradings");
    }
    cycle_gradings.erase(it);
    if (snf.exponents[k] > 0) {
      torsion.push_back(snf.exponents[k]);
      torsion_gr.push_back({snf.exponents[k], g});
    }
  }

  ModuleDecomp d(static_cast<unsigned>(n - 2 * r), std::move(torsion));
  std::vector<Rational> towers(cycle_gradings.begin(), cycle_gradings.end());
  std::sort(towers.begin(), towers.end(), std::greater<>());
  std::sort(torsion_gr.begin(), torsion_gr.end(), [](const TorsionSummand& a, const TorsionSummand& b) {
    return a.exponent != b.exponent ? a.exponent > b.exponent : a.grading > b.grading;
  });
  d.tower_gradings = std::move(towers);
  d.torsion_gradings = std::move(torsion_gr);
  return d;
}

unsigned annihilator_exponent(const ModuleDecomp& m) {
  unsigned best = 0;
  for (unsigned k : m.torsion) best = std::max(best, k);
  return best;
}

std::optional<Rational> map_degree(const UMonomialMatrix& f, const FreeUComplex& src, const FreeUComplex& dst) {
  std::optional<Rational> degree;
  for (const auto& [key, e] : f.entries()) {
    const Rational d = dst.maslov[key.first] - Rational(2 * static_cast<std::int64_t>(e)) - src.maslov[key.second];
    if (!degree) {
      degree = d;
    } else if (*degree != d) {
      throw Error(ErrorKind::InvalidComplex, "chain map is not homogeneous");
    }
  }
  return degree;
}

bool is_chain_map(const UMonomialMatrix& f, const FreeUComplex& src, const FreeUComplex& dst) {
  if (f.rows() != dst.size() || f.cols() != src.size()) return false;
  auto left = multiply(dst.differential, f);
  auto right = multiply(f, src.differential);
  for (const auto& [key, poly] : right.entries()) {
    for (const auto& [e, odd] : poly) {
      (void)odd;
      left.add(key.first, key.second, e);
    }
  }
  return left.is_zero();
}

FreeUComplex mapping_cone(const UMonomialMatrix& f, const FreeUComplex& src, const FreeUComplex& dst) {
  const std::size_t ns = src.size();
  const std::size_t nd = dst.size();
  const Rational degree = map_degree(f, src, dst).value_or(Rational(0));
  std::vector<Rational> gr;
  std::vector<std::string> ids;
  gr.reserve(ns + nd);
  for (std::size_t i = 0; i < ns; ++i) {
    gr.push_back(src.maslov[i] + degree + Rational(1));
    ids.push_back("src." + (src.ids.empty() ? std::to_string(i) : src.ids[i]));
  }
  for (std::size_t i = 0; i < nd; ++i) {
    gr.push_back(dst.maslov[i]);
    ids.push_back("dst." + (dst.ids.empty() ? std::to_string(i) : dst.ids[i]));
  }
  FreeUComplex cone = make_free_complex(std::move(gr), std::move(ids));
  for (const auto& [key, e] : src.differential.entries()) cone.differential.set(key.first, key.second, e);
  for (const auto& [key, e] : dst.differential.entries()) cone.differential.set(ns + key.first, ns + key.second, e);
  for (const auto& [key, e] : f.entries()) cone.differential.set(ns + key.first, key.second, e);
  return cone;
}

std::optional<unsigned> induced_tower_exponent(const UMonomialMatrix& f, const FreeUComplex& src,
                                               const FreeUComplex& dst) {
  if (!is_chain_map(f, src, dst)) throw Error(ErrorKind::InvalidComplex, "map is not a chain map");
  const ModuleDecomp hs = homology_decomp(src);
  const ModuleDecomp hd = homology_decomp(dst);
  if (hs.free_rank != 1 || hd.free_rank != 1) {
    throw Error(ErrorKind::NoTower, "expected one tower on each side, got " + std::to_string(hs.free_rank) + " and " +
                                        std::to_string(hd.free_rank));
  }
  const auto degree = map_degree(f, src, dst);
  if (!degree) return std::nullopt;
  // The cone is acyclic after inverting U exactly when f is nonzero on towers.
  if (homology_decomp(mapping_cone(f, src, dst)).free_rank != 0) return std::nullopt;
  const Rational diff = hd.tower_gradings->front() - hs.tower_gradings->front() - *degree;
  if (!diff.is_integer() || diff.num() < 0 || diff.num() % 2 != 0) {
    throw Error(ErrorKind::InvalidComplex, "tower gradings inconsistent with map degree");
  }
  return static_cast<unsigned>(diff.num() / 2);
}

}  // namespace hfcx
