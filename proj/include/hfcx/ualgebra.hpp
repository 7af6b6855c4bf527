#pragma once

// Exact linear algebra over F2[U] for matrices whose entries are monomials,
// graded Smith normal form, and F[U]-module decomposition of finite free
// chain complexes.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hfcx/rational.hpp"

namespace hfcx {

// Sparse matrix over F2[U] whose structural entries are the monomials U^e.
class UMonomialMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  UMonomialMatrix() = default;
  UMonomialMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static UMonomialMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }

  // Throws InvalidArgument on out-of-range indices or a duplicate (row, col).
  void set(std::size_t row, std::size_t col, unsigned exponent);
  // Adds U^exponent to the entry in characteristic two; a mismatched exponent
  // would produce a binomial and raises NonMonomialPivot.
  void add(std::size_t row, std::size_t col, unsigned exponent);
  void erase(std::size_t row, std::size_t col) { entries_.erase({row, col}); }

  std::optional<unsigned> get(std::size_t row, std::size_t col) const;
  const std::map<Key, unsigned>& entries() const { return entries_; }

  UMonomialMatrix transposed() const;

  bool operator==(const UMonomialMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Key, unsigned> entries_;
};

// Matrix over F2[U] with arbitrary polynomial entries, stored as the set of
// exponents with odd coefficient. Used for products and composition checks.
class UPolyMatrix {
 public:
  UPolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add(std::size_t row, std::size_t col, unsigned exponent);
  bool is_zero() const { return entries_.empty(); }
  // True when every entry is a single monomial.
  bool is_monomial() const;
  const std::map<UMonomialMatrix::Key, std::map<unsigned, bool>>& entries() const { return entries_; }
  // Converts to monomial form; throws NonMonomialPivot otherwise.
  UMonomialMatrix to_monomial() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::map<UMonomialMatrix::Key, std::map<unsigned, bool>> entries_;
};

UPolyMatrix multiply(const UMonomialMatrix& a, const UMonomialMatrix& b);
UPolyMatrix multiply(const UPolyMatrix& a, const UMonomialMatrix& b);
UPolyMatrix multiply(const UMonomialMatrix& a, const UPolyMatrix& b);

// Finitely generated free chain complex over F2[U]. The differential is
// stored with rows indexing targets and columns indexing sources.
struct FreeUComplex {
  std::vector<std::string> ids;
  std::vector<Rational> maslov;
  UMonomialMatrix differential;

  std::size_t size() const { return maslov.size(); }
};

// Empty complex with n generators and zero differential.
FreeUComplex make_free_complex(std::vector<Rational> maslov, std::vector<std::string> ids = {});

// Checks d^2 = 0 and homogeneity of degree -1. Returns an empty string when
// valid, otherwise a witness description.
std::string check_free_complex(const FreeUComplex& c);

struct TorsionSummand {
  unsigned exponent;
  Rational grading;  // grading of the generating class
  bool operator==(const TorsionSummand&) const = default;
};

// A graded F[U]-module presented as F[U]^free_rank plus a torsion multiset
// of exponents k (one per summand F[U]/U^k, k > 0).
struct ModuleDecomp {
  unsigned free_rank = 0;
  std::vector<unsigned> torsion;  // sorted descending

  // Present when the decomposition was computed from a graded complex.
  std::optional<std::vector<Rational>> tower_gradings;
  std::optional<std::vector<TorsionSummand>> torsion_gradings;

  ModuleDecomp() = default;
  ModuleDecomp(unsigned free, std::vector<unsigned> tors);

  // Equality ignores gradings.
  bool operator==(const ModuleDecomp& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
  bool is_torsion_free() const { return torsion.empty(); }
  std::string to_string() const;
};

ModuleDecomp direct_sum(const ModuleDecomp& a, const ModuleDecomp& b);

struct SnfResult {
  // Invariant factors U^e of the nonzero part, nondecreasing.
  std::vector<unsigned> exponents;
  // Pivot (row, col) of each invariant factor, in the same order.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  // With transforms requested: row_transform * m * col_transform has the
  // entry U^exponents[k] at pivots[k] and zeros elsewhere.
  std::optional<UMonomialMatrix> row_transform;
  std::optional<UMonomialMatrix> col_transform;
};

// Smith normal form of a homogeneous monomial matrix. Pivots are chosen by
// minimal exponent, preferring units. Throws NonMonomialPivot when an
// elimination step would create a binomial.
SnfResult graded_snf(const UMonomialMatrix& m, bool with_transforms = false);

// Homology of c as an F[U]-module. Throws InvalidComplex when c fails its
// invariants.
ModuleDecomp homology_decomp(const FreeUComplex& c);

unsigned annihilator_exponent(const ModuleDecomp& m);

// Grading shift of a monomial map between two graded complexes: the common
// value of maslov_dst(r) - 2e - maslov_src(c) over all entries.
std::optional<Rational> map_degree(const UMonomialMatrix& f, const FreeUComplex& src, const FreeUComplex& dst);

// True when f (rows = dst generators, cols = src generators) commutes with
// the differentials over F2[U].
bool is_chain_map(const UMonomialMatrix& f, const FreeUComplex& src, const FreeUComplex& dst);

// Mapping cone of a homogeneous chain map f: src -> dst, graded so that the
// cone differential has degree -1. Source generators come first.
FreeUComplex mapping_cone(const UMonomialMatrix& f, const FreeUComplex& src, const FreeUComplex& dst);

// Exponent V with the induced map on towers equal to U^V. Both homologies must
// have free rank one (NoTower otherwise). Returns nullopt when the induced
// map kills the tower.
std::optional<unsigned> induced_tower_exponent(const UMonomialMatrix& f, const FreeUComplex& src,
                                               const FreeUComplex& dst);

}  // namespace hfcx
