#include "hfcx/gf2_matrix.hpp"

#include <algorithm>

#include "hfcx/error.hpp"
#include "hfcx/gf2_simd.hpp"

namespace hfcx {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  if (v) {
    row(r)[c >> 6] |= bit;
  } else {
    row(r)[c >> 6] &= ~bit;
  }
}

void BitMatrix::append_zero_row() {
  data_.resize(data_.size() + words_, 0);
  ++rows_;
}

bool BitMatrix::row_is_zero(std::size_t r) const {
  const std::uint64_t* p = row(r);
  return std::all_of(p, p + words_, [](std::uint64_t w) { return w == 0; });
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row(a), row(a) + words_, row(b));
}

void BitMatrix::add_row(std::size_t dst, std::size_t src, std::size_t from_word) {
  if (from_word >= words_) return;
  simd::xor_row(row(dst) + from_word, row(src) + from_word, words_ - from_word);
}

std::size_t gf2_rank(BitMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(rank, p);
    // Earlier columns of the remaining rows are already zero.
    const std::size_t w = c >> 6;
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m.get(r, c)) m.add_row(r, rank, w);
    }
    ++rank;
  }
  return rank;
}

BitMatrix gf2_left_kernel(const BitMatrix& m) {
  const std::size_t n = m.rows();
  // [m | I]; eliminating on the left block leaves kernel vectors on the right.
  BitMatrix aug(n, m.cols() + n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.get(r, c)) aug.set(r, c);
    }
    aug.set(r, m.cols() + r);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < n; ++c) {
    std::size_t p = rank;
    while (p < n && !aug.get(p, c)) ++p;
    if (p == n) continue;
    aug.swap_rows(rank, p);
    const std::size_t w = c >> 6;
    for (std::size_t r = rank + 1; r < n; ++r) {
      if (aug.get(r, c)) aug.add_row(r, rank, w);
    }
    ++rank;
  }
  BitMatrix ker(n - rank, n);
  for (std::size_t r = rank; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (aug.get(r, m.cols() + c)) ker.set(r - rank, c);
    }
  }
  return ker;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidArgument, "vstack column mismatch");
  BitMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) std::copy(a.row(r), a.row(r) + a.words_per_row(), out.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r) {
    std::copy(b.row(r), b.row(r) + b.words_per_row(), out.row(a.rows() + r));
  }
  return out;
}

}  // namespace hfcx
