#pragma once

// Dense matrices over GF(2), rows packed into 64-bit words.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hfcx {

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t r, std::size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1u; }
  void set(std::size_t r, std::size_t c, bool v = true);
  void flip(std::size_t r, std::size_t c) { row(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }

  std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }

  void append_zero_row();
  bool row_is_zero(std::size_t r) const;
  void swap_rows(std::size_t a, std::size_t b);
  // row(dst) ^= row(src), starting at word `from_word`.
  void add_row(std::size_t dst, std::size_t src, std::size_t from_word = 0);

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

// Rank of the row space.
std::size_t gf2_rank(BitMatrix m);

// Basis of {v : v * m = 0}, as rows of an (rows - rank) x rows matrix.
BitMatrix gf2_left_kernel(const BitMatrix& m);

// Stacks two matrices with the same column count.
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

}  // namespace hfcx
