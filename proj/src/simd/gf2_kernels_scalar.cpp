#include "hfcx/gf2_simd.hpp"

#include <bit>

namespace hfcx::simd {

void xor_row_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

std::size_t popcount_row(const std::uint64_t* row, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += static_cast<std::size_t>(std::popcount(row[i]));
  return n;
}

}  // namespace hfcx::simd
