#include <arm_neon.h>

#include "hfcx/gf2_simd.hpp"

namespace hfcx::simd {

void xor_row_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    uint64x2_t a = vld1q_u64(dst + i);
    uint64x2_t b = vld1q_u64(src + i);
    vst1q_u64(dst + i, veorq_u64(a, b));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

}  // namespace hfcx::simd
