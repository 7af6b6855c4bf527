#pragma once

// Row kernels for dense GF(2) bit matrices. Each backend is callable directly
// so tests can compare them; xor_row() goes through the runtime dispatch.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hfcx::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

// Compiled in and supported by the running CPU.
bool backend_available(Backend b);

// Backend used by xor_row(). Chosen at first use: the best available one,
// unless HFCX_SIMD=scalar|avx2|neon overrides it.
Backend active_backend();

// Throws InvalidArgument if the backend is not available.
void set_backend(Backend b);

// dst[i] ^= src[i] for i < words.
void xor_row(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);

// Popcount of a row.
std::size_t popcount_row(const std::uint64_t* row, std::size_t words);

void xor_row_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
#if defined(HFCX_HAVE_AVX2)
void xor_row_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
#endif
#if defined(HFCX_HAVE_NEON)
void xor_row_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
#endif

}  // namespace hfcx::simd
