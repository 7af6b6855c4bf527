#include <atomic>
#include <cstdlib>
#include <string>

#include "hfcx/error.hpp"
#include "hfcx/gf2_simd.hpp"

namespace hfcx::simd {

namespace {

using XorFn = void (*)(std::uint64_t*, const std::uint64_t*, std::size_t);

XorFn fn_for(Backend b) {
  switch (b) {
#if defined(HFCX_HAVE_AVX2)
    case Backend::Avx2: return &xor_row_avx2;
#endif
#if defined(HFCX_HAVE_NEON)
    case Backend::Neon: return &xor_row_neon;
#endif
    default: return &xor_row_scalar;
  }
}

Backend best_available() {
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
  if (backend_available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

Backend initial_backend() {
  if (const char* env = std::getenv("HFCX_SIMD")) {
    const std::string want(env);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
      if (want == backend_name(b) && backend_available(b)) return b;
    }
  }
  return best_available();
}

struct State {
  std::atomic<Backend> backend;
  std::atomic<XorFn> fn;
  State() {
    Backend b = initial_backend();
    backend.store(b);
    fn.store(fn_for(b));
  }
};

State& state() {
  static State s;
  return s;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "scalar";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(HFCX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(HFCX_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return state().backend.load(); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw Error(ErrorKind::InvalidArgument, "SIMD backend '" + std::string(backend_name(b)) + "' not available");
  }
  state().backend.store(b);
  state().fn.store(fn_for(b));
}

void xor_row(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  state().fn.load(std::memory_order_relaxed)(dst, src, words);
}

}  // namespace hfcx::simd
