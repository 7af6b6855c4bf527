#include <random>
#include <vector>

#include "doctest.h"
#include "hfcx/error.hpp"
#include "hfcx/gf2_matrix.hpp"
#include "hfcx/gf2_simd.hpp"

using namespace hfcx;
using simd::Backend;

namespace {

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint64_t> v(n);
  for (auto& w : v) w = rng();
  return v;
}

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double density) {
  std::bernoulli_distribution bit(density);
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (bit(rng)) m.set(i, j);
    }
  }
  return m;
}

// Gaussian elimination on vector<bool> rows, no word tricks.
std::size_t naive_rank(const BitMatrix& m) {
  std::vector<std::vector<bool>> a(m.rows(), std::vector<bool>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.get(i, j);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && !a[p][c]) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i != rank && a[i][c]) {
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = a[i][j] != a[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("every available backend matches the scalar xor") {
  std::mt19937_64 rng(11);
  for (Backend b : {Backend::Avx2, Backend::Neon}) {
    if (!simd::backend_available(b)) continue;
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 17u, 64u, 129u}) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto src = random_words(rng, n);
        auto a = random_words(rng, n);
        auto b2 = a;
        simd::xor_row_scalar(a.data(), src.data(), n);
#if defined(HFCX_HAVE_AVX2)
        if (b == Backend::Avx2) simd::xor_row_avx2(b2.data(), src.data(), n);
#endif
#if defined(HFCX_HAVE_NEON)
        if (b == Backend::Neon) simd::xor_row_neon(b2.data(), src.data(), n);
#endif
        CHECK(a == b2);
      }
    }
  }
}

TEST_CASE("scalar backend is always available and selectable") {
  const Backend before = simd::active_backend();
  CHECK(simd::backend_available(Backend::Scalar));
  simd::set_backend(Backend::Scalar);
  CHECK(simd::active_backend() == Backend::Scalar);
  CHECK(simd::backend_name(Backend::Scalar) == "scalar");
  for (Backend b : {Backend::Avx2, Backend::Neon}) {
    if (!simd::backend_available(b)) CHECK_THROWS_AS(simd::set_backend(b), Error);
  }
  simd::set_backend(before);
}

TEST_CASE("rank and kernel agree across backends and with a naive elimination") {
  std::mt19937_64 rng(5);
  const Backend before = simd::active_backend();
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 90;
    const std::size_t c = 1 + rng() % 300;
    const BitMatrix m = random_matrix(rng, r, c, trial % 2 ? 0.5 : 0.05);
    const std::size_t expect = naive_rank(m);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
      if (!simd::backend_available(b)) continue;
      simd::set_backend(b);
      CHECK(gf2_rank(m) == expect);
      const BitMatrix k = gf2_left_kernel(m);
      CHECK(k.rows() == r - expect);
      CHECK(gf2_rank(k) == k.rows());
      // Every kernel row annihilates m.
      for (std::size_t i = 0; i < k.rows(); ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          bool acc = false;
          for (std::size_t t = 0; t < r; ++t) acc ^= k.get(i, t) && m.get(t, j);
          CHECK_FALSE(acc);
        }
      }
    }
  }
  simd::set_backend(before);
}

TEST_CASE("popcount and row helpers") {
  BitMatrix m(2, 130);
  m.set(0, 0);
  m.set(0, 64);
  m.set(0, 129);
  CHECK(simd::popcount_row(m.row(0), m.words_per_row()) == 3);
  m.add_row(1, 0);
  CHECK(m.get(1, 129));
  m.swap_rows(0, 1);
  CHECK(m.get(0, 64));
  m.add_row(1, 0);
  CHECK(m.row_is_zero(1));
  CHECK(vstack(m, m).rows() == 4);
}
