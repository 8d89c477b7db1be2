#include "cotr/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace cotr::kernels {

// Lanes hold r = dst + c*src < p^2 <= 2^24, exact in float; the reciprocal
// quotient is off by at most one and is fixed up with two compares.
__attribute__((target("avx2"))) void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src,
                                               std::uint32_t c, std::size_t n,
                                               std::uint32_t p) {
  if (c == 0) return;
  std::size_t j = 0;
  if (p == 2) {
    for (; j + 8 <= n; j += 8) {
      __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
      __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), _mm256_xor_si256(a, b));
    }
    for (; j < n; ++j) dst[j] ^= src[j];
    return;
  }
  if (p < 4096) {
    const __m256i vc = _mm256_set1_epi32(int(c));
    const __m256i vp = _mm256_set1_epi32(int(p));
    const __m256i vzero = _mm256_setzero_si256();
    const __m256i vpm1 = _mm256_set1_epi32(int(p) - 1);
    const __m256 inv = _mm256_set1_ps(1.0f / float(p));
    for (; j + 8 <= n; j += 8) {
      __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
      __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
      __m256i r = _mm256_add_epi32(a, _mm256_mullo_epi32(b, vc));
      __m256 q = _mm256_floor_ps(_mm256_mul_ps(_mm256_cvtepi32_ps(r), inv));
      __m256i t = _mm256_sub_epi32(r, _mm256_mullo_epi32(_mm256_cvttps_epi32(q), vp));
      t = _mm256_add_epi32(t, _mm256_and_si256(_mm256_cmpgt_epi32(vzero, t), vp));
      t = _mm256_sub_epi32(t, _mm256_and_si256(_mm256_cmpgt_epi32(t, vpm1), vp));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), t);
    }
  }
  axpy_scalar(dst + j, src + j, c, n - j, p);
}

}  // namespace cotr::kernels
#endif
