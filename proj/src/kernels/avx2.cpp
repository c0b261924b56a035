// Compiled with -mavx2 -mfma; only reached through dispatch after a CPUID check.

#include <immintrin.h>

#include "fockgate/kernels.hpp"

namespace fockgate::kernels::avx2 {
namespace {

// Two interleaved complex numbers per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}
inline void store2(cplx* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}
inline __m128d load1(const cplx* p) {
  return _mm_loadu_pd(reinterpret_cast<const double*>(p));
}

// acc + a * b, with a broadcast as (re, im) and b holding two complex values.
inline __m256d cmul_acc(__m256d acc, __m256d are, __m256d aim, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  // even lanes: are*b_re - aim*b_im ; odd lanes: are*b_im + aim*b_re
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bswap)));
}

// acc + x * y elementwise for two complex pairs.
inline __m256d cmul_pair_acc(__m256d acc, __m256d x, __m256d y) {
  const __m256d xre = _mm256_movedup_pd(x);
  const __m256d xim = _mm256_permute_pd(x, 0b1111);
  return cmul_acc(acc, xre, xim, y);
}

// acc + conj(x) * y elementwise for two complex pairs.
inline __m256d cmulc_pair_acc(__m256d acc, __m256d x, __m256d y) {
  const __m256d xre = _mm256_movedup_pd(x);
  const __m256d xim = _mm256_permute_pd(x, 0b1111);
  const __m256d yswap = _mm256_permute_pd(y, 0b0101);
  // even lanes: xre*y_re + xim*y_im ; odd lanes: xre*y_im - xim*y_re
  return _mm256_add_pd(acc, _mm256_fmsubadd_pd(xre, y, _mm256_mul_pd(xim, yswap)));
}

inline cplx hsum2(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

}  // namespace

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
          const cplx* b, cplx* c) noexcept {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    const cplx* arow = a + i * k;
    std::size_t j = 0;
    // Four output pairs per sweep over p to keep partial sums in registers.
    for (; j + 8 <= n; j += 8) {
      __m256d c0 = _mm256_setzero_pd(), c1 = _mm256_setzero_pd();
      __m256d c2 = _mm256_setzero_pd(), c3 = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d are = _mm256_broadcast_sd(reinterpret_cast<const double*>(arow + p));
        const __m256d aim = _mm256_broadcast_sd(reinterpret_cast<const double*>(arow + p) + 1);
        const cplx* brow = b + p * n + j;
        c0 = cmul_acc(c0, are, aim, load2(brow));
        c1 = cmul_acc(c1, are, aim, load2(brow + 2));
        c2 = cmul_acc(c2, are, aim, load2(brow + 4));
        c3 = cmul_acc(c3, are, aim, load2(brow + 6));
      }
      store2(crow + j, c0);
      store2(crow + j + 2, c1);
      store2(crow + j + 4, c2);
      store2(crow + j + 6, c3);
    }
    for (; j < n2; j += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d are = _mm256_broadcast_sd(reinterpret_cast<const double*>(arow + p));
        const __m256d aim = _mm256_broadcast_sd(reinterpret_cast<const double*>(arow + p) + 1);
        acc = cmul_acc(acc, are, aim, load2(b + p * n + j));
      }
      store2(crow + j, acc);
    }
    if (j < n) {
      // Odd column count: one complex lane per product.
      __m128d acc = _mm_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m128d av = load1(arow + p);
        const __m128d bv = load1(b + p * n + j);
        const __m128d are = _mm_movedup_pd(av);
        const __m128d aim = _mm_permute_pd(av, 0b11);
        const __m128d bswap = _mm_permute_pd(bv, 0b01);
        acc = _mm_add_pd(acc, _mm_fmaddsub_pd(are, bv, _mm_mul_pd(aim, bswap)));
      }
      _mm_storeu_pd(reinterpret_cast<double*>(crow + j), acc);
    }
  }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* row = a + i * n;
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      acc0 = cmul_pair_acc(acc0, load2(row + j), load2(x + j));
      acc1 = cmul_pair_acc(acc1, load2(row + j + 2), load2(x + j + 2));
    }
    for (; j < n2; j += 2) acc0 = cmul_pair_acc(acc0, load2(row + j), load2(x + j));
    cplx s = hsum2(_mm256_add_pd(acc0, acc1));
    if (j < n) s += row[j] * x[j];
    y[i] = s;
  }
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) noexcept {
  const std::size_t n2 = n & ~std::size_t{1};
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = cmulc_pair_acc(acc0, load2(x + i), load2(y + i));
    acc1 = cmulc_pair_acc(acc1, load2(x + i + 2), load2(y + i + 2));
  }
  for (; i < n2; i += 2) acc0 = cmulc_pair_acc(acc0, load2(x + i), load2(y + i));
  cplx s = hsum2(_mm256_add_pd(acc0, acc1));
  if (i < n) s += std::conj(x[i]) * y[i];
  return s;
}

}  // namespace fockgate::kernels::avx2
