// AVX2/FMA variants. One __m256d holds two complex<double> values laid out as
// [re0, im0, re1, im1]; odd tails fall through to the scalar loops.

#include <immintrin.h>

#include "kernels_detail.hpp"

namespace toa::kernels::detail {

namespace {

inline const double* as_doubles(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

// [a, b, c, d] -> [b, a, d, c]
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0x5); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// even lanes minus odd lanes
inline double alt_sum(__m256d v) {
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  return hsum(_mm256_mul_pd(v, sign));
}

}  // namespace

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d t = _mm256_mul_pd(ai, swap_re_im(xv));
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, t);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  const double* xd = as_doubles(x);
  const double* yd = as_doubles(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    s1 = _mm256_fmadd_pd(xv, yv, s1);
    s2 = _mm256_fmadd_pd(xv, swap_re_im(yv), s2);
  }
  double re = hsum(s1);
  double im = alt_sum(s2);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void gemv_avx2(const cplx* a, const cplx* x, cplx* y, std::size_t rows,
               std::size_t cols) {
  const double* xd = as_doubles(x);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* ad = as_doubles(a + r * cols);
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= cols; j += 2) {
      const __m256d av = _mm256_loadu_pd(ad + 2 * j);
      const __m256d xv = _mm256_loadu_pd(xd + 2 * j);
      s1 = _mm256_fmadd_pd(av, xv, s1);
      s2 = _mm256_fmadd_pd(av, swap_re_im(xv), s2);
    }
    double re = alt_sum(s1);
    double im = hsum(s2);
    const cplx* row = a + r * cols;
    for (; j < cols; ++j) {
      re += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
      im += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
    }
    y[r] = {re, im};
  }
}

void gemm_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t n,
               std::size_t k, std::size_t m) {
  for (std::size_t i = 0; i < n * m; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c + i * m;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx av = a[i * k + l];
      if (av == cplx{}) continue;
      axpy_avx2(av, b + l * m, crow, m);
    }
  }
}

}  // namespace toa::kernels::detail
