#include "knotmoney/kernels.hpp"

#if defined(KNOTMONEY_HAVE_AVX2)
#include <immintrin.h>

#include <cmath>
#endif

namespace knotmoney::kernels::avx2 {

#if defined(KNOTMONEY_HAVE_AVX2)

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (a0+a2, a1+a3)
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

void mod_submul(double* dst, const double* src, double factor, ModPrime m, std::size_t n) {
  const __m256d vf = _mm256_set1_pd(factor);
  const __m256d vp = _mm256_set1_pd(m.p);
  const __m256d vinv = _mm256_set1_pd(m.inv_p);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(vf, _mm256_loadu_pd(src + i));
    const __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, vinv));
    __m256d r = _mm256_fnmadd_pd(q, vp, prod);
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vp));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vp, _CMP_GE_OQ), vp));
    __m256d v = _mm256_sub_pd(_mm256_loadu_pd(dst + i), r);
    v = _mm256_add_pd(v, _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_LT_OQ), vp));
    _mm256_storeu_pd(dst + i, v);
  }
  for (; i < n; ++i) {
    const double prod = factor * src[i];
    const double q = std::floor(prod * m.inv_p);
    double r = std::fma(-q, m.p, prod);
    if (r < 0) r += m.p;
    if (r >= m.p) r -= m.p;
    double v = dst[i] - r;
    if (v < 0) v += m.p;
    dst[i] = v;
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

double sum_squares(const double* a, std::size_t n) { return dot(a, a, n); }

void axpy(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

double gather_dot(const double* values, const double* x, const std::int32_t* idx, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    const __m256d xv = _mm256_i32gather_pd(x, vi, 8);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(values + i), xv, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s = std::fma(values[i], x[idx[i]], s);
  return s;
}

}  // namespace

const KernelTable* table() {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable t{"avx2", mod_submul, dot, sum_squares, axpy, gather_dot};
  return supported ? &t : nullptr;
}

#else

const KernelTable* table() { return nullptr; }

#endif

}  // namespace knotmoney::kernels::avx2
