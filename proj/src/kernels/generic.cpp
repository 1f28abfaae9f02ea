#include <cmath>

#include "knotmoney/kernels.hpp"

namespace knotmoney::kernels::generic {

namespace {

void mod_submul(double* dst, const double* src, double factor, ModPrime m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
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

// Four interleaved partial sums, matching the lane layout of the AVX2 kernels
// so both variants round the same way on aligned lengths.
double dot(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) acc[l] = std::fma(a[i + l], b[i + l], acc[l]);
  }
  double s = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

double sum_squares(const double* a, std::size_t n) { return dot(a, a, n); }

void axpy(double* y, double a, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

double gather_dot(const double* values, const double* x, const std::int32_t* idx, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) acc[l] = std::fma(values[i + l], x[idx[i + l]], acc[l]);
  }
  double s = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < n; ++i) s = std::fma(values[i], x[idx[i]], s);
  return s;
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{"generic", mod_submul, dot, sum_squares, axpy, gather_dot};
  return t;
}

}  // namespace knotmoney::kernels::generic
