#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops. Each kernel has a portable scalar reference in
// kernels::generic and an AVX2/FMA variant in kernels::avx2; the active table
// is chosen once at startup from CPUID (override with KNOTMONEY_SIMD=generic).

namespace knotmoney::kernels {

/// Prime modulus below 2^26 held as a double, so products of two residues
/// stay exact in the 53-bit mantissa.
struct ModPrime {
  double p = 0;
  double inv_p = 0;

  static ModPrime make(std::uint32_t prime) { return ModPrime{double(prime), 1.0 / double(prime)}; }
};

inline constexpr std::uint32_t kMaxModulus = 1u << 26;

struct KernelTable {
  std::string_view name;
  /// dst[i] = (dst[i] - factor * src[i]) mod p, all operands in [0, p).
  void (*mod_submul)(double* dst, const double* src, double factor, ModPrime p, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  /// y[i] += a * x[i]
  void (*axpy)(double* y, double a, const double* x, std::size_t n);
  /// sum_i values[i] * x[idx[i]]
  double (*gather_dot)(const double* values, const double* x, const std::int32_t* idx, std::size_t n);
};

namespace generic {
const KernelTable& table();
}

namespace avx2 {
/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* table();
}

/// Table selected for this process.
const KernelTable& active();

}  // namespace knotmoney::kernels
