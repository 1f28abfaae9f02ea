#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cstdint>
#include <vector>

#include "knotmoney/polynomial.hpp"

namespace knotmoney {

/// Fixed 64-digit decimal arithmetic. q(d) defines the scheme, so the
/// precision is pinned rather than left to the platform's long double.
using Decimal = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<64>>;

BigInt factorial(int n);

/// Fixed-point-free permutations of n elements, D(n) = (n-1)(D(n-1)+D(n-2)).
BigInt derangements(int n);

/// Number of valid d x d grid diagrams, d! * D(d).
BigInt diagram_count(int d);

/// Unnormalised dimension weight exp(-(d-Dbar)^2 / (2 Dbar)) / (d! D(d)) on
/// 2 <= d <= 2 Dbar, zero elsewhere.
Decimal y_weight(int d, int dbar);

/// Integer weights q(d) = ceil(y(d) / y_min) for one security parameter.
class QTable {
 public:
  /// Throws Error{InvalidParameter} for dbar < 2.
  explicit QTable(int dbar);

  int dbar() const noexcept { return dbar_; }
  int dmin() const noexcept { return 2; }
  int dmax() const noexcept { return 2 * dbar_; }

  /// Zero outside [2, 2 Dbar].
  const BigInt& q_exact(int d) const;
  const BigInt& q_max_exact() const noexcept { return q_max_; }

  /// Machine-word views; throw Error{CapacityExceeded} when the value does
  /// not fit in 64 bits.
  std::uint64_t q(int d) const;
  std::uint64_t q_max() const;

  /// Size of the j=1 parameter range {0..q_max^2}. Throws
  /// Error{CapacityExceeded} when q_max^2 + 1 overflows 64 bits.
  std::uint64_t w_count() const;
  bool fits_chain() const noexcept;

  /// Sum over d of q(d) * d! * D(d): the number of configurations (G, i).
  BigInt config_count() const;

  /// Step-2 dimension window [ceil(Dbar/2), floor(3 Dbar/2)].
  int window_lo() const noexcept { return (dbar_ + 1) / 2; }
  int window_hi() const noexcept { return (3 * dbar_) / 2; }
  bool in_window(int d) const noexcept { return d >= window_lo() && d <= window_hi(); }

 private:
  int dbar_;
  std::vector<BigInt> q_;  // indexed by d, size 2*dbar+1
  BigInt q_max_;
  BigInt zero_;
};

/// Convenience wrapper around QTable.
BigInt q_of_d(int d, int dbar);

}  // namespace knotmoney
