#include "knotmoney/qtable.hpp"

#include <limits>
#include <string>

#include "knotmoney/error.hpp"

namespace knotmoney {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt derangements(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "derangements of a negative count");
  BigInt prev2 = 1, prev1 = 0;  // D(0), D(1)
  if (n == 0) return prev2;
  for (int i = 2; i <= n; ++i) {
    BigInt next = (i - 1) * (prev1 + prev2);
    prev2 = std::move(prev1);
    prev1 = std::move(next);
  }
  return prev1;
}

BigInt diagram_count(int d) { return d < 2 ? BigInt(0) : factorial(d) * derangements(d); }

Decimal y_weight(int d, int dbar) {
  if (dbar < 1 || d < 2 || d > 2 * dbar) return Decimal(0);
  const Decimal e = Decimal(-(d - dbar) * (d - dbar)) / Decimal(2 * dbar);
  return exp(e) / Decimal(diagram_count(d));
}

namespace {

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

}  // namespace

QTable::QTable(int dbar) : dbar_(dbar) {
  if (dbar < 2) throw Error(ErrorKind::InvalidParameter, "Dbar must be at least 2, got " + std::to_string(dbar));
  const int hi = 2 * dbar;
  std::vector<Decimal> y(hi + 1);
  int argmin = 2;
  for (int d = 2; d <= hi; ++d) {
    y[d] = y_weight(d, dbar);
    if (y[d] < y[argmin]) argmin = d;
  }
  const int sq_min = (argmin - dbar) * (argmin - dbar);
  q_.assign(hi + 1, BigInt(0));
  for (int d = 2; d <= hi; ++d) {
    const int sq = (d - dbar) * (d - dbar);
    if (sq == sq_min) {
      // Equal Gaussian factors cancel; the ratio is an exact rational.
      q_[d] = ceil_div(diagram_count(argmin), diagram_count(d));
    } else {
      q_[d] = ceil(y[d] / y[argmin]).convert_to<BigInt>();
    }
    if (q_[d] > q_max_) q_max_ = q_[d];
  }
}

const BigInt& QTable::q_exact(int d) const {
  if (d < 2 || d > 2 * dbar_) return zero_;
  return q_[d];
}

namespace {

std::uint64_t to_u64(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorKind::CapacityExceeded, std::string(what) + " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

}  // namespace

std::uint64_t QTable::q(int d) const { return to_u64(q_exact(d), "q(d)"); }
std::uint64_t QTable::q_max() const { return to_u64(q_max_, "q_max"); }

std::uint64_t QTable::w_count() const { return to_u64(q_max_ * q_max_ + 1, "q_max^2 + 1"); }

bool QTable::fits_chain() const noexcept {
  return q_max_ * q_max_ + 1 <= std::numeric_limits<std::uint64_t>::max();
}

BigInt QTable::config_count() const {
  BigInt total = 0;
  for (int d = 2; d <= 2 * dbar_; ++d) total += q_[d] * diagram_count(d);
  return total;
}

BigInt q_of_d(int d, int dbar) { return QTable(dbar).q_exact(d); }

}  // namespace knotmoney
