#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace knotmoney {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer polynomial, index = degree. May carry trailing zeros.
using IntPoly = std::vector<BigInt>;

void trim(IntPoly& p);

/// c0 + c1*x
struct LinearEntry {
  int c0 = 0;
  int c1 = 0;

  LinearEntry& operator+=(LinearEntry o) {
    c0 += o.c0;
    c1 += o.c1;
    return *this;
  }
  friend bool operator==(LinearEntry, LinearEntry) = default;
};

/// Row-major matrix of degree <= 1 integer polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  LinearEntry& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  LinearEntry operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  PolyMatrix without_columns(int a, int b) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<LinearEntry> data_;
};

/// Canonical Alexander polynomial: either the zero polynomial, or integer
/// coefficients with a positive constant term and a non-zero leading term.
class SerialPolynomial {
 public:
  SerialPolynomial() = default;  // zero

  static SerialPolynomial zero() { return {}; }

  /// Divides out the lowest monomial with its sign.
  static SerialPolynomial normalize(const IntPoly& p);

  /// "c0,c1,..." lowest degree first, or "0". Throws Error{MalformedEncoding}
  /// on syntax errors or non-canonical input.
  static SerialPolynomial parse(std::string_view text);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  std::string to_string() const;

  friend bool operator==(const SerialPolynomial&, const SerialPolynomial&) = default;
  friend std::strong_ordering operator<=>(const SerialPolynomial& a, const SerialPolynomial& b);

 private:
  std::vector<BigInt> coeffs_;
};

}  // namespace knotmoney
