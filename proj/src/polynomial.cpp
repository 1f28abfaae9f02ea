#include "knotmoney/polynomial.hpp"

#include <cctype>

#include "knotmoney/error.hpp"

namespace knotmoney {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

PolyMatrix PolyMatrix::without_columns(int a, int b) const {
  PolyMatrix out(rows_, cols_ - (a == b ? 1 : 2));
  for (int r = 0; r < rows_; ++r) {
    int cc = 0;
    for (int c = 0; c < cols_; ++c) {
      if (c == a || c == b) continue;
      out(r, cc++) = (*this)(r, c);
    }
  }
  return out;
}

SerialPolynomial SerialPolynomial::normalize(const IntPoly& p) {
  SerialPolynomial s;
  std::size_t low = 0;
  while (low < p.size() && p[low] == 0) ++low;
  if (low == p.size()) return s;
  std::size_t high = p.size();
  while (p[high - 1] == 0) --high;
  const bool flip = p[low] < 0;
  s.coeffs_.assign(p.begin() + static_cast<std::ptrdiff_t>(low), p.begin() + static_cast<std::ptrdiff_t>(high));
  if (flip) {
    for (auto& c : s.coeffs_) c = -c;
  }
  return s;
}

SerialPolynomial SerialPolynomial::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  if (text == "0") return {};
  IntPoly coeffs;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(',', pos);
    const auto tok = text.substr(pos, next == std::string_view::npos ? text.size() - pos : next - pos);
    std::size_t i = (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
    if (i == tok.size()) throw Error(ErrorKind::MalformedEncoding, "bad serial coefficient '" + std::string(tok) + "'");
    for (std::size_t j = i; j < tok.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(tok[j]))) {
        throw Error(ErrorKind::MalformedEncoding, "bad serial coefficient '" + std::string(tok) + "'");
      }
    }
    BigInt v(std::string(tok.substr(i)));
    coeffs.push_back(tok[0] == '-' ? BigInt(-v) : v);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  auto s = normalize(coeffs);
  if (s.coeffs_ != coeffs) throw Error(ErrorKind::MalformedEncoding, "serial is not in canonical form");
  return s;
}

std::string SerialPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ',';
    s += coeffs_[i].str();
  }
  return s;
}

std::strong_ordering operator<=>(const SerialPolynomial& a, const SerialPolynomial& b) {
  if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] < b.coeffs_[i]) return std::strong_ordering::less;
    if (b.coeffs_[i] < a.coeffs_[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace knotmoney
