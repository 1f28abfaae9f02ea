#include "knotmoney/alexander.hpp"

#include <algorithm>
#include <cmath>

#include "knotmoney/error.hpp"
#include "knotmoney/kernels.hpp"

namespace knotmoney {

namespace {

constexpr std::size_t kPrimeTableSize = 256;

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint32_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

std::uint64_t reduce(long long v, std::uint64_t p) {
  const long long m = v % static_cast<long long>(p);
  return static_cast<std::uint64_t>(m < 0 ? m + static_cast<long long>(p) : m);
}

// Determinant of the n x n matrix in `a` (row-major, residues as doubles);
// destroys `a`.
std::uint64_t det_in_place(std::vector<double>& a, int n, std::uint64_t p, const kernels::KernelTable& k) {
  const auto mp = kernels::ModPrime::make(static_cast<std::uint32_t>(p));
  std::uint64_t det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && a[static_cast<std::size_t>(pivot) * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    double* prow = a.data() + static_cast<std::size_t>(col) * n;
    if (pivot != col) {
      std::swap_ranges(prow, prow + n, a.data() + static_cast<std::size_t>(pivot) * n);
      det = (p - det) % p;
    }
    const auto pv = static_cast<std::uint64_t>(prow[col]);
    det = mulmod(det, pv, p);
    const std::uint64_t inv = invmod(pv, p);
    for (int r = col + 1; r < n; ++r) {
      double* row = a.data() + static_cast<std::size_t>(r) * n;
      if (row[col] == 0) continue;
      const std::uint64_t f = mulmod(static_cast<std::uint64_t>(row[col]), inv, p);
      k.mod_submul(row + col, prow + col, static_cast<double>(f), mp, static_cast<std::size_t>(n - col));
    }
  }
  return det;
}

// Bits needed to hold 2 * (Hadamard bound on |det| over |x| = 1) plus sign.
double coefficient_bound_bits(const PolyMatrix& m) {
  double bits = 0;
  for (int r = 0; r < m.rows(); ++r) {
    double sq = 0;
    for (int c = 0; c < m.cols(); ++c) {
      const double e = std::abs(m(r, c).c0) + std::abs(m(r, c).c1);
      sq += e * e;
    }
    if (sq == 0) return 0;
    bits += 0.5 * std::log2(sq);
  }
  return bits;
}

}  // namespace

const std::vector<std::uint32_t>& modular_primes(std::size_t n) {
  static const std::vector<std::uint32_t> table = [] {
    std::vector<std::uint32_t> ps;
    for (std::uint32_t c = kernels::kMaxModulus - 1; ps.size() < kPrimeTableSize; c -= 2) {
      if (is_prime(c)) ps.push_back(c);
    }
    return ps;
  }();
  if (n > table.size()) throw Error(ErrorKind::CapacityExceeded, "determinant needs more than 256 moduli");
  return table;
}

RegionMap regions(const GridDiagram& g) {
  if (!is_connected_projection(g)) {
    throw Error(ErrorKind::DisconnectedProjection, "diagram projection is not connected");
  }
  const int d = g.dim();
  RegionMap rm;
  rm.side = 2 * d + 1;
  const int side = rm.side;
  rm.region_of.assign(static_cast<std::size_t>(side) * side, 0);
  auto idx = [side](int px, int py) { return static_cast<std::size_t>(py) * side + px; };
  const auto xc = g.x_cols();
  const auto oc = g.o_cols();
  for (int c = 0; c < d; ++c) {
    const int lo = std::min(g.x_row(c), g.o_row(c)), hi = std::max(g.x_row(c), g.o_row(c));
    for (int py = 2 * lo + 1; py <= 2 * hi + 1; ++py) rm.region_of[idx(2 * c + 1, py)] = -1;
  }
  for (int r = 0; r < d; ++r) {
    const int lo = std::min(xc[r], oc[r]), hi = std::max(xc[r], oc[r]);
    for (int px = 2 * lo + 1; px <= 2 * hi + 1; ++px) rm.region_of[idx(px, 2 * r + 1)] = -1;
  }
  // Flood fill; 0 marks unvisited face pixels, ids start at 1 then shift.
  std::vector<int> stack;
  int next = 1;
  for (int start = 0; start < side * side; ++start) {
    if (rm.region_of[start] != 0) continue;
    rm.region_of[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int px = cur % side, py = cur / side;
      const int nbr[4][2] = {{px + 1, py}, {px - 1, py}, {px, py + 1}, {px, py - 1}};
      for (const auto& n : nbr) {
        if (n[0] < 0 || n[1] < 0 || n[0] >= side || n[1] >= side) continue;
        auto& cell = rm.region_of[idx(n[0], n[1])];
        if (cell == 0) {
          cell = next;
          stack.push_back(static_cast<int>(idx(n[0], n[1])));
        }
      }
    }
    ++next;
  }
  for (auto& cell : rm.region_of) {
    if (cell > 0) --cell;
  }
  rm.region_count = next - 1;
  rm.outer_region = rm.region_of[0];

  for (int py = 0; py < side; ++py) {
    for (int px = 0; px < side; ++px) {
      if (rm.at(px, py) >= 0) continue;
      int a = -1, b = -1;
      if (py % 2 == 1 && px % 2 == 0) {  // horizontal strand between columns
        a = rm.at(px, py - 1);
        b = rm.at(px, py + 1);
      } else if (px % 2 == 1 && py % 2 == 0) {  // vertical strand between rows
        a = rm.at(px - 1, py);
        b = rm.at(px + 1, py);
      }
      if (a >= 0 && b >= 0 && a != b) rm.adjacent_pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(rm.adjacent_pairs.begin(), rm.adjacent_pairs.end());
  rm.adjacent_pairs.erase(std::unique(rm.adjacent_pairs.begin(), rm.adjacent_pairs.end()), rm.adjacent_pairs.end());
  return rm;
}

std::array<RegionTerm, 4> crossing_equation(const Crossing& c, const RegionMap& rm) {
  const int px = 2 * c.col + 1, py = 2 * c.row + 1;
  const int ne = rm.at(px + 1, py + 1), nw = rm.at(px - 1, py + 1);
  const int sw = rm.at(px - 1, py - 1), se = rm.at(px + 1, py - 1);
  // (j, k, l, m) counterclockwise from the left side of the outgoing under-strand.
  const std::array<int, 4> q = c.under_dir == HorizontalDir::East ? std::array<int, 4>{ne, nw, sw, se}
                                                                  : std::array<int, 4>{sw, se, ne, nw};
  return {RegionTerm{q[0], {0, 1}}, RegionTerm{q[1], {0, -1}}, RegionTerm{q[2], {1, 0}},
          RegionTerm{q[3], {-1, 0}}};
}

PolyMatrix alexander_matrix(const GridDiagram& g, const RegionMap& rm) {
  const auto cs = crossings(g);
  PolyMatrix m(static_cast<int>(cs.size()), rm.region_count);
  for (int r = 0; r < static_cast<int>(cs.size()); ++r) {
    for (const auto& t : crossing_equation(cs[r], rm)) m(r, t.region) += t.coeff;
  }
  return m;
}

PolyMatrix alexander_matrix(const GridDiagram& g) { return alexander_matrix(g, regions(g)); }

PolyMatrix delete_adjacent_columns(const PolyMatrix& m, const RegionMap& rm) {
  for (const auto& [a, b] : rm.adjacent_pairs) {
    if (a == rm.outer_region || b == rm.outer_region) return m.without_columns(a, b);
  }
  throw Error(ErrorKind::DisconnectedProjection, "outer region has no neighbour");
}

std::vector<std::uint32_t> poly_det_mod(const PolyMatrix& m, std::uint32_t prime) {
  const int n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::InvalidParameter, "determinant of non-square matrix");
  const std::uint64_t p = prime;
  const auto& k = kernels::active();
  // Values at nodes t = 0..n, then Newton divided differences (node gaps are
  // the integers 1..n).
  std::vector<std::uint64_t> coef(static_cast<std::size_t>(n) + 1);
  std::vector<double> buf(static_cast<std::size_t>(n) * n);
  for (int t = 0; t <= n; ++t) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const auto e = m(r, c);
        buf[static_cast<std::size_t>(r) * n + c] =
            static_cast<double>(reduce(static_cast<long long>(e.c0) + static_cast<long long>(e.c1) * t, p));
      }
    }
    coef[t] = det_in_place(buf, n, p, k);
  }
  for (int j = 1; j <= n; ++j) {
    const std::uint64_t inv_j = invmod(static_cast<std::uint64_t>(j), p);
    for (int i = n; i >= j; --i) coef[i] = mulmod((coef[i] + p - coef[i - 1]) % p, inv_j, p);
  }
  // Newton form -> monomial basis by Horner on (x - j).
  std::vector<std::uint64_t> poly{coef[n]};
  for (int j = n - 1; j >= 0; --j) {
    std::vector<std::uint64_t> next(poly.size() + 1, 0);
    const std::uint64_t shift = (p - static_cast<std::uint64_t>(j) % p) % p;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = (next[i + 1] + poly[i]) % p;
      next[i] = (next[i] + mulmod(poly[i], shift, p)) % p;
    }
    next[0] = (next[0] + coef[j]) % p;
    poly = std::move(next);
  }
  return std::vector<std::uint32_t>(poly.begin(), poly.end());
}

IntPoly poly_det(const PolyMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::InvalidParameter, "determinant of non-square matrix");
  if (n == 0) return IntPoly{BigInt(1)};
  const double need_bits = coefficient_bound_bits(m) + 2.0;
  std::size_t count = 1;
  {
    double have = std::log2(static_cast<double>(kernels::kMaxModulus - 1));
    while (have < need_bits) {
      ++count;
      have += std::log2(static_cast<double>(kernels::kMaxModulus - 1)) - 0.01;
    }
  }
  const auto& primes = modular_primes(count);
  // Incremental CRT over the residue vectors.
  IntPoly acc(static_cast<std::size_t>(n) + 1, BigInt(0));
  BigInt modulus = 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = primes[i];
    const auto res = poly_det_mod(m, primes[i]);
    const std::uint64_t minv = invmod(static_cast<std::uint64_t>(modulus % p), p);
    for (int d = 0; d <= n; ++d) {
      const auto cur = static_cast<std::uint64_t>(acc[d] % p);
      const std::uint64_t delta = mulmod((res[d] + p - cur) % p, minv, p);
      acc[d] += modulus * delta;
    }
    modulus *= p;
  }
  const BigInt half = modulus / 2;
  for (auto& c : acc) {
    if (c > half) c -= modulus;
  }
  trim(acc);
  return acc;
}

SerialPolynomial alexander(const GridDiagram& g) {
  if (!is_connected_projection(g)) return SerialPolynomial::zero();
  const auto rm = regions(g);
  return SerialPolynomial::normalize(poly_det(delete_adjacent_columns(alexander_matrix(g, rm), rm)));
}

}  // namespace knotmoney
