#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "knotmoney/grid_diagram.hpp"
#include "knotmoney/polynomial.hpp"

namespace knotmoney {

/// Faces of the diagram's projection. The curve is rasterised onto a
/// (2d+1) x (2d+1) lattice: column c's strand sits at x = 2c+1 and row r's at
/// y = 2r+1, so every lattice point with two even coordinates is inside a face.
struct RegionMap {
  int side = 0;
  int region_count = 0;
  int outer_region = 0;
  std::vector<int> region_of;  // -1 on the curve
  /// Unordered pairs {a < b} of regions sharing a strand segment, sorted.
  std::vector<std::pair<int, int>> adjacent_pairs;

  int at(int px, int py) const { return region_of[static_cast<std::size_t>(py) * side + px]; }
};

struct RegionTerm {
  int region = 0;
  LinearEntry coeff;
};

/// Throws Error{DisconnectedProjection}.
RegionMap regions(const GridDiagram& g);

/// Contributions x*r_j - x*r_k + r_l - r_m of one crossing. Quadrants are taken
/// counterclockwise starting from the one left of the under-strand just after
/// it passes under.
std::array<RegionTerm, 4> crossing_equation(const Crossing& c, const RegionMap& rm);

/// a x (a+2) matrix with one row per crossing (in crossings() order).
PolyMatrix alexander_matrix(const GridDiagram& g, const RegionMap& rm);
PolyMatrix alexander_matrix(const GridDiagram& g);

/// Removes the outer region's column and that of the lowest-numbered region
/// adjacent to it.
PolyMatrix delete_adjacent_columns(const PolyMatrix& m, const RegionMap& rm);

/// Exact determinant of a square matrix of degree <= 1 polynomials. The
/// determinant is evaluated modulo several primes below 2^26 at deg+1 points,
/// interpolated, and lifted by CRT; the number of primes comes from a
/// Hadamard bound on the unit circle, so the result is exact.
IntPoly poly_det(const PolyMatrix& square);

/// Coefficients of det mod `prime` (prime < 2^26), lowest degree first.
std::vector<std::uint32_t> poly_det_mod(const PolyMatrix& square, std::uint32_t prime);

/// Serial number of a diagram; the zero serial for disconnected projections.
SerialPolynomial alexander(const GridDiagram& g);

/// The n largest primes below 2^26, descending.
const std::vector<std::uint32_t>& modular_primes(std::size_t n);

}  // namespace knotmoney
