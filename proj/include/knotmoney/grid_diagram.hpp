#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace knotmoney {

enum class Marker : std::uint8_t { None, X, O };

inline Marker opposite(Marker m) {
  return m == Marker::X ? Marker::O : (m == Marker::O ? Marker::X : Marker::None);
}

enum class HorizontalDir : std::uint8_t { East, West };
enum class VerticalDir : std::uint8_t { North, South };

/// Intersection of the vertical strand in column `col` (over) with the
/// horizontal strand in row `row` (under).
struct Crossing {
  int col = 0;
  int row = 0;
  HorizontalDir under_dir = HorizontalDir::East;
  VerticalDir over_dir = VerticalDir::North;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct ComponentLabels {
  int count = 0;
  // Component of the two markers in column c (the vertical edge joins them).
  std::vector<int> of_column;
};

/// Planar grid diagram: a d x d grid holding one X and one O in every row and
/// column, never in the same cell. Column i carries its X in row x_row(i) and
/// its O in row o_row(i); row 0 is the bottom row. Immutable once built.
class GridDiagram {
 public:
  /// Checks the candidate and throws Error{NotAPermutation | NotDisjoint |
  /// DimensionTooSmall} on failure.
  static GridDiagram validate(std::span<const int> x_rows, std::span<const int> o_rows);
  static GridDiagram validate(const std::vector<int>& x_rows, const std::vector<int>& o_rows) {
    return validate(std::span<const int>(x_rows), std::span<const int>(o_rows));
  }

  /// Skips validation. Callers must already hold two disjoint permutations.
  static GridDiagram from_trusted(std::vector<std::uint16_t> x_rows, std::vector<std::uint16_t> o_rows);

  int dim() const noexcept { return static_cast<int>(x_.size()); }
  int x_row(int col) const noexcept { return x_[col]; }
  int o_row(int col) const noexcept { return o_[col]; }
  std::span<const std::uint16_t> x_rows() const noexcept { return x_; }
  std::span<const std::uint16_t> o_rows() const noexcept { return o_; }

  Marker at(int col, int row) const noexcept;

  // Columns holding the X / O of each row (inverse permutations).
  std::vector<int> x_cols() const;
  std::vector<int> o_cols() const;

  friend bool operator==(const GridDiagram&, const GridDiagram&) = default;
  friend auto operator<=>(const GridDiagram& a, const GridDiagram& b) {
    if (auto c = a.x_.size() <=> b.x_.size(); c != 0) return c;
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.o_ <=> b.o_;
  }

  std::size_t hash() const noexcept;

 private:
  GridDiagram(std::vector<std::uint16_t> x, std::vector<std::uint16_t> o)
      : x_(std::move(x)), o_(std::move(o)) {}

  std::vector<std::uint16_t> x_;
  std::vector<std::uint16_t> o_;
};

struct GridDiagramHash {
  std::size_t operator()(const GridDiagram& g) const noexcept { return g.hash(); }
};

/// All (col,row) interior intersections, sorted by (col,row).
std::vector<Crossing> crossings(const GridDiagram& g);

/// Link components, found by following vertical X->O and horizontal O->X
/// edges. Labels are numbered by the smallest column of each cycle.
ComponentLabels components(const GridDiagram& g);

/// True iff the union of all segments is a single connected planar set.
bool is_connected_projection(const GridDiagram& g);

// Canonical byte encoding: version byte, d as u16, then x rows and o rows as
// u16 arrays, all little-endian.
inline constexpr std::uint8_t kEncodingVersion = 1;
std::vector<std::uint8_t> encode(const GridDiagram& g);
GridDiagram decode(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

/// "x0,x1,.../o0,o1,..." human-readable form.
std::string to_text(const GridDiagram& g);
GridDiagram parse_text(std::string_view text);

/// Accepts either the text form or the hex encoding.
GridDiagram parse_diagram(std::string_view spec);

/// ASCII picture, top row first. Vertical strands pass over horizontal ones
/// and crossings are drawn as '+'.
std::string render_ascii(const GridDiagram& g);

// Common small diagrams.
GridDiagram unknot2();

}  // namespace knotmoney

template <>
struct std::hash<knotmoney::GridDiagram> {
  std::size_t operator()(const knotmoney::GridDiagram& g) const noexcept { return g.hash(); }
};
