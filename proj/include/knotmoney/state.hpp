#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "knotmoney/grid_diagram.hpp"
#include "knotmoney/polynomial.hpp"
#include "knotmoney/qtable.hpp"

namespace knotmoney {

/// Real amplitudes over grid diagrams. Iteration order is the diagram order,
/// which keeps every reduction bit-reproducible.
class DiagramState {
 public:
  using Map = std::map<GridDiagram, double>;

  static DiagramState basis(const GridDiagram& g);

  void add(const GridDiagram& g, double amp);
  double amplitude(const GridDiagram& g) const;
  double norm2() const;
  /// Throws Error{ZeroProbability} for the zero vector.
  DiagramState normalized() const;

  std::size_t size() const noexcept { return amps_.size(); }
  bool empty() const noexcept { return amps_.empty(); }
  const Map& entries() const noexcept { return amps_; }
  Map::const_iterator begin() const { return amps_.begin(); }
  Map::const_iterator end() const { return amps_.end(); }

  friend bool operator==(const DiagramState&, const DiagramState&) = default;

 private:
  Map amps_;
};

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const DiagramState& a, const DiagramState& b);

/// Half-open label interval [begin, end) with a constant amplitude.
struct LabelRun {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  double amp = 0;

  std::uint64_t length() const noexcept { return end - begin; }
  friend bool operator==(const LabelRun&, const LabelRun&) = default;
};

/// Piecewise-constant amplitudes over the labels of one diagram, stored as
/// sorted disjoint runs. Unlisted labels have amplitude zero; adjacent runs
/// with equal amplitude are always merged.
class LabelProfile {
 public:
  LabelProfile() = default;
  static LabelProfile uniform(std::uint64_t begin, std::uint64_t end, double amp);
  /// Compresses a dense vector indexed by label.
  static LabelProfile from_dense(std::span<const double> values);

  std::vector<double> dense(std::uint64_t size) const;
  const std::vector<LabelRun>& runs() const noexcept { return runs_; }
  bool empty() const noexcept { return runs_.empty(); }
  std::uint64_t extent() const noexcept { return runs_.empty() ? 0 : runs_.back().end; }

  double at(std::uint64_t label) const;
  double sum() const;
  double norm2() const;

  LabelProfile restricted(std::uint64_t lo, std::uint64_t hi) const;
  LabelProfile scaled(double s) const;
  /// *this += s * other
  void accumulate(const LabelProfile& other, double s);

  /// Average over the label shifts i -> (i + w) mod q for w uniform in
  /// {0..w_count-1}: shift t receives floor((w_count-1-t)/q)+1 of the
  /// w_count values.
  LabelProfile circular_average(std::uint64_t q, std::uint64_t w_count) const;

  friend bool operator==(const LabelProfile&, const LabelProfile&) = default;

 private:
  void push(std::uint64_t begin, std::uint64_t end, double amp);
  std::vector<LabelRun> runs_;
};

/// Amplitudes over configurations (G, i).
class ExpandedState {
 public:
  using Map = std::map<GridDiagram, LabelProfile>;

  void add(const GridDiagram& g, const LabelProfile& p, double scale = 1.0);
  void set(const GridDiagram& g, LabelProfile p);
  double amplitude(const GridDiagram& g, std::uint64_t label) const;
  double norm2() const;
  std::size_t run_count() const;

  std::size_t size() const noexcept { return amps_.size(); }
  bool empty() const noexcept { return amps_.empty(); }
  const Map& entries() const noexcept { return amps_; }
  Map::const_iterator begin() const { return amps_.begin(); }
  Map::const_iterator end() const { return amps_.end(); }

  friend bool operator==(const ExpandedState&, const ExpandedState&) = default;

 private:
  Map amps_;
};

/// U: amplitude a on G becomes a / sqrt(q(d)) on each label 0..q(d)-1.
/// Throws Error{InvalidParameter} for diagrams outside [2, 2 Dbar].
ExpandedState expand(const DiagramState& s, const QTable& qt);

struct Contraction {
  DiagramState state;  // not renormalised
  double residual = 0;  // weight orthogonal to the image of U
};

/// Projects each diagram's labels onto the uniform vector and inverts U.
Contraction contract(const ExpandedState& s, const QTable& qt);

/// Memoised alexander(). Not thread-safe.
class AlexanderCache {
 public:
  const SerialPolynomial& operator()(const GridDiagram& g);
  std::size_t size() const noexcept { return cache_.size(); }

 private:
  std::unordered_map<GridDiagram, SerialPolynomial, GridDiagramHash> cache_;
};

struct Measurement {
  double probability = 0;
  DiagramState post;  // renormalised; empty when probability is 0
};

/// Born-rule probability of reading serial p, without collapsing.
double alexander_probability(const DiagramState& s, const SerialPolynomial& p, AlexanderCache* cache = nullptr);

/// Throws Error{ZeroProbability} when no support carries serial p.
Measurement measure_alexander(const DiagramState& s, const SerialPolynomial& p, AlexanderCache* cache = nullptr);

double dimension_probability(const DiagramState& s, int dbar);

/// Projects onto ceil(Dbar/2) <= d <= floor(3 Dbar/2).
/// Throws Error{ZeroProbability} when nothing survives.
Measurement project_dimension(const DiagramState& s, int dbar);

// Dump format: one line per run, "hex(encode(G)) begin end amplitude".
// Diagram states use the single interval "0 1".
std::string dump(const DiagramState& s);
std::string dump(const ExpandedState& s);
/// Throws Error{MalformedFile}.
DiagramState parse_diagram_dump(std::string_view text);
ExpandedState parse_expanded_dump(std::string_view text);

}  // namespace knotmoney
