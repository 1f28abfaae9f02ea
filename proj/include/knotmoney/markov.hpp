#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "knotmoney/grid_diagram.hpp"
#include "knotmoney/qtable.hpp"
#include "knotmoney/random.hpp"
#include "knotmoney/state.hpp"

namespace knotmoney {

/// One element s = (j, w, x, y, k) of the move set.
///   j=1      i <- (i + w) mod q(d)
///   j=2,3    cyclic column shift right / left
///   j=4,5    cyclic row shift up / down
///   j=6      swap columns x, x+1 if legal
///   j=7      swap rows y, y+1 if legal
///   j=8      stabilize at (x,y) or destabilize the L over empty (x,y), in
///            orientation k; taken only when i < q(d(G')).
/// Illegal proposals leave the configuration unchanged.
struct MoveId {
  int j = 1;
  std::uint64_t w = 0;
  int x = 0;
  int y = 0;
  int k = 0;

  friend bool operator==(const MoveId&, const MoveId&) = default;
};

std::string to_string(const MoveId& s);
/// "j=8,x=1,y=0,k=2" style; missing fields default to 0.
/// Throws Error{InvalidParameter}.
MoveId parse_move(std::string_view spec);

struct Config {
  GridDiagram g;
  std::uint64_t label = 0;

  friend bool operator==(const Config&, const Config&) = default;
  friend auto operator<=>(const Config& a, const Config& b) {
    if (auto c = a.g <=> b.g; c != 0) return c;
    return a.label <=> b.label;
  }
};

/// Per-Dbar constants of the chain. Throws Error{CapacityExceeded} when
/// q_max^2 + 1 does not fit in 64 bits (Dbar >= 5).
class ChainContext {
 public:
  explicit ChainContext(int dbar);

  int dbar() const noexcept { return qt_.dbar(); }
  int dmax() const noexcept { return qt_.dmax(); }
  const QTable& qtable() const noexcept { return qt_; }
  std::uint64_t q(int d) const noexcept { return d >= 0 && d < static_cast<int>(q_.size()) ? q_[d] : 0; }
  std::uint64_t q_max() const noexcept { return q_max_; }
  std::uint64_t w_count() const noexcept { return w_count_; }
  /// x, y range over {0..span-1} with span = 2 Dbar.
  int span() const noexcept { return 2 * qt_.dbar(); }

  bool valid(const Config& c) const noexcept {
    return c.g.dim() >= 2 && c.g.dim() <= dmax() && c.label < q(c.g.dim());
  }

 private:
  QTable qt_;
  std::vector<std::uint64_t> q_;
  std::uint64_t q_max_ = 0;
  std::uint64_t w_count_ = 0;
};

/// Diagram produced by moves j=2..8 ignoring the label gate; nullopt when
/// the move is a no-op on this diagram. j=1 always yields nullopt.
std::optional<GridDiagram> move_target(const GridDiagram& g, const MoveId& s, int span);

Config apply_move(const Config& c, const MoveId& s, const ChainContext& ctx);

MoveId random_move(Rng& rng, const ChainContext& ctx);
Config chain_step(const Config& c, Rng& rng, const ChainContext& ctx);

/// All configurations with 2 <= d <= 2 Dbar, in Config order.
/// Throws Error{SpaceTooLarge} when more than `cap` exist.
std::vector<Config> enumerate_configs(const ChainContext& ctx, std::size_t cap = 200'000);

/// Exhaustive bijectivity check of P_s. Throws Error{SpaceTooLarge}.
bool is_permutation_check(const MoveId& s, const ChainContext& ctx, std::size_t cap = 200'000);

struct ChainStats {
  std::uint64_t steps = 0;
  std::array<std::uint64_t, 8> proposed{};
  std::array<std::uint64_t, 8> accepted{};  // steps that changed the configuration
  std::map<int, std::uint64_t> dimension_histogram;  // dimension after each step
  std::size_t distinct_diagrams = 0;  // including the start
};

struct ChainRun {
  Config final;
  ChainStats stats;
};

ChainRun run_chain(const Config& start, std::uint64_t steps, Rng& rng, const ChainContext& ctx);
std::string format_stats(const ChainStats& s);

/// B = (1/|S|) sum_s P_s applied exactly to interval-compressed states. The
/// uniform measure on S factorises, so B = (1/8) sum_j B_j where B_j averages
/// only the parameters move j reads. Transitions are cached per diagram.
class MarkovOperator {
 public:
  explicit MarkovOperator(const ChainContext& ctx) : ctx_(ctx) {}

  ExpandedState apply(const ExpandedState& s);
  const ChainContext& context() const noexcept { return ctx_; }

  struct Transition {
    GridDiagram target;
    std::uint64_t gate = UINT64_MAX;  // labels below the gate move, the rest stay
    double weight = 0;
  };

  /// Grouped j=2..8 transitions out of g, merged by (target, gate) and
  /// sorted. Self-loops are included.
  const std::vector<Transition>& transitions(const GridDiagram& g);

 private:
  const ChainContext& ctx_;
  std::unordered_map<GridDiagram, std::vector<Transition>, GridDiagramHash> cache_;
};

ExpandedState apply_B(const ExpandedState& s, const ChainContext& ctx);

/// Compressed sparse rows.
struct SparseMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<std::int32_t> col;
  std::vector<double> val;

  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
  /// Largest |A_ij - A_ji|.
  double asymmetry() const;
};

/// Index of every configuration of the exhaustive space.
class ConfigSpace {
 public:
  explicit ConfigSpace(const ChainContext& ctx, std::size_t cap = 200'000);

  std::size_t size() const noexcept { return total_; }
  std::size_t index(const Config& c) const;
  Config config(std::size_t i) const;
  const std::vector<GridDiagram>& diagrams() const noexcept { return diagrams_; }

  std::vector<double> to_dense(const ExpandedState& s) const;
  ExpandedState from_dense(const std::vector<double>& v) const;

 private:
  const ChainContext& ctx_;
  std::vector<GridDiagram> diagrams_;
  std::vector<std::size_t> offset_;
  std::unordered_map<GridDiagram, std::size_t, GridDiagramHash> slot_;
  std::size_t total_ = 0;
};

/// Explicit B over the whole configuration space, assembled from apply_move
/// (independent of MarkovOperator).
SparseMatrix assemble_B(const ConfigSpace& space, const ChainContext& ctx);

}  // namespace knotmoney
