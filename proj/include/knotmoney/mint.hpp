#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "knotmoney/grid_diagram.hpp"
#include "knotmoney/polynomial.hpp"
#include "knotmoney/qtable.hpp"
#include "knotmoney/random.hpp"
#include "knotmoney/state.hpp"

namespace knotmoney {

enum class MintMode { Exact, Classical };

struct MintParams {
  int dbar = 2;
  MintMode mode = MintMode::Exact;
  std::uint64_t seed = 0;
  int exact_cap = 3;  // largest Dbar for which the exact state is built
};

/// A minted bill. Exact bills carry the full amplitude state; classical bills
/// carry one sampled diagram as a certificate (a classical stand-in that does
/// not represent the superposition).
struct MoneyBill {
  SerialPolynomial serial;
  MintParams params;
  std::optional<DiagramState> state;
  std::optional<GridDiagram> certificate;
};

/// Calls fn on every valid d x d diagram in lexicographic (x, o) order.
void for_each_diagram(int d, const std::function<void(const GridDiagram&)>& fn);

/// Uniform disjoint permutation pair by rejection; `attempts` counts draws.
GridDiagram sample_disjoint_pair(int d, Rng& rng, std::uint64_t* attempts = nullptr);

/// Amplitude proportional to sqrt(q(d(G))) on every diagram with
/// 2 <= d <= 2 Dbar, normalised. Throws Error{StateTooLarge} past `cap`.
DiagramState build_initial_state(const QTable& qt, int cap = 3);

/// The initial state split by serial number. Built once per Dbar and shared
/// by every exact mint.
class MintContext {
 public:
  struct Group {
    double weight = 0;  // squared norm inside the initial state
    DiagramState state;  // renormalised money state for this serial
  };

  /// Throws Error{StateTooLarge} when dbar exceeds cap.
  explicit MintContext(int dbar, int cap = 3);

  const QTable& qtable() const noexcept { return qt_; }
  const DiagramState& initial_state() const noexcept { return initial_; }
  const std::map<SerialPolynomial, Group>& groups() const noexcept { return groups_; }
  /// Total weight on the zero serial (bills the mint must reject).
  double zero_weight() const;

 private:
  QTable qt_;
  DiagramState initial_;
  std::map<SerialPolynomial, Group> groups_;
};

/// Measures the serial on the initial state; zero outcomes are redrawn.
MoneyBill mint_exact(const MintParams& params, const MintContext* ctx = nullptr);

struct ClassicalMintStats {
  std::uint64_t pair_draws = 0;  // disjointness rejection loop
  std::uint64_t pairs = 0;       // disjoint pairs produced
  std::uint64_t zero_serials = 0;
};

/// Samples d with probability proportional to q(d) d! D(d), then a uniform
/// diagram of that size; zero serials are redrawn.
MoneyBill mint_classical(const MintParams& params, ClassicalMintStats* stats = nullptr);

/// Dispatches on params.mode.
MoneyBill mint(const MintParams& params);

/// Probability of each dimension when d is measured on the initial state,
/// q(d) d! D(d) / sum, computed directly from the q-table.
std::map<int, double> dimension_distribution(const QTable& qt);

}  // namespace knotmoney
