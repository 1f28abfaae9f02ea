#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knotmoney/grid_diagram.hpp"
#include "knotmoney/mint.hpp"
#include "knotmoney/polynomial.hpp"
#include "knotmoney/state.hpp"

namespace knotmoney {

enum class VerifyMode { Exact, Sampled };

struct VerifierParams {
  int dbar = 2;
  int rounds = 10;
  VerifyMode mode = VerifyMode::Exact;
  std::uint64_t seed = 0;
  /// Step 2 can be switched off to study the Markov stage on its own.
  bool dimension_projector = true;
  /// Largest state (in diagrams) the exact pipeline will touch.
  std::size_t state_cap = 2'000'000;
};

struct VerificationReport {
  VerifyMode mode = VerifyMode::Exact;
  int dbar = 0;
  int rounds = 0;
  std::string serial;
  bool dimension_projector = true;
  double step0 = 1;  // encodings are validated when a state is built or decoded
  double step1 = 0;
  double step2 = 0;
  /// Conditional success probability of each Markov round.
  std::vector<double> round_probabilities;
  /// Probability of passing all rounds, |B^r phi'|^2 for normalised phi'.
  double markov_acceptance = 0;
  /// step0 * step1 * step2 * markov_acceptance.
  double acceptance = 0;
  /// Sampled mode only: whether this run accepted, and the first failing
  /// step (1, 2, or 3 + round index) when it did not.
  std::optional<bool> accepted;
  int failed_step = 0;
  /// Output money state after acceptance (U-image part, renormalised).
  DiagramState post_state;
  double damage = 1;  // 1 - fidelity(post_state, input)
  double residual = 0;  // weight outside the image of U after the rounds
};

/// Fixed-order structured text.
std::string format_report(const VerificationReport& r);

/// Runs steps 0-3 on a normalised input. A serial absent from the support
/// gives step1 = 0 and acceptance 0. Throws Error{StateTooLarge} when the
/// evolving state outgrows params.state_cap.
VerificationReport verify(const DiagramState& input, const SerialPolynomial& serial, const VerifierParams& params);

/// Exact bills verify their state; classical bills verify the basis state
/// of their certificate diagram.
VerificationReport verify(const MoneyBill& bill, const SerialPolynomial& serial, const VerifierParams& params);

/// Acceptance count over `trials` independent sampled verifications. The
/// exact trajectory is computed once and each trial draws its outcomes.
struct SampledBatch {
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  double exact_probability = 0;
};
SampledBatch verify_sampled_batch(const DiagramState& input, const SerialPolynomial& serial, const VerifierParams& params,
                                  std::uint64_t trials);

/// Counterfeit built from one measured diagram.
struct SingleDiagramAttack {
  GridDiagram diagram;
  std::string serial;
  double step2 = 0;
  /// Entry r-1 is the probability of passing rounds 1..r (steps 0-2 included).
  std::vector<double> acceptance_by_round;
};

/// Throws Error{SerialMismatch} when alexander(g) != serial.
SingleDiagramAttack attack_single_diagram(const GridDiagram& g, const SerialPolynomial& serial, const VerifierParams& params);

/// Uniform superposition over a move-closed class stuck at dimension 2 Dbar.
struct BoundaryAttack {
  bool found = false;
  GridDiagram representative = unknot2();
  std::string serial;
  std::size_t class_size = 0;
  std::size_t candidates_examined = 0;
  double step2 = 0;  // dimension projector on the class state
  double markov_only = 0;  // step 3 alone, projector switched off
  double acceptance = 0;  // full pipeline
};

/// Scans d = 2 Dbar diagrams (at most `max_candidates`) for a non-split
/// class that never leaves dimension 2 Dbar. found=false when none is seen.
BoundaryAttack attack_boundary_dimension(const VerifierParams& params, std::size_t max_candidates = 5000);

struct CollisionStats {
  int dbar = 0;
  std::uint64_t trials = 0;
  std::size_t distinct_serials = 0;
  std::uint64_t colliding_pairs = 0;
  /// colliding pairs / (trials choose 2)
  double frequency = 0;
};

/// Mints `trials` bills classically (the serial distribution matches exact
/// minting) and counts pairs with equal serials.
CollisionStats remint_collision_stats(int dbar, std::uint64_t trials, std::uint64_t seed);

std::string format_attack(const SingleDiagramAttack& a);
std::string format_attack(const BoundaryAttack& a);
std::string format_attack(const CollisionStats& c);

}  // namespace knotmoney
