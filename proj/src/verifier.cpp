#include "knotmoney/verifier.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "knotmoney/alexander.hpp"
#include "knotmoney/error.hpp"
#include "knotmoney/markov.hpp"
#include "knotmoney/moves.hpp"

namespace knotmoney {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ExpandedState scaled(const ExpandedState& s, double f) {
  ExpandedState out;
  for (const auto& [g, p] : s) out.set(g, p.scaled(f));
  return out;
}

VerificationReport exact_trajectory(const DiagramState& input, const SerialPolynomial& serial, const VerifierParams& params) {
  if (params.rounds < 1) throw Error(ErrorKind::InvalidParameter, "rounds must be at least 1");
  VerificationReport rep;
  rep.mode = params.mode;
  rep.dbar = params.dbar;
  rep.rounds = params.rounds;
  rep.serial = serial.to_string();
  rep.dimension_projector = params.dimension_projector;
  if (input.size() > params.state_cap) throw Error(ErrorKind::StateTooLarge, "input state exceeds the cap");

  const DiagramState phi0 = input.normalized();
  AlexanderCache cache;
  rep.step1 = alexander_probability(phi0, serial, &cache);
  if (rep.step1 == 0) {
    rep.failed_step = 1;
    return rep;
  }
  DiagramState phi = measure_alexander(phi0, serial, &cache).post;
  if (params.dimension_projector) {
    rep.step2 = dimension_probability(phi, params.dbar);
    if (rep.step2 == 0) {
      rep.failed_step = 2;
      return rep;
    }
    phi = project_dimension(phi, params.dbar).post;
  } else {
    rep.step2 = 1;
  }

  const ChainContext ctx(params.dbar);
  MarkovOperator op(ctx);
  ExpandedState psi = expand(phi, ctx.qtable());
  double markov = 1;
  for (int t = 0; t < params.rounds; ++t) {
    ExpandedState next = op.apply(psi);
    if (next.size() > params.state_cap) {
      throw Error(ErrorKind::StateTooLarge, "state reached " + std::to_string(next.size()) + " diagrams in round " + std::to_string(t + 1));
    }
    const double before = psi.norm2();
    const double after = next.norm2();
    const double p = std::min(1.0, after / before);
    rep.round_probabilities.push_back(p);
    markov *= p;
    if (after == 0) {
      rep.round_probabilities.resize(params.rounds, 0.0);
      markov = 0;
      break;
    }
    psi = scaled(next, 1.0 / std::sqrt(after));
  }
  rep.markov_acceptance = markov;
  rep.acceptance = rep.step0 * rep.step1 * rep.step2 * markov;
  if (markov > 0) {
    Contraction c = contract(psi, ctx.qtable());
    rep.residual = c.residual / psi.norm2();
    if (c.state.norm2() > 0) {
      rep.post_state = c.state.normalized();
      rep.damage = std::max(0.0, 1.0 - fidelity(rep.post_state, phi0));
    }
  }
  return rep;
}

void draw_outcomes(VerificationReport& rep, Rng& rng) {
  auto pass = [&](double p) { return uniform01(rng) < p; };
  rep.failed_step = 0;
  if (!pass(rep.step0)) {
    rep.failed_step = -1;
  } else if (!pass(rep.step1)) {
    rep.failed_step = 1;
  } else if (!pass(rep.step2)) {
    rep.failed_step = 2;
  } else {
    for (std::size_t t = 0; t < rep.round_probabilities.size(); ++t) {
      if (!pass(rep.round_probabilities[t])) {
        rep.failed_step = 3 + static_cast<int>(t);
        break;
      }
    }
  }
  rep.accepted = rep.failed_step == 0;
}

}  // namespace

std::string format_report(const VerificationReport& r) {
  std::string out;
  auto line = [&](const std::string& k, const std::string& v) { out += k + " " + v + "\n"; };
  line("mode", r.mode == VerifyMode::Exact ? "exact" : "sampled");
  line("dbar", std::to_string(r.dbar));
  line("rounds", std::to_string(r.rounds));
  line("serial", r.serial);
  line("dimension_projector", r.dimension_projector ? "on" : "off");
  line("step0", fmt(r.step0));
  line("step1", fmt(r.step1));
  line("step2", fmt(r.step2));
  for (std::size_t t = 0; t < r.round_probabilities.size(); ++t) {
    line("round " + std::to_string(t + 1), fmt(r.round_probabilities[t]));
  }
  line("markov_acceptance", fmt(r.markov_acceptance));
  line("acceptance", fmt(r.acceptance));
  if (r.accepted) {
    line("accepted", *r.accepted ? "yes" : "no");
    line("failed_step", std::to_string(r.failed_step));
  }
  line("post_state_size", std::to_string(r.post_state.size()));
  line("damage", fmt(r.damage));
  line("residual", fmt(r.residual));
  return out;
}

VerificationReport verify(const DiagramState& input, const SerialPolynomial& serial, const VerifierParams& params) {
  VerificationReport rep = exact_trajectory(input, serial, params);
  if (params.mode == VerifyMode::Sampled) {
    Rng rng(params.seed);
    draw_outcomes(rep, rng);
    if (!*rep.accepted) {
      rep.post_state = DiagramState{};
      rep.damage = 1;
    }
  }
  return rep;
}

VerificationReport verify(const MoneyBill& bill, const SerialPolynomial& serial, const VerifierParams& params) {
  if (bill.state) return verify(*bill.state, serial, params);
  if (bill.certificate) return verify(DiagramState::basis(*bill.certificate), serial, params);
  throw Error(ErrorKind::MalformedFile, "bill carries no payload");
}

SampledBatch verify_sampled_batch(const DiagramState& input, const SerialPolynomial& serial, const VerifierParams& params,
                                  std::uint64_t trials) {
  VerifierParams exact = params;
  exact.mode = VerifyMode::Exact;
  VerificationReport rep = exact_trajectory(input, serial, exact);
  SampledBatch b;
  b.trials = trials;
  b.exact_probability = rep.acceptance;
  Rng rng(params.seed);
  for (std::uint64_t i = 0; i < trials; ++i) {
    draw_outcomes(rep, rng);
    if (*rep.accepted) ++b.accepted;
  }
  return b;
}

SingleDiagramAttack attack_single_diagram(const GridDiagram& g, const SerialPolynomial& serial, const VerifierParams& params) {
  if (alexander(g) != serial) {
    throw Error(ErrorKind::SerialMismatch, "diagram has serial " + alexander(g).to_string() + ", not " + serial.to_string());
  }
  VerifierParams p = params;
  p.mode = VerifyMode::Exact;
  const VerificationReport rep = verify(DiagramState::basis(g), serial, p);
  SingleDiagramAttack a{g, serial.to_string(), rep.step2, {}};
  double acc = rep.step0 * rep.step1 * rep.step2;
  for (int t = 0; t < params.rounds; ++t) {
    if (t < static_cast<int>(rep.round_probabilities.size())) {
      acc *= rep.round_probabilities[t];
    } else {
      acc = 0;
    }
    a.acceptance_by_round.push_back(acc);
  }
  return a;
}

BoundaryAttack attack_boundary_dimension(const VerifierParams& params, std::size_t max_candidates) {
  BoundaryAttack a;
  const int d = 2 * params.dbar;
  std::set<GridDiagram> seen;
  std::vector<GridDiagram> candidates;
  for_each_diagram(d, [&](const GridDiagram& g) {
    if (candidates.size() < max_candidates) candidates.push_back(g);
  });
  for (const GridDiagram& g : candidates) {
    ++a.candidates_examined;
    if (seen.count(g)) continue;
    const SerialPolynomial serial = alexander(g);
    if (serial.is_zero()) continue;
    std::vector<GridDiagram> cls;
    try {
      cls = enumerate_class(g, d, 200'000);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ExplosionLimit) throw;
      continue;
    }
    seen.insert(cls.begin(), cls.end());
    bool stuck = true;
    for (const auto& h : cls) stuck = stuck && h.dim() == d;
    if (!stuck) continue;

    a.found = true;
    a.representative = g;
    a.serial = serial.to_string();
    a.class_size = cls.size();
    DiagramState s;
    const double amp = 1.0 / std::sqrt(static_cast<double>(cls.size()));
    for (const auto& h : cls) s.add(h, amp);
    a.step2 = dimension_probability(s, params.dbar);
    VerifierParams p = params;
    p.mode = VerifyMode::Exact;
    p.dimension_projector = false;
    a.markov_only = verify(s, serial, p).markov_acceptance;
    p.dimension_projector = true;
    a.acceptance = verify(s, serial, p).acceptance;
    return a;
  }
  return a;
}

CollisionStats remint_collision_stats(int dbar, std::uint64_t trials, std::uint64_t seed) {
  CollisionStats c;
  c.dbar = dbar;
  c.trials = trials;
  Rng seeds(seed);
  std::map<SerialPolynomial, std::uint64_t> counts;
  for (std::uint64_t t = 0; t < trials; ++t) {
    MintParams mp;
    mp.dbar = dbar;
    mp.mode = MintMode::Classical;
    mp.seed = seeds();
    ++counts[mint_classical(mp).serial];
  }
  c.distinct_serials = counts.size();
  for (const auto& [p, n] : counts) c.colliding_pairs += n * (n - 1) / 2;
  const double pairs = static_cast<double>(trials) * static_cast<double>(trials - 1) / 2;
  c.frequency = trials < 2 ? 0.0 : static_cast<double>(c.colliding_pairs) / pairs;
  return c;
}

std::string format_attack(const SingleDiagramAttack& a) {
  std::string out = "attack single\ndiagram " + to_text(a.diagram) + "\nserial " + a.serial + "\nstep2 " + fmt(a.step2) + "\n";
  for (std::size_t r = 0; r < a.acceptance_by_round.size(); ++r) {
    out += "acceptance r=" + std::to_string(r + 1) + " " + fmt(a.acceptance_by_round[r]) + "\n";
  }
  return out;
}

std::string format_attack(const BoundaryAttack& a) {
  std::string out = "attack boundary\nfound " + std::string(a.found ? "yes" : "no") + "\n";
  out += "candidates_examined " + std::to_string(a.candidates_examined) + "\n";
  if (a.found) {
    out += "representative " + to_text(a.representative) + "\nserial " + a.serial + "\n";
    out += "class_size " + std::to_string(a.class_size) + "\n";
    out += "step2 " + fmt(a.step2) + "\nmarkov_only " + fmt(a.markov_only) + "\nacceptance " + fmt(a.acceptance) + "\n";
  }
  return out;
}

std::string format_attack(const CollisionStats& c) {
  return "attack collision\ndbar " + std::to_string(c.dbar) + "\ntrials " + std::to_string(c.trials) + "\ndistinct_serials " +
         std::to_string(c.distinct_serials) + "\ncolliding_pairs " + std::to_string(c.colliding_pairs) + "\nfrequency " +
         fmt(c.frequency) + "\n";
}

}  // namespace knotmoney
