#include "knotmoney/mint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "knotmoney/alexander.hpp"
#include "knotmoney/error.hpp"
#include "knotmoney/parallel.hpp"

namespace knotmoney {

void for_each_diagram(int d, const std::function<void(const GridDiagram&)>& fn) {
  if (d < 2) return;
  std::vector<std::uint16_t> x(d), o(d);
  std::iota(x.begin(), x.end(), 0);
  do {
    std::iota(o.begin(), o.end(), 0);
    do {
      bool disjoint = true;
      for (int c = 0; c < d && disjoint; ++c) disjoint = x[c] != o[c];
      if (disjoint) fn(GridDiagram::from_trusted(x, o));
    } while (std::next_permutation(o.begin(), o.end()));
  } while (std::next_permutation(x.begin(), x.end()));
}

GridDiagram sample_disjoint_pair(int d, Rng& rng, std::uint64_t* attempts) {
  if (d < 2) throw Error(ErrorKind::DimensionTooSmall, "grid dimension must be at least 2");
  std::vector<std::uint16_t> x(d), o(d);
  for (;;) {
    if (attempts) ++*attempts;
    std::iota(x.begin(), x.end(), 0);
    std::iota(o.begin(), o.end(), 0);
    shuffle(x, rng);
    shuffle(o, rng);
    bool disjoint = true;
    for (int c = 0; c < d && disjoint; ++c) disjoint = x[c] != o[c];
    if (disjoint) return GridDiagram::from_trusted(x, o);
  }
}

namespace {

void check_cap(int dbar, int cap) {
  if (dbar > cap) {
    throw Error(ErrorKind::StateTooLarge,
                "exact state for Dbar=" + std::to_string(dbar) + " exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace

DiagramState build_initial_state(const QTable& qt, int cap) {
  check_cap(qt.dbar(), cap);
  DiagramState s;
  double total = 0;
  for (int d = 2; d <= qt.dmax(); ++d) {
    total += static_cast<double>(qt.q(d)) * diagram_count(d).convert_to<double>();
  }
  for (int d = 2; d <= qt.dmax(); ++d) {
    const double amp = std::sqrt(static_cast<double>(qt.q(d)) / total);
    for_each_diagram(d, [&](const GridDiagram& g) { s.add(g, amp); });
  }
  return s;
}

MintContext::MintContext(int dbar, int cap) : qt_(dbar) {
  initial_ = build_initial_state(qt_, cap);
  std::vector<const std::pair<const GridDiagram, double>*> entries;
  entries.reserve(initial_.size());
  for (const auto& e : initial_) entries.push_back(&e);
  std::vector<SerialPolynomial> serials(entries.size());
  parallel_for(entries.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) serials[i] = alexander(entries[i]->first);
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Group& grp = groups_[serials[i]];
    grp.state.add(entries[i]->first, entries[i]->second);
  }
  for (auto& [p, grp] : groups_) {
    grp.weight = grp.state.norm2();
    grp.state = grp.state.normalized();
  }
}

double MintContext::zero_weight() const {
  auto it = groups_.find(SerialPolynomial::zero());
  return it == groups_.end() ? 0.0 : it->second.weight;
}

MoneyBill mint_exact(const MintParams& params, const MintContext* ctx) {
  if (params.mode != MintMode::Exact) throw Error(ErrorKind::InvalidParameter, "mint_exact needs exact mode");
  check_cap(params.dbar, params.exact_cap);
  std::unique_ptr<MintContext> owned;
  if (!ctx || ctx->qtable().dbar() != params.dbar) {
    owned = std::make_unique<MintContext>(params.dbar, params.exact_cap);
    ctx = owned.get();
  }
  double total = 0;
  for (const auto& [p, grp] : ctx->groups()) total += grp.weight;
  if (ctx->zero_weight() >= total) throw Error(ErrorKind::ZeroProbability, "every serial is zero");

  Rng rng(params.seed);
  for (;;) {
    const double u = uniform01(rng) * total;
    double acc = 0;
    const std::pair<const SerialPolynomial, MintContext::Group>* pick = nullptr;
    for (const auto& entry : ctx->groups()) {
      acc += entry.second.weight;
      pick = &entry;
      if (u < acc) break;
    }
    if (pick->first.is_zero()) continue;
    MoneyBill bill;
    bill.serial = pick->first;
    bill.params = params;
    bill.state = pick->second.state;
    return bill;
  }
}

std::map<int, double> dimension_distribution(const QTable& qt) {
  std::map<int, BigInt> mass;
  BigInt total = 0;
  for (int d = 2; d <= qt.dmax(); ++d) {
    mass[d] = qt.q_exact(d) * diagram_count(d);
    total += mass[d];
  }
  std::map<int, double> out;
  for (const auto& [d, m] : mass) out[d] = (Decimal(m) / Decimal(total)).convert_to<double>();
  return out;
}

MoneyBill mint_classical(const MintParams& params, ClassicalMintStats* stats) {
  if (params.mode != MintMode::Classical) throw Error(ErrorKind::InvalidParameter, "mint_classical needs classical mode");
  const QTable qt(params.dbar);
  const auto dist = dimension_distribution(qt);
  Rng rng(params.seed);
  ClassicalMintStats local;
  ClassicalMintStats& st = stats ? *stats : local;
  for (;;) {
    const double u = uniform01(rng);
    double acc = 0;
    int d = qt.dmax();
    for (const auto& [dim, p] : dist) {
      acc += p;
      if (u < acc) {
        d = dim;
        break;
      }
    }
    GridDiagram g = sample_disjoint_pair(d, rng, &st.pair_draws);
    ++st.pairs;
    SerialPolynomial serial = alexander(g);
    if (serial.is_zero()) {
      ++st.zero_serials;
      continue;
    }
    MoneyBill bill;
    bill.serial = std::move(serial);
    bill.params = params;
    bill.certificate = std::move(g);
    return bill;
  }
}

MoneyBill mint(const MintParams& params) {
  if (params.dbar < 2) throw Error(ErrorKind::InvalidParameter, "Dbar must be at least 2");
  return params.mode == MintMode::Exact ? mint_exact(params) : mint_classical(params);
}

}  // namespace knotmoney
