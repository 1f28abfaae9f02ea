#include <catch_amalgamated.hpp>
#include <map>
#include <set>

#include "knotmoney/alexander.hpp"
#include "knotmoney/error.hpp"
#include "knotmoney/markov.hpp"
#include "knotmoney/mint.hpp"
#include "support/test_support.hpp"

using namespace knotmoney;
using namespace knotmoney::testing;

namespace {

const ChainContext& ctx2() {
  static const ChainContext ctx(2);
  return ctx;
}

const GridDiagram& d3_unknot() {
  static const GridDiagram g = GridDiagram::validate({0, 1, 2}, {1, 2, 0});
  return g;
}

// Dense B over the D̄=2 space built straight from apply_move. The j=1 part
// is grouped by residue t = w mod q, which occurs (W-1-t)/q + 1 times.
std::vector<std::vector<double>> dense_B(const ConfigSpace& space, const ChainContext& ctx) {
  const std::size_t n = space.size();
  std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
  const int span = ctx.span();
  const double W = double(ctx.w_count());
  for (std::size_t c = 0; c < n; ++c) {
    const Config from = space.config(c);
    auto put = [&](const MoveId& s, double w) { b[space.index(apply_move(from, s, ctx))][c] += w; };
    const std::uint64_t q = ctx.q(from.g.dim());
    for (std::uint64_t t = 0; t < q; ++t) put(MoveId{1, t, 0, 0, 0}, double((ctx.w_count() - 1 - t) / q + 1) / W / 8);
    for (int j = 2; j <= 5; ++j) put(MoveId{j, 0, 0, 0, 0}, 1.0 / 8);
    for (int x = 0; x < span; ++x) {
      put(MoveId{6, 0, x, 0, 0}, 1.0 / (8 * span));
      put(MoveId{7, 0, 0, x, 0}, 1.0 / (8 * span));
    }
    for (int k = 0; k < 4; ++k)
      for (int x = 0; x < span; ++x)
        for (int y = 0; y < span; ++y) put(MoveId{8, 0, x, y, k}, 1.0 / (8.0 * 4 * span * span));
  }
  return b;
}

std::vector<double> random_vector(Rng& rng, const ConfigSpace& space) {
  // Blocky per diagram so the interval representation has several runs.
  std::vector<double> v(space.size(), 0.0);
  double cur = 0;
  for (auto& x : v) {
    if (uniform_below(rng, 16) == 0) cur = uniform_below(rng, 3) == 0 ? 0.0 : uniform01(rng) - 0.5;
    x = cur;
  }
  return v;
}

}  // namespace

TEST_CASE("move specs parse and print") {
  const MoveId s = parse_move("j=8,x=1,y=0,k=2");
  CHECK(s == MoveId{8, 0, 1, 0, 2});
  CHECK(parse_move(to_string(s)) == s);
  CHECK(parse_move("j=1,w=10") == MoveId{1, 10, 0, 0, 0});
  CHECK(parse_move("j=6,x=3").x == 3);
  for (const char* bad : {"", "j=9", "j=0", "x=1", "j=8,k=4", "j=6,x=-1", "j=1,w=abc", "j=2,z=1"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_move(bad), Error);
  }
}

TEST_CASE("label shift j=1") {
  const auto& ctx = ctx2();
  CHECK(apply_move(Config{d3_unknot(), 5}, MoveId{1, 10, 0, 0, 0}, ctx).label == 15);
  CHECK(apply_move(Config{d3_unknot(), 30}, MoveId{1, 10, 0, 0, 0}, ctx).label == 1);
  CHECK(apply_move(Config{unknot2(), 7}, MoveId{1, 294ull * 294, 0, 0, 0}, ctx).label == 7);
  CHECK(apply_move(Config{hopf(), 0}, MoveId{1, 12345, 0, 0, 0}, ctx).label == 0);
}

TEST_CASE("cyclic shifts j=2/3 and j=4/5 undo each other") {
  const auto& ctx = ctx2();
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const Config c{random_diagram(rng, 2, 4), 0};
    CHECK(apply_move(apply_move(c, MoveId{2}, ctx), MoveId{3}, ctx) == c);
    CHECK(apply_move(apply_move(c, MoveId{4}, ctx), MoveId{5}, ctx) == c);
  }
}

TEST_CASE("stabilization is gated by the label") {
  const auto& ctx = ctx2();
  // d=3 -> d=4 needs i < q(4) = 1.
  const MoveId s{8, 0, 0, 0, 0};
  REQUIRE(move_target(d3_unknot(), s, ctx.span()));
  CHECK(apply_move(Config{d3_unknot(), 0}, s, ctx).g.dim() == 4);
  CHECK(apply_move(Config{d3_unknot(), 1}, s, ctx).g == d3_unknot());
  // Nothing ever reaches d = 2 Dbar + 1.
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const GridDiagram g = random_diagram(rng, 4);
    for (int k = 0; k < 4; ++k)
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(apply_move(Config{g, 0}, MoveId{8, 0, x, y, k}, ctx).g.dim() <= 4);
  }
}

TEST_CASE("D̄=2 configuration space") {
  const auto configs = enumerate_configs(ctx2());
  CHECK(configs.size() == 2 * 294 + 12 * 39 + 216);
  CHECK(std::is_sorted(configs.begin(), configs.end()));
  const ConfigSpace space(ctx2());
  CHECK(space.size() == configs.size());
  for (std::size_t i = 0; i < configs.size(); i += 7) {
    CHECK(space.config(i) == configs[i]);
    CHECK(space.index(configs[i]) == i);
  }
}

TEST_CASE("every P_s is a bijection of the D̄=2 space") {
  const auto& ctx = ctx2();
  for (int j = 2; j <= 5; ++j) CHECK(is_permutation_check(MoveId{j}, ctx));
  for (int x = 0; x < ctx.span(); ++x) {
    CHECK(is_permutation_check(MoveId{6, 0, x, 0, 0}, ctx));
    CHECK(is_permutation_check(MoveId{7, 0, 0, x, 0}, ctx));
  }
  for (int k = 0; k < 4; ++k)
    for (int x = 0; x < ctx.span(); ++x)
      for (int y = 0; y < ctx.span(); ++y) CHECK(is_permutation_check(MoveId{8, 0, x, y, k}, ctx));
  Rng rng(3);
  for (int t = 0; t < 100; ++t) CHECK(is_permutation_check(random_move(rng, ctx), ctx));
}

TEST_CASE("j=8 moves are involutions on every D̄=2 configuration") {
  const auto& ctx = ctx2();
  const auto configs = enumerate_configs(ctx);
  std::size_t moved = 0;
  for (int k = 0; k < 4; ++k) {
    for (int x = 0; x < ctx.span(); ++x) {
      for (int y = 0; y < ctx.span(); ++y) {
        const MoveId s{8, 0, x, y, k};
        for (const Config& c : configs) {
          const Config once = apply_move(c, s, ctx);
          moved += !(once == c);
          REQUIRE(apply_move(once, s, ctx) == c);
        }
      }
    }
  }
  CHECK(moved > 0);
}

TEST_CASE("B is doubly stochastic and matches the dense oracle") {
  const auto& ctx = ctx2();
  const ConfigSpace space(ctx);
  const SparseMatrix b = assemble_B(space, ctx);
  for (double r : b.row_sums()) CHECK(std::abs(r - 1) < 1e-12);
  for (double c : b.col_sums()) CHECK(std::abs(c - 1) < 1e-12);
  const auto oracle = dense_B(space, ctx);
  double diff = 0;
  for (std::size_t r = 0; r < b.n; ++r) {
    std::vector<double> row(b.n, 0.0);
    for (auto k = b.row_ptr[r]; k < b.row_ptr[r + 1]; ++k) row[b.col[k]] += b.val[k];
    for (std::size_t c = 0; c < b.n; ++c) diff = std::max(diff, std::abs(row[c] - oracle[r][c]));
  }
  CHECK(diff < 1e-15);
}

TEST_CASE("B asymmetry comes only from the uneven residue counts of j=1") {
  const auto& ctx = ctx2();
  const ConfigSpace space(ctx);
  auto oracle = dense_B(space, ctx);
  // Without j=1 every move pairs with its inverse: 2<->3, 4<->5, and 6, 7, 8
  // are involutions.
  const double W = double(ctx.w_count());
  double worst_j1 = 0;
  for (int d = 2; d <= 4; ++d) {
    const std::uint64_t q = ctx.q(d);
    for (std::uint64_t t = 0; t < q; ++t) {
      const auto count = [&](std::uint64_t s) { return double((ctx.w_count() - 1 - s) / q + 1); };
      if (t != (q - t) % q) worst_j1 = std::max(worst_j1, std::abs(count(t) - count((q - t) % q)) / W / 8);
    }
  }
  CHECK(worst_j1 > 0);
  CHECK(worst_j1 < 1.0 / (8 * W) + 1e-18);
  const SparseMatrix b = assemble_B(space, ctx);
  CHECK(std::abs(b.asymmetry() - worst_j1) < 1e-15);

  for (std::size_t c = 0; c < space.size(); ++c) {
    const Config from = space.config(c);
    const std::uint64_t q = ctx.q(from.g.dim());
    for (std::uint64_t t = 0; t < q; ++t) {
      const std::size_t to = space.index(apply_move(from, MoveId{1, t, 0, 0, 0}, ctx));
      oracle[to][c] -= double((ctx.w_count() - 1 - t) / q + 1) / W / 8;
    }
  }
  double asym = 0;
  for (std::size_t r = 0; r < space.size(); ++r)
    for (std::size_t c = 0; c < r; ++c) asym = std::max(asym, std::abs(oracle[r][c] - oracle[c][r]));
  CHECK(asym < 1e-16);
}

TEST_CASE("grouped B agrees with the assembled matrix") {
  const auto& ctx = ctx2();
  const ConfigSpace space(ctx);
  const SparseMatrix b = assemble_B(space, ctx);
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto v = random_vector(rng, space);
    const auto want = b.multiply(v);
    const auto got = space.to_dense(apply_B(space.from_dense(v), ctx));
    double diff = 0;
    for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(want[i] - got[i]));
    CHECK(diff < 1e-14);
  }
}

TEST_CASE("B contracts every basis configuration") {
  const auto& ctx = ctx2();
  for (const Config& c : enumerate_configs(ctx)) {
    ExpandedState s;
    s.set(c.g, LabelProfile::uniform(c.label, c.label + 1, 1.0));
    REQUIRE(apply_B(s, ctx).norm2() <= 1 + 1e-12);
  }
}

TEST_CASE("minted money states are fixed points of B") {
  const auto& ctx = ctx2();
  const MintContext mc(2);
  for (const auto& [serial, group] : mc.groups()) {
    if (serial.is_zero()) continue;
    const ExpandedState e = expand(group.state, ctx.qtable());
    const ExpandedState be = apply_B(e, ctx);
    double diff = 0;
    for (const auto& [g, p] : be) {
      for (const auto& r : p.runs()) diff = std::max(diff, std::abs(r.amp - e.amplitude(g, r.begin)));
    }
    INFO(serial.to_string());
    CHECK(diff < 1e-13);
    CHECK(be.norm2() == Catch::Approx(1).epsilon(1e-13));
  }
}

TEST_CASE("uniform states over move-closed classes are fixed points of B") {
  const auto& ctx = ctx2();
  for (const GridDiagram& g0 : {hopf(), d3_unknot(), split_unknots()}) {
    const auto cls = enumerate_class(g0, ctx.dmax());
    std::uint64_t labels = 0;
    for (const auto& g : cls) labels += ctx.q(g.dim());
    ExpandedState e;
    const double a = 1 / std::sqrt(double(labels));
    for (const auto& g : cls) e.set(g, LabelProfile::uniform(0, ctx.q(g.dim()), a));
    const ExpandedState be = apply_B(e, ctx);
    double diff = 0;
    for (const auto& [g, p] : be)
      for (const auto& r : p.runs()) diff = std::max(diff, std::abs(r.amp - a));
    INFO(to_text(g0));
    CHECK(be.size() == e.size());
    CHECK(diff < 1e-12);
  }
}

TEST_CASE("moves are injective on sampled D̄=3 configurations") {
  const ChainContext ctx(3);
  Rng rng(12);
  for (int t = 0; t < 3000; ++t) {
    const GridDiagram g = random_diagram(rng, 2, 6);
    const Config c{g, uniform_below(rng, ctx.q(g.dim()))};
    const MoveId s = random_move(rng, ctx);
    const Config once = apply_move(c, s, ctx);
    REQUIRE(ctx.valid(once));
    // Undo with the inverse move.
    MoveId inv = s;
    switch (s.j) {
      case 1: inv.w = ctx.q(g.dim()) - s.w % ctx.q(g.dim()); break;
      case 2: inv.j = 3; break;
      case 3: inv.j = 2; break;
      case 4: inv.j = 5; break;
      case 5: inv.j = 4; break;
      default: break;  // 6, 7, 8 are involutions
    }
    INFO(to_string(s));
    REQUIRE(apply_move(once, inv, ctx) == c);
  }
}

TEST_CASE("one chain step samples the column of B") {
  const auto& ctx = ctx2();
  const Config start{d3_unknot(), 0};
  ExpandedState e;
  e.set(start.g, LabelProfile::uniform(0, 1, 1.0));
  const ExpandedState col = apply_B(e, ctx);
  const int n = 100000;
  std::map<GridDiagram, int> landed_d;
  Rng rng(5);
  for (int i = 0; i < n; ++i) landed_d[chain_step(start, rng, ctx).g]++;
  // Per target diagram: probability is the column mass on that diagram.
  for (const auto& [g, p] : col) {
    const double pr = p.sum();
    const double sigma = std::sqrt(n * pr * (1 - pr));
    INFO(to_text(g));
    CHECK(std::abs(landed_d[g] - n * pr) <= 3 * sigma);
  }
  for (const auto& [g, k] : landed_d) CHECK(col.entries().count(g) == 1);
}

TEST_CASE("labels are uniform along a long chain") {
  const auto& ctx = ctx2();
  Rng rng(6);
  Config c{unknot2(), 0};
  std::vector<int> hist(294, 0);
  int samples = 0;
  for (int i = 0; i < 50000; ++i) {
    for (int k = 0; k < 20; ++k) c = chain_step(c, rng, ctx);
    if (c.g.dim() == 2) {
      hist[c.label]++;
      ++samples;
    }
  }
  REQUIRE(samples > 5000);
  const double expect = double(samples) / 294;
  double chi2 = 0;
  for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
  // 293 degrees of freedom: mean 293, sd about 24.
  CHECK(chi2 < 293 + 5 * 24.2);
}

TEST_CASE("chains stay inside the serial class and the dimension bound") {
  const auto& ctx = ctx2();
  Rng rng(7);
  for (const GridDiagram& g0 : {unknot2(), d3_unknot(), hopf()}) {
    const SerialPolynomial s = alexander(g0);
    Config c{g0, 0};
    for (int i = 0; i < 3000; ++i) {
      c = chain_step(c, rng, ctx);
      REQUIRE(ctx.valid(c));
      REQUIRE(alexander(c.g) == s);
    }
  }
}

TEST_CASE("chain statistics add up") {
  const auto& ctx = ctx2();
  Rng rng(8);
  const ChainRun run = run_chain(Config{unknot2(), 3}, 5000, rng, ctx);
  std::uint64_t proposed = 0, hist = 0;
  for (int j = 0; j < 8; ++j) {
    proposed += run.stats.proposed[j];
    CHECK(run.stats.accepted[j] <= run.stats.proposed[j]);
  }
  for (const auto& [d, n] : run.stats.dimension_histogram) hist += n;
  CHECK(proposed == 5000);
  CHECK(hist == 5000);
  CHECK(run.stats.steps == 5000);
  CHECK(run.stats.distinct_diagrams >= 2);
  CHECK(format_stats(run.stats).rfind("steps 5000\n", 0) == 0);
  Rng again(8);
  CHECK(run_chain(Config{unknot2(), 3}, 5000, again, ctx).final == run.final);
  Rng zero(1);
  CHECK(run_chain(Config{hopf(), 0}, 0, zero, ctx).final == Config{hopf(), 0});
}

TEST_CASE("capacity limits") {
  CHECK_THROWS_AS(enumerate_configs(ChainContext(3)), Error);
  try {
    ChainContext big(5);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapacityExceeded);
  }
}
