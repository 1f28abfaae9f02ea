#include <catch_amalgamated.hpp>
#include <map>

#include "knotmoney/alexander.hpp"
#include "knotmoney/error.hpp"
#include "knotmoney/mint.hpp"
#include "knotmoney/qtable.hpp"
#include "support/test_support.hpp"

using namespace knotmoney;
using namespace knotmoney::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidParameter;
}

std::uint64_t to_u64(const BigInt& v) { return static_cast<std::uint64_t>(v); }

}  // namespace

TEST_CASE("derangements and factorials against brute force") {
  for (int n = 0; n <= 10; ++n) {
    INFO("n=" << n);
    CHECK(to_u64(derangements(n)) == brute_derangements(n));
    CHECK(to_u64(factorial(n)) == brute_factorial(n));
  }
  CHECK(derangements(20) == BigInt("895014631192902121"));
  CHECK(kind_of([] { derangements(-1); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("diagram_count counts the enumerated diagrams") {
  for (int d = 2; d <= 5; ++d) {
    std::uint64_t n = 0;
    for_each_diagram(d, [&](const GridDiagram&) { ++n; });
    CHECK(n == to_u64(diagram_count(d)));
  }
}

TEST_CASE("q-table at Dbar=2") {
  const QTable qt(2);
  CHECK(qt.q(2) == 294);
  CHECK(qt.q(3) == 39);
  CHECK(qt.q(4) == 1);
  CHECK(qt.q_max() == 294);
  CHECK(qt.q_exact(1) == 0);
  CHECK(qt.q_exact(5) == 0);
  CHECK(qt.config_count() == 2 * 294 + 12 * 39 + 216 * 1);
  CHECK(qt.window_lo() == 1);
  CHECK(qt.window_hi() == 3);
  CHECK(qt.w_count() == 294ull * 294ull + 1);
}

TEST_CASE("q-table agrees with a long double evaluation") {
  // The oracle is fine here: none of these ratios sits near an integer.
  for (int dbar = 2; dbar <= 6; ++dbar) {
    const QTable qt(dbar);
    const auto ref = long_double_q(dbar);
    for (int d = 2; d <= 2 * dbar; ++d) {
      INFO("dbar=" << dbar << " d=" << d);
      CHECK(qt.q_exact(d) == BigInt(ref[d]));
    }
    CHECK(qt.q_exact(2 * dbar) == 1);  // y is smallest at the top dimension
  }
}

TEST_CASE("q-table parameter and capacity errors") {
  CHECK(kind_of([] { QTable(1); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { QTable(0); }) == ErrorKind::InvalidParameter);
  CHECK(QTable(4).fits_chain());
  CHECK_FALSE(QTable(5).fits_chain());
  CHECK(kind_of([] { (void)QTable(5).w_count(); }) == ErrorKind::CapacityExceeded);
  CHECK(kind_of([] { (void)QTable(12).q_max(); }) == ErrorKind::CapacityExceeded);
  CHECK(q_of_d(3, 2) == 39);
}

TEST_CASE("window bounds") {
  for (int dbar = 2; dbar <= 20; ++dbar) {
    const QTable qt(dbar);
    CHECK(2 * qt.window_lo() >= dbar);
    CHECK(2 * (qt.window_lo() - 1) < dbar);
    CHECK(2 * qt.window_hi() <= 3 * dbar);
    CHECK(2 * (qt.window_hi() + 1) > 3 * dbar);
    CHECK_FALSE(qt.in_window(qt.dmax()));
  }
}

TEST_CASE("initial state at Dbar=2") {
  const QTable qt(2);
  const DiagramState s = build_initial_state(qt);
  CHECK(s.size() == 2 + 12 + 216);
  CHECK(s.norm2() == Catch::Approx(1).margin(1e-14));
  const double a2 = s.amplitude(unknot2());
  for (const auto& [g, a] : s) CHECK(a / a2 == Catch::Approx(std::sqrt(double(qt.q(g.dim())) / 294.0)).epsilon(1e-14));
  CHECK(kind_of([] { build_initial_state(QTable(4), 3); }) == ErrorKind::StateTooLarge);
}

TEST_CASE("measuring d on the initial state follows q(d) d! D(d)") {
  const QTable qt(2);
  const DiagramState s = build_initial_state(qt);
  std::map<int, double> measured;
  for (const auto& [g, a] : s) measured[g.dim()] += a * a;
  const double total = 2 * 294 + 12 * 39 + 216 * 1;
  const std::map<int, double> expect{{2, 2 * 294 / total}, {3, 12 * 39 / total}, {4, 216 / total}};
  const auto dist = dimension_distribution(qt);
  for (const auto& [d, p] : expect) {
    CHECK(std::abs(measured[d] - p) < 1e-12);
    CHECK(std::abs(dist.at(d) - p) < 1e-15);
  }
}

TEST_CASE("mint context splits the initial state by serial") {
  const MintContext ctx(2);
  double total = 0;
  for (const auto& [serial, group] : ctx.groups()) {
    total += group.weight;
    CHECK(group.state.norm2() == Catch::Approx(1).margin(1e-14));
    for (const auto& [g, a] : group.state) CHECK(alexander(g) == serial);
  }
  CHECK(total == Catch::Approx(1).margin(1e-14));
  REQUIRE(ctx.groups().count(SerialPolynomial::zero()));
  CHECK(ctx.zero_weight() == ctx.groups().at(SerialPolynomial::zero()).weight);
  CHECK(ctx.groups().count(SerialPolynomial::parse("1")));
  CHECK(kind_of([] { MintContext(4, 3); }) == ErrorKind::StateTooLarge);
}

TEST_CASE("exact mint: bills are nonzero, deterministic and supported on their serial") {
  const MintContext ctx(2);
  MintParams p;
  p.seed = 5;
  const MoneyBill a = mint_exact(p, &ctx);
  const MoneyBill b = mint_exact(p, &ctx);
  CHECK_FALSE(a.serial.is_zero());
  CHECK(a.serial == b.serial);
  REQUIRE(a.state);
  CHECK(*a.state == *b.state);
  for (const auto& [g, amp] : *a.state) CHECK(alexander(g) == a.serial);
  CHECK(kind_of([] {
          MintParams bad;
          bad.dbar = 1;
          mint(bad);
        }) == ErrorKind::InvalidParameter);
}

TEST_CASE("exact mint serial frequencies follow the group weights") {
  const MintContext ctx(2);
  const int n = 20000;
  std::map<SerialPolynomial, int> counts;
  for (int i = 0; i < n; ++i) {
    MintParams p;
    p.seed = 1000 + static_cast<std::uint64_t>(i);
    counts[mint_exact(p, &ctx).serial]++;
  }
  CHECK(counts.count(SerialPolynomial::zero()) == 0);
  const double nonzero = 1 - ctx.zero_weight();
  for (const auto& [serial, group] : ctx.groups()) {
    if (serial.is_zero()) continue;
    const double p = group.weight / nonzero;
    const double sigma = std::sqrt(n * p * (1 - p));
    INFO(serial.to_string());
    CHECK(std::abs(counts[serial] - n * p) <= 4 * sigma + 1);
  }
}

TEST_CASE("classical mint dimension histogram") {
  // Zero serials are redrawn, so the kept bills follow q(d) * (number of
  // d x d diagrams with nonzero serial), counted here by enumeration.
  const QTable qt(2);
  std::map<int, double> weight;
  double total = 0;
  for (int d = 2; d <= 4; ++d) {
    for_each_diagram(d, [&](const GridDiagram& g) {
      if (!alexander(g).is_zero()) weight[d] += double(qt.q(d));
    });
    total += weight[d];
  }
  MintParams p;
  p.mode = MintMode::Classical;
  const int n = 100000;
  std::map<int, int> hist;
  ClassicalMintStats stats;
  for (int i = 0; i < n; ++i) {
    p.seed = static_cast<std::uint64_t>(i);
    const MoneyBill bill = mint_classical(p, &stats);
    REQUIRE(bill.certificate);
    REQUIRE_FALSE(bill.serial.is_zero());
    hist[bill.certificate->dim()]++;
    if (i < 2000) CHECK(alexander(*bill.certificate) == bill.serial);
  }
  CHECK(stats.pairs == n + stats.zero_serials);
  CHECK(stats.pair_draws >= stats.pairs);
  for (const auto& [d, w] : weight) {
    const double pr = w / total;
    const double sigma = std::sqrt(n * pr * (1 - pr));
    INFO("d=" << d);
    CHECK(std::abs(hist[d] - n * pr) <= 3 * sigma);
  }
}
