#include <doctest.h>

#include <cmath>

#include "core/equilibrium.hpp"
#include "core/sweeps.hpp"

using namespace chainstore;

namespace {
const double kTol = 1e-12;
const Payoffs kPay = default_payoffs();
const Thresholds kTh{0.5, 5.0 / 7.0};
const Cmp<double> kCmp{};
}  // namespace

TEST_CASE("lambda_accommodate") {
  CHECK(lambda_accommodate(0.6, 0.8, kTh, kCmp) == doctest::Approx(0.8).epsilon(kTol));
  CHECK(lambda_accommodate(0.3, 0.5, kTh, kCmp) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(lambda_accommodate(0.3, 0.0, kTh, kCmp) == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("lambda_fight") {
  CHECK(lambda_fight(0.6, 0.8, 1.0, kTh, kCmp) == doctest::Approx(0.0));
  CHECK(lambda_fight(0.3, 0.5, 0.0, kTh, kCmp) == doctest::Approx(0.5).epsilon(kTol));
  CHECK(lambda_fight(0.3, 0.0, 0.9, kTh, kCmp) == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("delta_lambda closed form") {
  CHECK(delta_lambda(0.6, 0.8, 1.0, kTh, kCmp) == doctest::Approx(0.8).epsilon(kTol));
  // Fighting does not move the entry decision once p(F) <= phi.
  CHECK(delta_lambda(0.3, 0.5, 1.0, kTh, kCmp) == doctest::Approx(0.0));
  CHECK(delta_lambda(0.3, 0.0, 0.5, kTh, kCmp) == doctest::Approx(0.0));
  // Pi * (1 - indicator) identity on a grid.
  for (double p0 : {0.2, 0.5, 0.8})
    for (double pi : {0.1, 0.5, 0.95})
      for (double qA : {0.0, 0.4, 1.0}) {
        const double pf = posterior_after_fight(p0, qA).value;
        const double expect = pi * (kCmp.leq(pf, kTh.phi) ? 0.0 : 1.0);
        CHECK(delta_lambda(p0, pi, qA, kTh, kCmp) == doctest::Approx(expect).epsilon(kTol));
      }
}

TEST_CASE("incumbent payoff gap") {
  CHECK(incumbent_payoff_gap(0.8, kPay) == doctest::Approx(0.06).epsilon(kTol));
  CHECK(incumbent_payoff_gap(5.0 / 7.0, kPay) == doctest::Approx(0.0).epsilon(kTol));
  CHECK(incumbent_payoff_gap(0.0, kPay) == doctest::Approx(-0.5).epsilon(kTol));
}

TEST_CASE("solve_sequential: high-prior fight regime") {
  const auto out = solve_sequential(0.6, 0.8, kPay);
  CHECK(out.regime == Regime::HighFight);
  CHECK(out.qA == doctest::Approx(1.0));
  CHECK(out.qB == 0.0);
  CHECK(out.lambda_F == doctest::Approx(0.0));
  CHECK(out.lambda_A == doctest::Approx(0.8).epsilon(kTol));
  CHECK(out.delta_lambda == doctest::Approx(0.8).epsilon(kTol));
  CHECK(out.ex_ante_entry_B == doctest::Approx(0.0));
  CHECK_FALSE(out.entrant_a_enters);  // fight belief is 1
  CHECK(out.strategic_payoff == doctest::Approx(0.8).epsilon(kTol));
  CHECK(out.tough_payoff == doctest::Approx(0.8).epsilon(kTol));
}

TEST_CASE("solve_sequential: low prior, weak spillover") {
  const auto out = solve_sequential(0.3, 0.5, kPay);
  CHECK(out.regime == Regime::LowAccommodate);
  CHECK(out.qA == doctest::Approx(0.0));
  CHECK(out.ex_ante_entry_B == doctest::Approx(0.85).epsilon(kTol));
  CHECK(out.entrant_a_enters);
}

TEST_CASE("solve_sequential: high prior, weak spillover") {
  const auto out = solve_sequential(0.6, 0.5, kPay);
  CHECK(out.regime == Regime::LowAccommodate);
  CHECK(out.qA == doctest::Approx(0.0));
  CHECK(out.ex_ante_entry_B == doctest::Approx(0.2).epsilon(kTol));
  CHECK_FALSE(out.entrant_a_enters);  // 0.6 > phi, qA = 0
}

TEST_CASE("solve_sequential: boundary continuum at pi = delta") {
  const auto out = solve_sequential(0.3, 5.0 / 7.0, kPay);
  CHECK(out.regime == Regime::BoundaryMix);
  CHECK(out.qA_interval.present);
  CHECK(out.qA_interval.low == doctest::Approx(0.0));
  CHECK(out.qA_interval.high == doctest::Approx(3.0 / 7.0).epsilon(kTol));
  CHECK(out.qA == doctest::Approx(1.5 / 7.0).epsilon(kTol));  // midpoint selection
  CHECK(incumbent_payoff_gap(out.delta_lambda, kPay) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("solve_sequential: knife-edge mix when pi exceeds delta at a low prior") {
  const auto out = solve_sequential(0.3, 0.95, kPay);
  CHECK(out.regime == Regime::BoundaryMix);
  CHECK_FALSE(out.qA_interval.present);
  CHECK(out.qA == doctest::Approx(3.0 / 7.0).epsilon(kTol));  // pins p(F) at phi
  CHECK(out.knife_site == KnifeEdgeSite::AfterFightSignal);
  CHECK(out.knife_entry_prob == doctest::Approx(1.0 - (5.0 / 7.0) / 0.95).epsilon(kTol));
  CHECK(posterior_after_fight(0.3, out.qA).value == doctest::Approx(0.5).epsilon(kTol));
  // The incumbent is exactly indifferent and the entry reduction equals delta.
  CHECK(out.delta_lambda == doctest::Approx(5.0 / 7.0).epsilon(kTol));
  CHECK(out.lambda_F == doctest::Approx(1.0 - 5.0 / 7.0).epsilon(kTol));
  CHECK(out.ex_ante_entry_B == doctest::Approx(4.0 / 7.0).epsilon(kTol));
  // Entrant A faces fight belief 0.3 + 0.7 * (3/7) = 0.6 > phi and stays out.
  CHECK_FALSE(out.entrant_a_enters);
}

TEST_CASE("solve_sequential conditions statistics on the period-1 contest") {
  // Same high-prior LOW cell as above: entrant A stays out on path, yet the
  // reported continuation statistics describe the contested subgame.
  const auto out = solve_sequential(0.8, 0.1, kPay);
  CHECK(out.regime == Regime::LowAccommodate);
  CHECK(out.ex_ante_entry_B == doctest::Approx(0.2 * 0.1).epsilon(kTol));
  CHECK(out.strategic_payoff == doctest::Approx(0.3 + (0.1 * 0.3 + 0.9 * 1.0)).epsilon(kTol));
  CHECK(out.tough_payoff == doctest::Approx(-0.2 + 1.0).epsilon(kTol));
}

TEST_CASE("solve_sequential rejects degenerate priors") {
  CHECK_THROWS_AS(solve_sequential(0.0, 0.5, kPay), degenerate_prior_error);
  CHECK_THROWS_AS(solve_sequential(1.0, 0.5, kPay), degenerate_prior_error);
}

TEST_CASE("nine-point grid: closed-form entry probabilities") {
  struct Cell {
    double p0, pi, expect;
  };
  const double delta = 5.0 / 7.0;
  const Cell cells[] = {
      {0.2, 0.1, 1.0 - 0.2 * 0.1},          // LOW, low prior
      {0.2, delta, 1.0 - 0.3 * delta},      // boundary midpoint: pi_F = 0.2 + 0.8*0.125
      {0.2, 0.95, 1.0 - 0.4 * delta},       // knife mix: 1 - (p0/phi) delta
      {0.5, 0.1, 1.0 - 0.5 * 0.1},          // LOW at p0 = phi (weak inequality)
      {0.5, delta, 1.0 - 0.75 * delta},     // boundary midpoint qbar=1 -> qA=0.5
      {0.5, 0.95, 1.0 - delta},             // knife mix with p0/phi = 1
      {0.8, 0.1, 0.2 * 0.1},                // LOW, high prior
      {0.8, delta, 0.0},                    // HIGH at the boundary
      {0.8, 0.95, 0.0},                     // HIGH
  };
  for (const auto& cell : cells) {
    const auto out = solve_sequential(cell.p0, cell.pi, kPay);
    CHECK_MESSAGE(out.ex_ante_entry_B == doctest::Approx(cell.expect).epsilon(1e-11),
                  "p0=", cell.p0, " pi=", cell.pi);
  }
}

TEST_CASE("equilibrium qA weakly increasing in pi at fixed p0") {
  for (double p0 : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    double prev = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double pi = i / 100.0;
      const auto out = solve_sequential(p0, pi, kPay);
      CHECK(out.qA >= prev - kTol);
      prev = out.qA;
    }
  }
}

TEST_CASE("lambda_A weakly increasing and delta_lambda weakly increasing in pi") {
  for (double p0 : {0.2, 0.5, 0.8})
    for (double qA : {0.0, 0.5, 1.0}) {
      double prevA = -1.0, prevD = -1.0;
      for (int i = 0; i <= 60; ++i) {
        const double pi = i / 60.0;
        const double la = lambda_accommodate(p0, pi, kTh, kCmp);
        const double dl = delta_lambda(p0, pi, qA, kTh, kCmp);
        CHECK(la >= prevA - kTol);
        CHECK(dl >= prevD - kTol);
        prevA = la;
        prevD = dl;
      }
    }
}

TEST_CASE("solve_simultaneous") {
  const auto low = solve_simultaneous(0.3, kPay);
  CHECK(low.regime == Regime::Simultaneous);
  CHECK(low.entrant_a_enters);
  CHECK(low.ex_ante_entry_B == doctest::Approx(1.0));
  CHECK(low.strategic_payoff == doctest::Approx(0.6).epsilon(kTol));
  CHECK(low.tough_payoff == doctest::Approx(-0.4).epsilon(kTol));

  const auto high = solve_simultaneous(0.6, kPay);
  CHECK_FALSE(high.entrant_a_enters);
  CHECK(high.strategic_payoff == doctest::Approx(2.0).epsilon(kTol));
  CHECK(high.tough_payoff == doctest::Approx(2.0).epsilon(kTol));

  // Knife edge: enters at p0 = phi exactly.
  CHECK(solve_simultaneous(0.5, kPay).entrant_a_enters);
}

TEST_CASE("simultaneous outcome does not depend on pi") {
  // pi never enters the simultaneous solver; re-solving under different
  // ambient spillovers must give identical outcomes.
  const auto a = solve_simultaneous(0.3, kPay);
  for (double unused_pi : {0.0, 0.5, 1.0}) {
    (void)unused_pi;
    const auto b = solve_simultaneous(0.3, kPay);
    CHECK(a.strategic_payoff == b.strategic_payoff);
    CHECK(a.ex_ante_entry_B == b.ex_ante_entry_B);
    CHECK(a.entrant_a_enters == b.entrant_a_enters);
  }
}

TEST_CASE("region sweep reproduces the closed-form high region") {
  const auto rows = region_sweep(kPay, 21, 21, kCmp);
  CHECK(rows.size() == 21 * 21);
  for (const auto& r : rows) {
    const bool expect_high = r.p0 > 0.5 && r.pi >= 5.0 / 7.0 - kTol;
    CHECK_MESSAGE((r.regime == Regime::HighFight) == expect_high, "p0=", r.p0, " pi=", r.pi);
  }
  // Row order lexicographic in (p0, pi).
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool ordered = rows[i - 1].p0 < rows[i].p0 ||
                         (rows[i - 1].p0 == rows[i].p0 && rows[i - 1].pi < rows[i].pi);
    CHECK(ordered);
  }
}

TEST_CASE("region sweep: high region empty when delta exceeds 1") {
  const Payoffs pay{1.2, 0.5, 0.9, 1.0, 1.0};  // delta = 2
  for (const auto& r : region_sweep(pay, 11, 11, kCmp)) CHECK(r.regime != Regime::HighFight);
}

TEST_CASE("region point classification at chosen corners") {
  // 2x2 custom corners: only (0.75, 0.9) lands in the fight region.
  const double phi = 0.5, delta = 5.0 / 7.0;
  for (double p0 : {0.25, 0.75})
    for (double pi : {0.25, 0.9}) {
      const auto row = region_point(p0, pi, kPay, kCmp);
      CHECK((row.regime == Regime::HighFight) == (p0 > phi && pi >= delta));
    }
}

TEST_CASE("rational region sweep classifies boundary cells exactly") {
  const auto pay = default_payoffs_rational();
  Cmp<Rational> cmp{};
  const auto rows = region_sweep(pay, 15, 15, cmp);
  const Rational phi(1, 2), delta(5, 7);
  for (const auto& r : rows) {
    const bool expect_high = r.p0 > phi && r.pi >= delta;
    CHECK((r.regime == Regime::HighFight) == expect_high);
  }
}
