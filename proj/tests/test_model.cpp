#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/model.hpp"

using namespace chainstore;

namespace {
const double kTol = 1e-12;
}

TEST_CASE("entry cutoff phi = v/(v+d)") {
  Payoffs pay = default_payoffs();
  CHECK(entry_cutoff(pay) == doctest::Approx(0.5).epsilon(kTol));

  pay.entry_gain = 1e-9;
  CHECK(entry_cutoff(pay) == doctest::Approx(1e-9).epsilon(1e-6));

  pay.entry_gain = 3.0;
  CHECK(entry_cutoff(pay) == doctest::Approx(0.75).epsilon(kTol));

  // Exact in rational mode.
  CHECK(entry_cutoff(default_payoffs_rational()) == Rational(1, 2));
}

TEST_CASE("deterrence threshold delta = (a+c)/(M-a)") {
  CHECK(deterrence_threshold(default_payoffs()) ==
        doctest::Approx(5.0 / 7.0).epsilon(kTol));
  CHECK(deterrence_threshold(default_payoffs_rational()) == Rational(5, 7));

  Payoffs pay{1.5, 0.5, 0.5, 1.0, 1.0};
  CHECK(deterrence_threshold(pay) == doctest::Approx(1.0).epsilon(kTol));
  Payoffs pay2{2.0, 0.5, 0.1, 1.0, 1.0};
  CHECK(deterrence_threshold(pay2) == doctest::Approx(0.4).epsilon(kTol));
}

TEST_CASE("deterrence threshold may exceed 1") {
  const Payoffs pay{1.2, 0.5, 0.9, 1.0, 1.0};
  CHECK(deterrence_threshold(pay) == doctest::Approx(2.0).epsilon(kTol));
}

TEST_CASE("payoff validation") {
  CHECK_THROWS_AS((Payoffs{0.3, 0.3, 0.2, 1.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Payoffs{1.0, -0.1, 0.2, 1.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Payoffs{1.0, 0.3, 0.0, 1.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Payoffs{1.0, 0.3, 0.2, 0.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Payoffs{1.0, 0.3, 0.2, 1.0, 0.0}.validate()), std::invalid_argument);
}

TEST_CASE("entrant value and cutoff rule agree") {
  const Payoffs pay = default_payoffs();
  CHECK(entrant_value(0.0, pay) == doctest::Approx(1.0));
  CHECK(entrant_value(1.0, pay) == doctest::Approx(-1.0));
  const double phi = entry_cutoff(pay);
  CHECK(entrant_value(phi, pay) == doctest::Approx(0.0).epsilon(kTol));

  for (int i = 0; i <= 200; ++i) {
    const double alpha = i / 200.0;
    const bool nonneg = entrant_value(alpha, pay) >= -kTol;
    CHECK(nonneg == (alpha <= phi + kTol));
  }
}

TEST_CASE("fight belief") {
  CHECK(fight_belief(0.6, 0.0) == doctest::Approx(0.6));
  CHECK(fight_belief(0.2, 1.0) == doctest::Approx(1.0));
  CHECK(fight_belief(0.3, 0.5) == doctest::Approx(0.65).epsilon(kTol));
}

TEST_CASE("posterior after fight with conventions") {
  CHECK(posterior_after_fight(0.3, 0.0).value == doctest::Approx(1.0));
  CHECK(posterior_after_fight(0.3, 1.0).value == doctest::Approx(0.3));
  CHECK(posterior_after_fight(0.3, 0.5).value == doctest::Approx(0.3 / 0.65).epsilon(kTol));
  CHECK(posterior_after_fight(Rational(3, 10), Rational(1, 2)).value == Rational(6, 13));
  CHECK(posterior_after_fight(0.3, 0.5).conditioning == SignalKind::FightSignal);
}

TEST_CASE("posterior after accommodate is exactly zero") {
  CHECK(posterior_after_accommodate<double>().value == 0.0);
  CHECK(posterior_after_accommodate<Rational>().value == Rational(0));
  CHECK(posterior_after_accommodate<double>().conditioning == SignalKind::AccommodateSignal);
}

TEST_CASE("posterior martingale identity") {
  // pi_F * p(F) + pi_A * 0 = p0 for qA in (0,1]; at qA=0 the fight branch has
  // mass p0 and posterior 1.
  for (double p0 : {0.1, 0.3, 0.5, 0.77}) {
    for (double qA : {0.001, 0.25, 0.5, 0.9, 1.0}) {
      const double pi_f = p0 + (1 - p0) * qA;
      const double pf = posterior_after_fight(p0, qA).value;
      CHECK(pi_f * pf == doctest::Approx(p0).epsilon(kTol));
    }
    CHECK(p0 * posterior_after_fight(p0, 0.0).value == doctest::Approx(p0));
  }
  // Exact in rational arithmetic.
  const Rational p0(3, 10);
  for (const Rational& qA : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
    const Rational pi_f = p0 + (Rational(1) - p0) * qA;
    CHECK(pi_f * posterior_after_fight(p0, qA).value == p0);
  }
}

TEST_CASE("posterior after fight decreasing in qA and above the prior") {
  for (double p0 : {0.2, 0.5, 0.8}) {
    double prev = posterior_after_fight(p0, 0.0).value;
    for (int i = 1; i <= 50; ++i) {
      const double qA = i / 50.0;
      const double cur = posterior_after_fight(p0, qA).value;
      CHECK(cur <= prev + kTol);
      CHECK(cur >= p0 - kTol);
      prev = cur;
    }
  }
}

TEST_CASE("deterrence threshold monotone in its parameters") {
  const std::vector<double> grid{0.1, 0.2, 0.3, 0.4};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Payoffs lo = default_payoffs();
    Payoffs hi = default_payoffs();
    lo.accommodate = grid[i - 1];
    hi.accommodate = grid[i];
    CHECK(deterrence_threshold(hi) > deterrence_threshold(lo));
    lo = hi = default_payoffs();
    lo.fight_cost = grid[i - 1];
    hi.fight_cost = grid[i];
    CHECK(deterrence_threshold(hi) > deterrence_threshold(lo));
    lo = hi = default_payoffs();
    lo.monopoly = 1.0 + grid[i - 1];
    hi.monopoly = 1.0 + grid[i];
    CHECK(deterrence_threshold(hi) < deterrence_threshold(lo));
  }
}
