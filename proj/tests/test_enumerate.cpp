#include <doctest.h>

#include "core/enumerate.hpp"
#include "core/noisy.hpp"

using namespace chainstore;

namespace {

const double kTol = 1e-12;

SequentialAssessment<double> base_assessment(double p0, double pi, double qA,
                                             std::optional<Noise> noise = std::nullopt) {
  SequentialAssessment<double> a;
  a.prior = p0;
  a.spillover = pi;
  a.payoffs = default_payoffs();
  a.noise = noise;
  a.fight_prob_play = qA;
  a.fight_prob_belief = qA;
  a.entrant_b = detail::cutoff_policy(p0, qA, noise, thresholds(a.payoffs), Cmp<double>{});
  return a;
}

}  // namespace

TEST_CASE("sequential tree probabilities sum to one") {
  for (double p0 : {0.2, 0.5, 0.8}) {
    for (double pi : {0.0, 0.4, 1.0}) {
      for (double qA : {0.0, 0.3, 1.0}) {
        auto a = base_assessment(p0, pi, qA);
        CHECK(enumerate_sequential(a).total_probability() ==
              doctest::Approx(1.0).epsilon(kTol));
        a.entrant_a = EntryRule::ForcedIn;
        CHECK(enumerate_sequential(a).total_probability() ==
              doctest::Approx(1.0).epsilon(kTol));
        auto noisy = base_assessment(p0, pi, qA, Noise{0.1, 0.2});
        noisy.entrant_a = EntryRule::ForcedIn;
        CHECK(enumerate_sequential(noisy).total_probability() ==
              doctest::Approx(1.0).epsilon(kTol));
      }
    }
  }
}

TEST_CASE("sequential tree probabilities sum to one exactly in rational mode") {
  SequentialAssessment<Rational> a;
  a.prior = Rational(3, 10);
  a.spillover = Rational(1, 2);
  a.payoffs = default_payoffs_rational();
  a.fight_prob_play = Rational(1, 3);
  a.fight_prob_belief = Rational(1, 3);
  a.entrant_a = EntryRule::ForcedIn;
  a.entrant_b = EntrantBPolicy<Rational>{Rational(1), Rational(0), Rational(1)};
  CHECK(enumerate_sequential(a).total_probability() == Rational(1));

  a.noise = NoiseT<Rational>{Rational(1, 10), Rational(1, 5)};
  CHECK(enumerate_sequential(a).total_probability() == Rational(1));
}

TEST_CASE("entry probability for entrant B matches hand sums") {
  // p0=0.3, pi=0.5, qA=0: only the tough type fights; a delivered fight
  // signal is fully revealing and deters, everything else invites entry.
  auto a = base_assessment(0.3, 0.5, 0.0);
  a.entrant_a = EntryRule::ForcedIn;
  CHECK(enumerate_sequential(a).prob_b_enters() == doctest::Approx(0.85).epsilon(kTol));

  // qA=1 at a high prior: beliefs never move below the cutoff.
  auto b = base_assessment(0.6, 0.8, 1.0);
  b.entrant_a = EntryRule::ForcedIn;
  CHECK(enumerate_sequential(b).prob_b_enters() == doctest::Approx(0.0).epsilon(kTol));
}

TEST_CASE("conditional lambda oracle equals the closed forms") {
  const Payoffs pay = default_payoffs();
  const Thresholds th = thresholds(pay);
  const Cmp<double> cmp{};
  for (double p0 : {0.2, 0.5, 0.8}) {
    for (double pi : {0.1, 5.0 / 7.0, 0.95}) {
      for (double qA : {0.0, 0.5, 1.0}) {
        auto a = base_assessment(p0, pi, qA);
        CHECK(oracle_entry_prob_after_action(a, Action::Accommodate) ==
              doctest::Approx(lambda_accommodate(p0, pi, th, cmp)).epsilon(kTol));
        CHECK(oracle_entry_prob_after_action(a, Action::Fight) ==
              doctest::Approx(lambda_fight(p0, pi, qA, th, cmp)).epsilon(kTol));
      }
    }
  }
}

TEST_CASE("forced period-1 action isolates the continuation") {
  auto a = base_assessment(0.3, 0.5, 0.5);
  a.entrant_a = EntryRule::ForcedIn;
  const auto dist = enumerate_sequential(a, Action::Accommodate);
  for (const auto& t : dist.terminals)
    if (t.a_entered) CHECK(t.period1 == Action::Accommodate);
  CHECK(dist.total_probability() == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("expected payoffs from the tree: accommodation-only world") {
  // qA = 0, pi = 0: no signal channel; strategic type accommodates both
  // markets when both entrants come (p0=0.3 <= phi so both enter).
  auto a = base_assessment(0.3, 0.0, 0.0);
  const auto dist = enumerate_sequential(a);
  CHECK(dist.expected_incumbent_payoff(IncumbentType::Strategic) ==
        doctest::Approx(0.6).epsilon(kTol));
  CHECK(dist.expected_incumbent_payoff(IncumbentType::Tough) ==
        doctest::Approx(-0.4).epsilon(kTol));
}

TEST_CASE("simultaneous tree matches direct aggregation") {
  SimultaneousAssessment<double> sim{0.3, default_payoffs(), 0.0, 0.0, 1.0, 1.0};
  const auto dist = enumerate_simultaneous(sim);
  CHECK(dist.total_probability() == doctest::Approx(1.0).epsilon(kTol));
  CHECK(dist.expected_incumbent_payoff(IncumbentType::Strategic) ==
        doctest::Approx(0.6).epsilon(kTol));
  CHECK(dist.expected_incumbent_payoff(IncumbentType::Tough) ==
        doctest::Approx(-0.4).epsilon(kTol));
  CHECK(dist.prob_b_enters() == doctest::Approx(1.0));
}

TEST_CASE("zero-probability terminals are pruned") {
  auto a = base_assessment(0.3, 0.0, 0.0);
  for (const auto& t : enumerate_sequential(a).terminals) CHECK(t.probability > 0.0);
}
