#pragma once

#include <optional>
#include <string>

#include "core/enumerate.hpp"
#include "core/model.hpp"

namespace chainstore {

enum class Protocol { Sequential, Simultaneous };
enum class Regime { HighFight, LowAccommodate, BoundaryMix, Simultaneous };

/// Where an entrant is held exactly at the entry cutoff and mixes.
enum class KnifeEdgeSite { None, AfterFightSignal, AfterFightReport, AfterAccommodateReport };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::HighFight: return "HIGH_FIGHT";
    case Regime::LowAccommodate: return "LOW_ACCOMMODATE";
    case Regime::BoundaryMix: return "BOUNDARY_MIX";
    case Regime::Simultaneous: return "SIMULTANEOUS";
  }
  return "?";
}

inline const char* to_string(Protocol p) {
  return p == Protocol::Sequential ? "sequential" : "simultaneous";
}

/// Thrown by solvers for p0 in {0, 1}: with a degenerate prior the reputation
/// problem is trivial and the mixing constructions are vacuous.
struct degenerate_prior_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Probability that entrant B enters after a period-1 accommodation:
/// pi + (1 - pi) * 1{p0 <= phi}. The delivered signal reveals softness, so the
/// arrival branch always enters.
template <typename S>
S lambda_accommodate(const S& p0, const S& pi, const ThresholdsT<S>& th, const Cmp<S>& cmp) {
  const S one = Num<S>::one();
  const S ind = cmp.leq(p0, th.phi) ? one : Num<S>::zero();
  return pi + (one - pi) * ind;
}

/// Probability that entrant B enters after a period-1 fight:
/// (1 - pi) * 1{p0 <= phi} + pi * 1{p(F; qA) <= phi}.
template <typename S>
S lambda_fight(const S& p0, const S& pi, const S& qA, const ThresholdsT<S>& th,
               const Cmp<S>& cmp) {
  const S one = Num<S>::one();
  const S ind_prior = cmp.leq(p0, th.phi) ? one : Num<S>::zero();
  const S pf = posterior_after_fight(p0, qA).value;
  const S ind_post = cmp.leq(pf, th.phi) ? one : Num<S>::zero();
  return (one - pi) * ind_prior + pi * ind_post;
}

/// Continuation entry reduction from fighting instead of accommodating,
/// lambda_A - lambda_F = pi * (1 - 1{p(F) <= phi}).
template <typename S>
S delta_lambda(const S& p0, const S& pi, const S& qA, const ThresholdsT<S>& th,
               const Cmp<S>& cmp) {
  return lambda_accommodate(p0, pi, th, cmp) - lambda_fight(p0, pi, qA, th, cmp);
}

/// Strategic incumbent's period-1 payoff difference, fight minus accommodate:
/// (M - a) * delta_lambda - (a + c). Positive means fighting is strictly
/// preferred; zero is the indifference locus.
template <typename S>
S incumbent_payoff_gap(const S& dl, const PayoffsT<S>& pay) {
  return (pay.monopoly - pay.accommodate) * dl - (pay.accommodate + pay.fight_cost);
}

/// Supremum of fight probabilities keeping the post-fight posterior above the
/// entry cutoff: qbar = p0 (1 - phi) / ((1 - p0) phi). Equals 1 at p0 = phi.
template <typename S>
S boundary_mix_sup(const S& p0, const ThresholdsT<S>& th) {
  const S one = Num<S>::one();
  return p0 * (one - th.phi) / ((one - p0) * th.phi);
}

template <typename S>
struct QIntervalT {
  bool present = false;
  S low{};
  S high{};  // interval is [low, high)
};

/// Full sequential-protocol equilibrium outcome. Continuation statistics and
/// payoffs are reported conditional on the period-1 market being contested,
/// matching the per-market analysis; `entrant_a_enters` records whether that
/// contest is on the equilibrium path.
template <typename S>
struct EquilibriumOutcomeT {
  Protocol protocol = Protocol::Sequential;
  Regime regime = Regime::LowAccommodate;
  S qA{};                       // selected strategic period-1 fight probability
  QIntervalT<S> qA_interval{};  // continuum of supportable values, when present
  S qB{};                       // always 0 (last-period dominance)
  S lambda_A{};
  S lambda_F{};
  S delta_lambda{};
  S ex_ante_entry_B{};
  S strategic_payoff{};
  S tough_payoff{};
  bool entrant_a_enters = false;
  KnifeEdgeSite knife_site = KnifeEdgeSite::None;
  S knife_entry_prob = Num<S>::one();  // entrant entry probability at the knife edge
  ThresholdsT<S> thresholds{};
  std::optional<NoiseT<S>> noise{};

  SequentialAssessment<S> assessment{};            // sequential protocols
  std::optional<SimultaneousAssessment<S>> simultaneous{};

  S overall_fight_prob() const {  // period-1 fight probability given entry
    return fight_belief(assessment.prior, qA);
  }
};

using EquilibriumOutcome = EquilibriumOutcomeT<double>;

namespace detail {

template <typename S>
void fill_sequential_stats(EquilibriumOutcomeT<S>& out, const Cmp<S>& cmp) {
  const auto& a = out.assessment;
  out.lambda_A = oracle_entry_prob_after_action(a, Action::Accommodate);
  out.lambda_F = oracle_entry_prob_after_action(a, Action::Fight);
  out.delta_lambda = out.lambda_A - out.lambda_F;
  out.entrant_a_enters = cmp.leq(fight_belief(a.prior, a.fight_prob_play), out.thresholds.phi);

  SequentialAssessment<S> cond = a;
  cond.entrant_a = EntryRule::ForcedIn;
  const auto dist = enumerate_sequential(cond);
  out.ex_ante_entry_B = dist.prob_b_enters();
  out.strategic_payoff = dist.expected_incumbent_payoff(IncumbentType::Strategic);
  out.tough_payoff = dist.expected_incumbent_payoff(IncumbentType::Tough);
}

}  // namespace detail

/// Sequential-protocol PBE at (p0, pi).
///
/// Regimes:
///   - p0 > phi, pi >= delta: the strategic type surely fights (HIGH_FIGHT).
///   - pi < delta: no deterrence motive strong enough, accommodate (LOW).
///   - p0 <= phi, pi = delta: a continuum qA in [0, qbar) is supportable;
///     statistics are evaluated at `boundary_selection * qbar`.
///   - p0 <= phi, pi > delta: the unique PBE mixes at the belief knife edge:
///     qA = qbar pins the post-fight posterior at phi and the entrant enters
///     after a fight signal with probability 1 - delta/pi, making the
///     incumbent exactly indifferent. (Also reported as BOUNDARY_MIX.)
template <typename S>
EquilibriumOutcomeT<S> solve_sequential(const S& p0, const S& pi, const PayoffsT<S>& pay,
                                        const Cmp<S>& cmp = Cmp<S>{},
                                        double boundary_selection = 0.5) {
  const S zero = Num<S>::zero();
  const S one = Num<S>::one();
  pay.validate();
  require_probability(p0, "p0");
  require_probability(pi, "pi");
  if (p0 == zero || p0 == one)
    throw degenerate_prior_error("solve_sequential: degenerate prior p0 in {0,1}");

  EquilibriumOutcomeT<S> out;
  out.protocol = Protocol::Sequential;
  out.thresholds = thresholds(pay);
  out.qB = zero;

  SequentialAssessment<S>& a = out.assessment;
  a.prior = p0;
  a.spillover = pi;
  a.payoffs = pay;
  a.period2_fight_prob = zero;
  a.entrant_a = EntryRule::Cutoff;

  const S& phi = out.thresholds.phi;
  const S& delta = out.thresholds.delta;

  S knife_gamma = one;
  if (cmp.gt(p0, phi)) {
    if (cmp.geq(pi, delta)) {
      out.regime = Regime::HighFight;
      out.qA = one;
    } else {
      out.regime = Regime::LowAccommodate;
      out.qA = zero;
    }
  } else {
    if (cmp.lt(pi, delta)) {
      out.regime = Regime::LowAccommodate;
      out.qA = zero;
    } else if (cmp.gt(pi, delta)) {
      // Interior mix: fight just often enough that an observed fight leaves
      // the entrant exactly at the cutoff, where she can randomize.
      out.regime = Regime::BoundaryMix;
      const S qbar = boundary_mix_sup(p0, out.thresholds);
      out.qA = qbar;
      out.knife_site = KnifeEdgeSite::AfterFightSignal;
      knife_gamma = one - delta / pi;
      out.knife_entry_prob = knife_gamma;
    } else {
      // pi = delta exactly: any qA keeping p(F) above phi is supportable.
      out.regime = Regime::BoundaryMix;
      const S qbar = boundary_mix_sup(p0, out.thresholds);
      out.qA_interval = {true, zero, qbar};
      const S sel = Num<S>::from_ratio(static_cast<long>(boundary_selection * 1000000.0), 1000000);
      out.qA = qbar * sel;
    }
  }

  a.fight_prob_play = out.qA;
  a.fight_prob_belief = out.qA;

  const S ind_prior = cmp.leq(p0, phi) ? one : zero;
  S enter_fight;
  if (out.knife_site == KnifeEdgeSite::AfterFightSignal) {
    enter_fight = knife_gamma;
  } else {
    const S pf = posterior_after_fight(p0, out.qA).value;
    enter_fight = cmp.leq(pf, phi) ? one : zero;
  }
  a.entrant_b = EntrantBPolicy<S>{ind_prior, enter_fight, one};

  detail::fill_sequential_stats(out, cmp);
  return out;
}

/// Simultaneous-protocol PBE: with no pre-entry signal there is no
/// reputational channel, the strategic type accommodates every active market
/// and both entrants enter exactly when p0 <= phi.
template <typename S>
EquilibriumOutcomeT<S> solve_simultaneous(const S& p0, const PayoffsT<S>& pay,
                                          const Cmp<S>& cmp = Cmp<S>{}) {
  const S zero = Num<S>::zero();
  const S one = Num<S>::one();
  pay.validate();
  require_probability(p0, "p0");
  if (p0 == zero || p0 == one)
    throw degenerate_prior_error("solve_simultaneous: degenerate prior p0 in {0,1}");

  EquilibriumOutcomeT<S> out;
  out.protocol = Protocol::Simultaneous;
  out.regime = Regime::Simultaneous;
  out.thresholds = thresholds(pay);
  out.qA = zero;
  out.qB = zero;

  const bool enter = cmp.leq(p0, out.thresholds.phi);
  const S e = enter ? one : zero;

  SimultaneousAssessment<S> sim{p0, pay, zero, zero, e, e};
  out.simultaneous = sim;
  // Mirror the assessment so downstream consumers see prior/payoffs uniformly.
  out.assessment.prior = p0;
  out.assessment.payoffs = pay;
  out.assessment.fight_prob_play = zero;
  out.assessment.fight_prob_belief = zero;
  out.assessment.entrant_b = EntrantBPolicy<S>{e, e, e};

  const auto dist = enumerate_simultaneous(sim);
  out.ex_ante_entry_B = dist.prob_b_enters();
  out.lambda_A = e;
  out.lambda_F = e;
  out.delta_lambda = zero;
  out.entrant_a_enters = enter;
  out.strategic_payoff = dist.expected_incumbent_payoff(IncumbentType::Strategic);
  out.tough_payoff = dist.expected_incumbent_payoff(IncumbentType::Tough);
  return out;
}

}  // namespace chainstore
