#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "core/model.hpp"

namespace chainstore {

enum class IncumbentType { Tough, Strategic };
enum class Action { Fight, Accommodate, None };
enum class Report { Fight, Accommodate, None };
enum class EntryRule { Cutoff, ForcedIn, ForcedOut };

/// Signal error rates conditional on arrival. `false_negative` is the chance a
/// fight is reported as accommodation (eps_F); `false_positive` the chance an
/// accommodation is reported as a fight (eps_A).
template <typename S>
struct NoiseT {
  S false_negative;  // eps_F = Pr[report A-hat | action F]
  S false_positive;  // eps_A = Pr[report F-hat | action A]

  void validate() const {
    require_probability(false_negative, "epsF");
    require_probability(false_positive, "epsA");
    if (false_negative >= Num<S>::one()) throw std::invalid_argument("epsF must be < 1");
    if (false_positive >= Num<S>::one()) throw std::invalid_argument("epsA must be < 1");
  }
  bool noiseless() const {
    return false_negative == Num<S>::zero() && false_positive == Num<S>::zero();
  }
};

using Noise = NoiseT<double>;

/// Period-2 entrant behaviour, one entry probability per information set.
/// Solvers fill these from the cutoff rule (0/1 almost everywhere, interior
/// only at knife-edge posteriors where the entrant is exactly indifferent).
template <typename S>
struct EntrantBPolicy {
  S enter_no_signal;
  S enter_fight_report;        // after (noiseless) fight signal / noisy F-hat
  S enter_accommodate_report;  // after (noiseless) accommodate signal / noisy A-hat
};

/// A full strategy/belief assessment of the sequential game, sufficient both
/// to reproduce the equilibrium path and to evaluate unilateral deviations
/// (play probabilities move, the belief-derived entrant policy stays put).
template <typename S>
struct SequentialAssessment {
  S prior;      // p0
  S spillover;  // pi
  PayoffsT<S> payoffs;
  std::optional<NoiseT<S>> noise;

  S fight_prob_play;             // strategic period-1 fight probability actually played
  S fight_prob_belief;           // q_A entrants use in Bayes updates
  S period2_fight_prob{};        // strategic period-2 fight probability (0 in equilibrium)
  EntryRule entrant_a = EntryRule::Cutoff;
  EntrantBPolicy<S> entrant_b{};
};

/// One terminal node of the exact game tree.
template <typename S>
struct TerminalOutcome {
  S probability;
  IncumbentType type;
  bool a_entered = false;
  Action period1 = Action::None;
  bool delivered = false;
  Report report = Report::None;
  bool b_entered = false;
  Action period2 = Action::None;
  S incumbent_payoff;
  S entrant_a_payoff;
  S entrant_b_payoff;
};

template <typename S>
struct OutcomeDistribution {
  std::vector<TerminalOutcome<S>> terminals;

  S total_probability() const {
    S t = Num<S>::zero();
    for (const auto& o : terminals) t += o.probability;
    return t;
  }
  S prob_a_enters() const {
    S t = Num<S>::zero();
    for (const auto& o : terminals)
      if (o.a_entered) t += o.probability;
    return t;
  }
  S prob_b_enters() const {
    S t = Num<S>::zero();
    for (const auto& o : terminals)
      if (o.b_entered) t += o.probability;
    return t;
  }
  S prob_type(IncumbentType ty) const {
    S t = Num<S>::zero();
    for (const auto& o : terminals)
      if (o.type == ty) t += o.probability;
    return t;
  }
  /// Expected incumbent payoff conditional on the type. Throws if the type has
  /// zero prior mass.
  S expected_incumbent_payoff(IncumbentType ty) const {
    const S mass = prob_type(ty);
    if (mass == Num<S>::zero()) throw std::domain_error("conditioning on zero-probability type");
    S t = Num<S>::zero();
    for (const auto& o : terminals)
      if (o.type == ty) t += o.probability * o.incumbent_payoff;
    return t / mass;
  }
  S expected_entrant_b_payoff() const {
    S t = Num<S>::zero();
    for (const auto& o : terminals) t += o.probability * o.entrant_b_payoff;
    return t;
  }
};

namespace detail {

template <typename S>
S report_prob(const std::optional<NoiseT<S>>& noise, Action action, Report report) {
  const S one = Num<S>::one();
  if (!noise) {
    const bool match = (action == Action::Fight && report == Report::Fight) ||
                       (action == Action::Accommodate && report == Report::Accommodate);
    return match ? one : Num<S>::zero();
  }
  if (action == Action::Fight)
    return report == Report::Fight ? one - noise->false_negative : noise->false_negative;
  return report == Report::Accommodate ? one - noise->false_positive : noise->false_positive;
}

template <typename S>
S entrant_b_entry_prob(const EntrantBPolicy<S>& pol, bool delivered, Report report) {
  if (!delivered) return pol.enter_no_signal;
  return report == Report::Fight ? pol.enter_fight_report : pol.enter_accommodate_report;
}

}  // namespace detail

/// Exact expansion of the sequential game tree:
/// type x period-1 entry x action x arrival x report x period-2 entry x action.
/// Probabilities sum to one exactly in rational mode. `forced_action`, when
/// set, replaces period-1 play on the entered branch (used for conditional
/// continuation probabilities and deviation payoffs).
template <typename S>
OutcomeDistribution<S> enumerate_sequential(const SequentialAssessment<S>& a,
                                            std::optional<Action> forced_action = std::nullopt,
                                            std::optional<S> enter_a_prob_override = std::nullopt) {
  const S zero = Num<S>::zero();
  const S one = Num<S>::one();
  a.payoffs.validate();
  require_probability(a.prior, "p0");
  require_probability(a.spillover, "pi");
  require_probability(a.fight_prob_play, "qA");
  require_probability(a.fight_prob_belief, "qA belief");
  if (a.noise) a.noise->validate();

  S enter_a;
  if (enter_a_prob_override) {
    enter_a = *enter_a_prob_override;
  } else {
    switch (a.entrant_a) {
      case EntryRule::ForcedIn: enter_a = one; break;
      case EntryRule::ForcedOut: enter_a = zero; break;
      case EntryRule::Cutoff: {
        const ThresholdsT<S> th = thresholds(a.payoffs);
        const S alpha = fight_belief(a.prior, a.fight_prob_belief);
        enter_a = alpha <= th.phi ? one : zero;
        break;
      }
    }
  }

  OutcomeDistribution<S> dist;
  const auto push = [&dist](TerminalOutcome<S> o) {
    if (o.probability == Num<S>::zero()) return;
    dist.terminals.push_back(std::move(o));
  };

  const auto market_a_payoff_incumbent = [&](bool entered, Action act) {
    if (!entered) return a.payoffs.monopoly;
    return act == Action::Fight ? -a.payoffs.fight_cost : a.payoffs.accommodate;
  };
  const auto market_payoff_entrant = [&](bool entered, Action act) {
    if (!entered) return zero;
    return act == Action::Fight ? -a.payoffs.entry_loss : a.payoffs.entry_gain;
  };

  for (IncumbentType ty : {IncumbentType::Tough, IncumbentType::Strategic}) {
    const S type_p = ty == IncumbentType::Tough ? a.prior : one - a.prior;
    if (type_p == zero) continue;

    for (bool a_in : {true, false}) {
      const S pa = a_in ? enter_a : one - enter_a;
      if (pa == zero) continue;

      if (!a_in) {
        // No period-1 contest: no signal can arrive; entrant B sees nothing.
        const S pb = a.entrant_b.enter_no_signal;
        for (bool b_in : {true, false}) {
          const S pbb = b_in ? pb : one - pb;
          if (pbb == zero) continue;
          const S q2 = ty == IncumbentType::Tough ? one : a.period2_fight_prob;
          for (Action act2 : {Action::Fight, Action::Accommodate}) {
            const S p2 = act2 == Action::Fight ? q2 : one - q2;
            if (b_in && p2 == zero) continue;
            TerminalOutcome<S> o{};
            o.probability = type_p * pa * pbb * (b_in ? p2 : one);
            o.type = ty;
            o.a_entered = false;
            o.b_entered = b_in;
            o.period2 = b_in ? act2 : Action::None;
            o.incumbent_payoff = market_a_payoff_incumbent(false, Action::None) +
                                 market_a_payoff_incumbent(b_in, o.period2);
            o.entrant_a_payoff = zero;
            o.entrant_b_payoff = market_payoff_entrant(b_in, o.period2);
            push(std::move(o));
            if (!b_in) break;  // single uncontested branch
          }
        }
        continue;
      }

      const S q1 = forced_action ? (*forced_action == Action::Fight ? one : zero)
                                 : (ty == IncumbentType::Tough ? one : a.fight_prob_play);
      for (Action act1 : {Action::Fight, Action::Accommodate}) {
        const S p1 = act1 == Action::Fight ? q1 : one - q1;
        if (p1 == zero) continue;

        for (bool delivered : {true, false}) {
          const S pd = delivered ? a.spillover : one - a.spillover;
          if (pd == zero) continue;

          const std::vector<Report> reports =
              delivered ? std::vector<Report>{Report::Fight, Report::Accommodate}
                        : std::vector<Report>{Report::None};
          for (Report rep : reports) {
            const S pr = delivered ? detail::report_prob(a.noise, act1, rep) : one;
            if (pr == zero) continue;

            const S pb = detail::entrant_b_entry_prob(a.entrant_b, delivered, rep);
            for (bool b_in : {true, false}) {
              const S pbb = b_in ? pb : one - pb;
              if (pbb == zero) continue;

              const S q2 = ty == IncumbentType::Tough ? one : a.period2_fight_prob;
              for (Action act2 : {Action::Fight, Action::Accommodate}) {
                const S p2 = act2 == Action::Fight ? q2 : one - q2;
                if (b_in && p2 == zero) continue;
                TerminalOutcome<S> o{};
                o.probability = type_p * pa * p1 * pd * pr * pbb * (b_in ? p2 : one);
                o.type = ty;
                o.a_entered = true;
                o.period1 = act1;
                o.delivered = delivered;
                o.report = rep;
                o.b_entered = b_in;
                o.period2 = b_in ? act2 : Action::None;
                o.incumbent_payoff = market_a_payoff_incumbent(true, act1) +
                                     market_a_payoff_incumbent(b_in, o.period2);
                o.entrant_a_payoff = market_payoff_entrant(true, act1);
                o.entrant_b_payoff = market_payoff_entrant(b_in, o.period2);
                push(std::move(o));
                if (!b_in) break;
              }
            }
          }
        }
      }
    }
  }
  return dist;
}

/// Probability that entrant B enters given the period-1 action, i.e. the
/// lambda_X objects, computed purely from the signal process and the entrant
/// policy (the true type is irrelevant once the action is fixed).
template <typename S>
S oracle_entry_prob_after_action(const SequentialAssessment<S>& a, Action action) {
  const S one = Num<S>::one();
  S total = Num<S>::zero();
  // No arrival branch.
  total += (one - a.spillover) * a.entrant_b.enter_no_signal;
  // Arrival: expand over reports.
  for (Report rep : {Report::Fight, Report::Accommodate}) {
    const S pr = detail::report_prob(a.noise, action, rep);
    if (pr == Num<S>::zero()) continue;
    total += a.spillover * pr * detail::entrant_b_entry_prob(a.entrant_b, true, rep);
  }
  return total;
}

/// Simultaneous-protocol assessment: both entrants move at once, the strategic
/// incumbent picks a fight probability per active market.
template <typename S>
struct SimultaneousAssessment {
  S prior;
  PayoffsT<S> payoffs;
  S fight_prob_a{};  // strategic play on market A (0 in equilibrium)
  S fight_prob_b{};
  S enter_prob_a;    // entrant strategies (identical in equilibrium)
  S enter_prob_b;
};

template <typename S>
OutcomeDistribution<S> enumerate_simultaneous(const SimultaneousAssessment<S>& a) {
  const S zero = Num<S>::zero();
  const S one = Num<S>::one();
  a.payoffs.validate();
  require_probability(a.prior, "p0");

  OutcomeDistribution<S> dist;
  for (IncumbentType ty : {IncumbentType::Tough, IncumbentType::Strategic}) {
    const S type_p = ty == IncumbentType::Tough ? a.prior : one - a.prior;
    if (type_p == zero) continue;
    for (bool in_a : {true, false}) {
      const S pa = in_a ? a.enter_prob_a : one - a.enter_prob_a;
      if (pa == zero) continue;
      for (bool in_b : {true, false}) {
        const S pb = in_b ? a.enter_prob_b : one - a.enter_prob_b;
        if (pb == zero) continue;
        const S qa = ty == IncumbentType::Tough ? one : a.fight_prob_a;
        const S qb = ty == IncumbentType::Tough ? one : a.fight_prob_b;
        for (Action act_a : {Action::Fight, Action::Accommodate}) {
          const S p1 = act_a == Action::Fight ? qa : one - qa;
          if (in_a && p1 == zero) continue;
          for (Action act_b : {Action::Fight, Action::Accommodate}) {
            const S p2 = act_b == Action::Fight ? qb : one - qb;
            if (in_b && p2 == zero) continue;
            TerminalOutcome<S> o{};
            o.probability = type_p * pa * pb * (in_a ? p1 : one) * (in_b ? p2 : one);
            o.type = ty;
            o.a_entered = in_a;
            o.b_entered = in_b;
            o.period1 = in_a ? act_a : Action::None;
            o.period2 = in_b ? act_b : Action::None;
            const auto inc = [&](bool entered, Action act) {
              if (!entered) return a.payoffs.monopoly;
              return act == Action::Fight ? -a.payoffs.fight_cost : a.payoffs.accommodate;
            };
            const auto ent = [&](bool entered, Action act) {
              if (!entered) return zero;
              return act == Action::Fight ? -a.payoffs.entry_loss : a.payoffs.entry_gain;
            };
            o.incumbent_payoff = inc(in_a, o.period1) + inc(in_b, o.period2);
            o.entrant_a_payoff = ent(in_a, o.period1);
            o.entrant_b_payoff = ent(in_b, o.period2);
            dist.terminals.push_back(std::move(o));
            if (!in_b) break;
          }
          if (!in_a) break;
        }
      }
    }
  }
  return dist;
}

}  // namespace chainstore
