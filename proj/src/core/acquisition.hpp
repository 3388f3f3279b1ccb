#pragma once

#include <utility>
#include <vector>

#include "core/equilibrium.hpp"

namespace chainstore {

/// The period-2 entrant's option to pay k and observe the period-1 action for
/// certain instead of relying on the exogenous spillover.
template <typename S>
struct AcquisitionProblemT {
  S observation_cost;  // k >= 0
  S prior;             // p0
  S fight_prob;        // q_A used to form action probabilities
  S spillover;         // pi
  PayoffsT<S> payoffs;

  void validate() const {
    payoffs.validate();
    require_probability(prior, "p0");
    require_probability(fight_prob, "qA");
    require_probability(spillover, "pi");
    if (observation_cost < Num<S>::zero()) throw std::invalid_argument("k must be >= 0");
  }
};

using AcquisitionProblem = AcquisitionProblemT<double>;

/// Unconditional probabilities that the period-1 action was fight or
/// accommodate: (p0 + (1-p0) qA, (1-p0)(1-qA)). They sum to one.
template <typename S>
std::pair<S, S> action_probabilities(const S& p0, const S& qA) {
  const S one = Num<S>::one();
  return {p0 + (one - p0) * qA, (one - p0) * (one - qA)};
}

template <typename S>
S positive_part(const S& x) {
  return x > Num<S>::zero() ? x : Num<S>::zero();
}

/// Value of certain observation over the exogenous signal:
///   (1 - pi) [ pi_A v + pi_F (v - (v+d) p(F))_+ - (v - (v+d) p0)_+ ].
/// Always nonnegative: observing cannot hurt a cutoff decision maker.
template <typename S>
S value_of_information(const AcquisitionProblemT<S>& prob) {
  prob.validate();
  const S one = Num<S>::one();
  const auto [pi_f, pi_a] = action_probabilities(prob.prior, prob.fight_prob);
  const S pf = posterior_after_fight(prob.prior, prob.fight_prob).value;
  const S stake = prob.payoffs.entry_gain + prob.payoffs.entry_loss;
  const S bracket = pi_a * prob.payoffs.entry_gain +
                    pi_f * positive_part(prob.payoffs.entry_gain - stake * pf) -
                    positive_part(prob.payoffs.entry_gain - stake * prob.prior);
  return (one - prob.spillover) * bracket;
}

/// The acquisition cutoff k* equals the value of information; the entrant
/// acquires iff k <= k* (weak inequality at the knife edge, mirroring the
/// entry-cutoff convention).
template <typename S>
S acquisition_cutoff(const AcquisitionProblemT<S>& prob) {
  return value_of_information(prob);
}

template <typename S>
bool acquires_signal(const AcquisitionProblemT<S>& prob, const Cmp<S>& cmp = Cmp<S>{}) {
  return cmp.leq(prob.observation_cost, acquisition_cutoff(prob));
}

/// Observability faced by the incumbent once the acquisition choice is fixed:
/// pi_eff = pi + (1 - pi) sigma_k.
template <typename S>
S effective_observability(const S& pi, bool acquires) {
  require_probability(pi, "pi");
  if (!acquires) return pi;
  return pi + (Num<S>::one() - pi);
}

/// One acquisition-equilibrium candidate: an acquisition choice together with
/// the sequential equilibrium the incumbent plays at the implied pi_eff, and
/// the cutoff that choice generates.
template <typename S>
struct AcquisitionCandidateT {
  bool acquires = false;
  S pi_eff{};
  S kstar{};
  bool consistent = false;
  EquilibriumOutcomeT<S> outcome{};
};

template <typename S>
struct AcquisitionSolutionT {
  std::vector<AcquisitionCandidateT<S>> candidates;  // both sigma values, in order {acquire, not}
  bool has_consistent = false;
  bool multiple = false;

  const AcquisitionCandidateT<S>* selected() const {
    for (const auto& c : candidates)
      if (c.consistent) return &c;
    return nullptr;
  }
};

using AcquisitionCandidate = AcquisitionCandidateT<double>;
using AcquisitionSolution = AcquisitionSolutionT<double>;

/// Joint consistency search over the finite case space: for each acquisition
/// choice sigma in {1, 0}, solve the sequential game at pi_eff(sigma) and test
/// whether the entrant's best response to the equilibrium fight probability
/// reproduces sigma. Every consistent pair is reported; none may exist at
/// knife edges, which is flagged rather than patched over.
template <typename S>
AcquisitionSolutionT<S> solve_with_acquisition(const S& p0, const S& pi, const S& k,
                                               const PayoffsT<S>& pay,
                                               const Cmp<S>& cmp = Cmp<S>{},
                                               double boundary_selection = 0.5) {
  AcquisitionSolutionT<S> sol;
  for (bool acq : {true, false}) {
    AcquisitionCandidateT<S> cand;
    cand.acquires = acq;
    cand.pi_eff = effective_observability(pi, acq);
    cand.outcome = solve_sequential(p0, cand.pi_eff, pay, cmp, boundary_selection);
    AcquisitionProblemT<S> prob{k, p0, cand.outcome.qA, pi, pay};
    cand.kstar = acquisition_cutoff(prob);
    const bool wants = cmp.leq(k, cand.kstar);
    cand.consistent = wants == acq;
    sol.candidates.push_back(std::move(cand));
  }
  int n = 0;
  for (const auto& c : sol.candidates) n += c.consistent ? 1 : 0;
  sol.has_consistent = n > 0;
  sol.multiple = n > 1;
  return sol;
}

}  // namespace chainstore
