#pragma once

#include <string>
#include <vector>

#include "core/noisy.hpp"

namespace chainstore {

/// Result of certifying a candidate assessment against the exact game tree:
/// maximal payoff gains from unilateral deviations, Bayes-consistency checks,
/// and the off-path conventions that were applied instead of Bayes' rule.
struct DeviationReport {
  double max_incumbent_gain = 0.0;
  double max_entrant_gain = 0.0;
  double worst_incumbent_q = -1.0;   // deviation fight probability attaining the max
  double worst_incumbent_q2 = -1.0;  // period-2 deviation, when that is the binding one
  std::vector<std::string> bayes_violations;
  std::vector<std::string> conventions_applied;
  double tolerance = 1e-9;
  int grid_resolution = 1001;
  bool pass = false;
};

/// Grid-based no-profitable-deviation certification.
///
/// Incumbent: the strategic type's period-1 and period-2 fight probabilities
/// are perturbed over a uniform grid (plus corners, the candidate point and
/// the posterior kink) while entrant strategies and the belief rule stay at
/// the candidate; payoffs are evaluated by exact enumeration conditional on
/// the period-1 market being contested, so the check covers off-path
/// information sets too. Entrants: each information set reached with positive
/// probability is checked against the cutoff rule; mixing passes only at an
/// exact posterior knife edge.
DeviationReport verify_pbe(const EquilibriumOutcome& candidate, double tolerance = 1e-9,
                           int grid_resolution = 1001);

/// Builds a candidate assessment with an arbitrary (possibly wrong) strategic
/// fight probability but Bayes-consistent beliefs and cutoff entrant play, for
/// regression corpora of falsified equilibria.
EquilibriumOutcome make_flat_candidate(double p0, double pi, const Payoffs& pay, double qA,
                                       const std::optional<Noise>& noise = std::nullopt,
                                       const Cmp<double>& cmp = Cmp<double>{});

}  // namespace chainstore
