#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "core/equilibrium.hpp"
#include "core/noisy.hpp"

namespace chainstore {

/// Per-period accommodation hazard bounds for the N-market extension: the
/// probability that no accommodation has become public by the end of period t
/// is at most prod_{s<=t} (1 - pi r_s)^{|A_s|}, and so at least one is public
/// with at least the complementary probability.
struct HazardBounds {
  double no_public_upper = 1.0;
  double at_least_one_lower = 0.0;
};

HazardBounds hazard_bounds(const std::vector<double>& accommodate_probs,
                           const std::vector<int>& active_counts, double pi, int t);

/// Expected total entry reduction across yet-inactive markets from fighting
/// this period: sum over inactive markets of pi times the market's
/// conditional-on-delivery entry reduction.
double expected_deterrence_gain(const std::vector<double>& per_market_gains, double pi);

enum class FrontloadKind { Never, Always, Period };

struct FrontloadResult {
  FrontloadKind kind = FrontloadKind::Never;
  int period = 0;  // last period with a nonnegative net gain, when kind == Period
};

/// Last period at which fighting still pays: G_t = (M - a) E[dLambda_t] - (a + c)
/// over a weakly decreasing gain sequence. `scaled` applies the (M - a)
/// conversion from entry reduction to payoff units; the raw variant compares
/// the gain against (a + c) directly.
FrontloadResult frontload_index(const std::vector<double>& expected_gains, const Payoffs& pay,
                                bool scaled = true);

enum class PolicyKind { Threshold, Constant };

/// Strategic-type behaviour rule in the N x T simulation. THRESHOLD fights
/// when the aggregate deterrence gain across yet-inactive markets covers the
/// static cost, resolving self-referential beliefs by the same finite case
/// analysis as the two-market solver (at N=2, T=2 it reproduces it exactly).
/// CONSTANT(r) accommodates with probability r each period.
struct PolicySpec {
  PolicyKind kind = PolicyKind::Threshold;
  double accommodate_prob = 0.5;  // CONSTANT only
};

/// One market's public state as seen from inside the simulation.
struct MarketState {
  double posterior;          // rho for this market, from signals it received
  bool resolved = false;     // its entry period has passed
  bool entered = false;
  double knife_entry_prob = 1.0;  // entry probability if its belief sits at phi
};

/// System state handed to policies: period, yet-inactive markets and their
/// posteriors, activation history and the absorbing public-accommodation flag.
struct MarketSystemState {
  int period = 1;
  std::vector<int> inactive_markets;
  std::vector<int> active_markets;
  std::vector<MarketState> markets;
  bool public_accommodation_seen = false;

  struct Event {
    int period;
    int market;
    Action action;
    std::vector<int> deliveries;
  };
  std::vector<Event> history;
};

/// Policy output for the current period.
struct PolicyDecision {
  double fight_prob = 0.0;
  double knife_entry_prob = 1.0;  // applied to markets pinned at the cutoff by this signal
};

PolicyDecision evaluate_policy(const PolicySpec& policy, const MarketSystemState& state,
                               double pi, const Payoffs& pay, const std::optional<Noise>& noise,
                               const Cmp<double>& cmp, double boundary_selection = 0.5);

struct SimulateConfig {
  int n_markets = 2;
  int t_periods = 2;
  double prior = 0.5;
  double spillover = 0.5;
  Payoffs payoffs = default_payoffs();
  std::optional<Noise> noise{};
  PolicySpec policy{};
  long replications = 10000;
  std::uint64_t seed = 1;
  bool force_first_entry = false;  // condition period 1 on entry, as the solver's statistics do
  bool random_order = false;       // seeded random market schedule instead of 1..min(N,T)
  Tolerance tolerance{};
  double boundary_selection = 0.5;
};

struct PeriodStats {
  long scheduled = 0;   // replications in which this period had an entrant slot
  long contested = 0;   // entrant entered
  long entered = 0;     // alias of contested, kept for readability of outputs
  long fought = 0;      // fights among contested
  long contested_strategic = 0;
  long fought_strategic = 0;
  double intent_sum_strategic = 0.0;  // policy fight probability, strategic replications
  long no_public_accom = 0;            // replications with no public accommodation by end of t
  long no_public_accom_strategic = 0;
};

struct SimulationStats {
  long replications = 0;
  long strategic_replications = 0;
  long tough_replications = 0;
  std::vector<PeriodStats> period;  // index 0 is period 1
  double incumbent_payoff_mean = 0.0;
  double incumbent_payoff_mean_strategic = 0.0;
  double incumbent_payoff_mean_tough = 0.0;
  double mean_first_public_accommodation = 0.0;  // among replications where one occurred
  long any_public_accommodation = 0;
  long frontload_violations = 0;  // strategic replications with rising intent pre-collapse

  double entry_freq(int t) const {
    const auto& p = period.at(t - 1);
    return p.scheduled ? static_cast<double>(p.entered) / p.scheduled : 0.0;
  }
  double fight_freq_strategic(int t) const {
    const auto& p = period.at(t - 1);
    return p.contested_strategic ? static_cast<double>(p.fought_strategic) / p.contested_strategic
                                 : 0.0;
  }
  double intent_strategic(int t) const {
    const auto& p = period.at(t - 1);
    return strategic_replications ? p.intent_sum_strategic / strategic_replications : 0.0;
  }
  double no_public_accom_freq_strategic(int t) const {
    const auto& p = period.at(t - 1);
    return strategic_replications
               ? static_cast<double>(p.no_public_accom_strategic) / strategic_replications
               : 1.0;
  }
  static double binomial_se(double p, long n) {
    return n > 0 ? std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n)) : 0.0;
  }
};

/// Seeded Monte Carlo of the N-market, T-period diffusion process. One entrant
/// is scheduled per period on a distinct market for the first min(N, T)
/// periods; contested actions are signalled independently with probability pi
/// to every yet-inactive market; each market updates its own posterior from
/// the signals it received using the policy's announced fight probability.
/// Bit-identical statistics for identical (config, seed).
SimulationStats simulate(const SimulateConfig& config);

}  // namespace chainstore
