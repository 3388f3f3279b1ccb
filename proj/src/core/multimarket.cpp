#include "core/multimarket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "core/rng.hpp"

namespace chainstore {

HazardBounds hazard_bounds(const std::vector<double>& accommodate_probs,
                           const std::vector<int>& active_counts, double pi, int t) {
  require_probability(pi, "pi");
  if (t < 1) throw std::invalid_argument("hazard_bounds: t must be >= 1");
  if (accommodate_probs.size() < static_cast<std::size_t>(t) ||
      active_counts.size() < static_cast<std::size_t>(t))
    throw std::invalid_argument("hazard_bounds: need r_s and |A_s| for every s <= t");
  HazardBounds hb;
  for (int s = 0; s < t; ++s) {
    require_probability(accommodate_probs[s], "r_s");
    if (active_counts[s] < 0) throw std::invalid_argument("hazard_bounds: negative |A_s|");
    hb.no_public_upper *= std::pow(1.0 - pi * accommodate_probs[s], active_counts[s]);
  }
  hb.at_least_one_lower = 1.0 - hb.no_public_upper;
  return hb;
}

double expected_deterrence_gain(const std::vector<double>& per_market_gains, double pi) {
  require_probability(pi, "pi");
  double total = 0.0;
  for (double g : per_market_gains) total += pi * g;
  return total;
}

FrontloadResult frontload_index(const std::vector<double>& expected_gains, const Payoffs& pay,
                                bool scaled) {
  pay.validate();
  if (expected_gains.empty()) throw std::invalid_argument("frontload_index: empty gain sequence");
  for (std::size_t i = 1; i < expected_gains.size(); ++i)
    if (expected_gains[i] > expected_gains[i - 1])
      throw std::invalid_argument("frontload_index: gains must be weakly decreasing");

  const double scale = scaled ? pay.monopoly - pay.accommodate : 1.0;
  const double cost = pay.accommodate + pay.fight_cost;
  int last_nonneg = 0;
  for (std::size_t i = 0; i < expected_gains.size(); ++i)
    if (scale * expected_gains[i] - cost >= 0.0) last_nonneg = static_cast<int>(i) + 1;

  FrontloadResult r;
  if (last_nonneg == 0) {
    r.kind = FrontloadKind::Never;
  } else if (last_nonneg == static_cast<int>(expected_gains.size())) {
    r.kind = FrontloadKind::Always;
    r.period = last_nonneg;
  } else {
    r.kind = FrontloadKind::Period;
    r.period = last_nonneg;
  }
  return r;
}

namespace {

/// Entry reduction at one inactive market, conditional on this period's
/// signal being delivered to it: P(enter | accommodate delivered) minus
/// P(enter | fight delivered), under belief qhat and a knife-edge entry
/// probability gamma wherever the updated belief lands exactly on phi.
double conditional_gain(double posterior, double qhat, double gamma,
                        const std::optional<Noise>& noise, const Thresholds& th,
                        const Cmp<double>& cmp) {
  const auto indicator = [&](double p) {
    if (cmp.eq(p, th.phi)) return gamma;
    return cmp.leq(p, th.phi) ? 1.0 : 0.0;
  };
  if (!noise || noise->noiseless()) {
    const double pf = posterior_after_fight(posterior, qhat).value;
    return indicator(0.0) - indicator(pf);
  }
  NoisyPosteriors<double> np = noisy_posteriors(posterior, qhat, *noise);
  const double pF = detail::report_posterior_with_convention(np, Report::Fight, nullptr);
  const double pA = detail::report_posterior_with_convention(np, Report::Accommodate, nullptr);
  const double iF = indicator(pF);
  const double iA = indicator(pA);
  const double eF = noise->false_negative;
  const double eA = noise->false_positive;
  // Report mixture per action.
  return ((1.0 - eA) * iA + eA * iF) - ((1.0 - eF) * iF + eF * iA);
}

/// Fight probability at which the post-fight belief of a market at posterior p
/// lands exactly on phi (no such probability when p is already above phi).
std::optional<double> knife_qhat(double posterior, const std::optional<Noise>& noise,
                                 const Thresholds& th) {
  if (posterior <= 0.0 || posterior >= 1.0) return std::nullopt;
  Noise n = noise ? *noise : Noise{0.0, 0.0};
  return detail::report_posterior_crossing(posterior, n, Report::Fight, th);
}

PolicyDecision threshold_decision(const MarketSystemState& state, double pi, const Payoffs& pay,
                                  const std::optional<Noise>& noise, const Cmp<double>& cmp,
                                  double boundary_selection) {
  const Thresholds th = thresholds(pay);
  const double scale = pay.monopoly - pay.accommodate;
  const double cost = pay.accommodate + pay.fight_cost;

  std::vector<double> posteriors;
  posteriors.reserve(state.inactive_markets.size());
  for (int m : state.inactive_markets) posteriors.push_back(state.markets[m].posterior);
  if (posteriors.empty()) return {0.0, 1.0};

  const auto aggregate = [&](double qhat, double gamma) {
    std::vector<double> gains;
    gains.reserve(posteriors.size());
    for (double p : posteriors) gains.push_back(conditional_gain(p, qhat, gamma, noise, th, cmp));
    return expected_deterrence_gain(gains, pi);
  };

  if (cmp.geq(scale * aggregate(1.0, 1.0) - cost, 0.0)) return {1.0, 1.0};

  const double g0 = scale * aggregate(0.0, 1.0) - cost;

  // Belief knife edges: fight probabilities pinning some market's post-fight
  // belief exactly at the cutoff.
  std::vector<double> crossings;
  for (double p : posteriors)
    if (auto q = knife_qhat(p, noise, th)) crossings.push_back(*q);
  std::sort(crossings.begin(), crossings.end());
  crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());

  if (cmp.eq(g0, 0.0)) {
    // Boundary continuum: any low fight probability leaves the incumbent
    // indifferent; select inside the interval as the solver does.
    const double hi = crossings.empty() ? 1.0 : crossings.front();
    return {hi * boundary_selection, 1.0};
  }
  if (cmp.lt(g0, 0.0)) return {0.0, 1.0};

  // Fighting pays at qhat = 0 but not at 1: indifference sits at a knife edge,
  // where the marginal market's entrant randomizes.
  for (double q : crossings) {
    const double a0 = scale * aggregate(q, 0.0) - cost;
    const double a1 = scale * aggregate(q, 1.0) - cost;
    if (a0 == a1) continue;
    const double gamma = -a0 / (a1 - a0);
    if (gamma >= 0.0 && gamma <= 1.0) return {q, gamma};
  }
  return {0.0, 1.0};  // no consistent candidate; accommodate
}

}  // namespace

PolicyDecision evaluate_policy(const PolicySpec& policy, const MarketSystemState& state,
                               double pi, const Payoffs& pay, const std::optional<Noise>& noise,
                               const Cmp<double>& cmp, double boundary_selection) {
  if (policy.kind == PolicyKind::Constant)
    return {1.0 - policy.accommodate_prob, 1.0};
  return threshold_decision(state, pi, pay, noise, cmp, boundary_selection);
}

namespace {

double updated_posterior(double posterior, Report rep, double qhat,
                         const std::optional<Noise>& noise) {
  if (!noise || noise->noiseless()) {
    if (rep == Report::Accommodate) return 0.0;
    return posterior_after_fight(posterior, qhat).value;
  }
  NoisyPosteriors<double> np = noisy_posteriors(posterior, qhat, *noise);
  return detail::report_posterior_with_convention(np, rep, nullptr);
}

}  // namespace

SimulationStats simulate(const SimulateConfig& cfg) {
  if (cfg.n_markets < 2) throw std::invalid_argument("simulate: need N >= 2 markets");
  if (cfg.t_periods < 2) throw std::invalid_argument("simulate: need T >= 2 periods");
  if (cfg.replications < 1) throw std::invalid_argument("simulate: need replications >= 1");
  cfg.payoffs.validate();
  require_probability(cfg.prior, "p0");
  require_probability(cfg.spillover, "pi");
  if (cfg.noise) cfg.noise->validate();
  if (cfg.policy.kind == PolicyKind::Constant)
    require_probability(cfg.policy.accommodate_prob, "policy r");

  const int scheduled_periods = std::min(cfg.n_markets, cfg.t_periods);
  if (scheduled_periods > cfg.n_markets)
    throw std::invalid_argument("simulate: schedule assigns more entrants than markets");

  const Cmp<double> cmp{cfg.tolerance};
  const Thresholds th = thresholds(cfg.payoffs);

  SimulationStats stats;
  stats.replications = cfg.replications;
  stats.period.resize(cfg.t_periods);
  CompensatedSum payoff_all, payoff_strategic, payoff_tough, first_public_sum;

  for (long rep = 0; rep < cfg.replications; ++rep) {
    auto eng = replication_stream(cfg.seed, static_cast<std::uint64_t>(rep));
    const bool tough = bernoulli(eng, cfg.prior);
    if (tough)
      ++stats.tough_replications;
    else
      ++stats.strategic_replications;

    MarketSystemState state;
    state.markets.assign(cfg.n_markets, MarketState{cfg.prior, false, false, 1.0});
    state.inactive_markets.resize(cfg.n_markets);
    std::iota(state.inactive_markets.begin(), state.inactive_markets.end(), 0);

    std::vector<int> schedule(scheduled_periods);
    std::iota(schedule.begin(), schedule.end(), 0);
    if (cfg.random_order) {
      for (int i = scheduled_periods - 1; i > 0; --i) {
        const int j = static_cast<int>(eng() % static_cast<std::uint64_t>(i + 1));
        std::swap(schedule[i], schedule[j]);
      }
    }

    double incumbent_total = 0.0;
    int first_public = 0;
    double prev_intent = 2.0;  // sentinel above any probability
    bool violated = false;

    for (int t = 1; t <= cfg.t_periods; ++t) {
      auto& ps = stats.period[t - 1];
      const bool has_entrant = t <= scheduled_periods;
      if (has_entrant) {
        ++ps.scheduled;
        const int m = schedule[t - 1];
        state.period = t;
        // The current market activates; deterrence is about the rest.
        state.inactive_markets.erase(
            std::find(state.inactive_markets.begin(), state.inactive_markets.end(), m));
        state.active_markets.push_back(m);

        const PolicyDecision dec =
            evaluate_policy(cfg.policy, state, cfg.spillover, cfg.payoffs, cfg.noise, cmp,
                            cfg.boundary_selection);
        if (!tough) {
          ps.intent_sum_strategic += dec.fight_prob;
          if (!state.public_accommodation_seen) {
            if (dec.fight_prob > prev_intent + 1e-12) violated = true;
            prev_intent = dec.fight_prob;
          }
        }

        MarketState& mk = state.markets[m];
        const double alpha = fight_belief(mk.posterior, dec.fight_prob);
        bool enter;
        if (cfg.force_first_entry && t == 1)
          enter = true;
        else if (cmp.eq(alpha, th.phi))
          enter = bernoulli(eng, mk.knife_entry_prob);
        else
          enter = alpha < th.phi;
        mk.resolved = true;
        mk.entered = enter;

        if (enter) {
          ++ps.contested;
          ++ps.entered;
          if (!tough) ++ps.contested_strategic;
          const bool fight = tough || bernoulli(eng, dec.fight_prob);
          if (fight) {
            ++ps.fought;
            if (!tough) ++ps.fought_strategic;
          }
          incumbent_total += fight ? -cfg.payoffs.fight_cost : cfg.payoffs.accommodate;

          const Action action = fight ? Action::Fight : Action::Accommodate;
          MarketSystemState::Event ev{t, m, action, {}};
          for (int m2 : state.inactive_markets) {
            if (!bernoulli(eng, cfg.spillover)) continue;
            Report repb = action == Action::Fight ? Report::Fight : Report::Accommodate;
            if (cfg.noise && !cfg.noise->noiseless()) {
              const double flip = action == Action::Fight ? cfg.noise->false_negative
                                                          : cfg.noise->false_positive;
              if (bernoulli(eng, flip))
                repb = repb == Report::Fight ? Report::Accommodate : Report::Fight;
            }
            ev.deliveries.push_back(m2);
            MarketState& rcv = state.markets[m2];
            rcv.posterior = updated_posterior(rcv.posterior, repb, dec.fight_prob, cfg.noise);
            rcv.knife_entry_prob = cmp.eq(rcv.posterior, th.phi) ? dec.knife_entry_prob : 1.0;
            if (repb == Report::Accommodate && !state.public_accommodation_seen) {
              state.public_accommodation_seen = true;
              first_public = t;
            }
          }
          state.history.push_back(std::move(ev));
        } else {
          incumbent_total += cfg.payoffs.monopoly;
        }
      }
      if (!state.public_accommodation_seen) {
        ++ps.no_public_accom;
        if (!tough) ++ps.no_public_accom_strategic;
      }
    }
    // Markets never scheduled stay monopolies.
    incumbent_total += cfg.payoffs.monopoly * (cfg.n_markets - scheduled_periods);

    payoff_all.add(incumbent_total);
    if (tough)
      payoff_tough.add(incumbent_total);
    else
      payoff_strategic.add(incumbent_total);
    if (first_public > 0) {
      ++stats.any_public_accommodation;
      first_public_sum.add(static_cast<double>(first_public));
    }
    if (violated) ++stats.frontload_violations;
  }

  stats.incumbent_payoff_mean = payoff_all.value() / cfg.replications;
  if (stats.strategic_replications)
    stats.incumbent_payoff_mean_strategic = payoff_strategic.value() / stats.strategic_replications;
  if (stats.tough_replications)
    stats.incumbent_payoff_mean_tough = payoff_tough.value() / stats.tough_replications;
  if (stats.any_public_accommodation)
    stats.mean_first_public_accommodation =
        first_public_sum.value() / stats.any_public_accommodation;
  return stats;
}

}  // namespace chainstore
