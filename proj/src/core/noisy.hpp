#pragma once

#include <optional>
#include <utility>

#include "core/equilibrium.hpp"

namespace chainstore {

/// Bayes posteriors for the two noisy reports, or nullopt when the report has
/// zero unconditional probability (only the A-hat report at epsF = 0, qA = 1).
template <typename S>
struct NoisyPosteriors {
  std::optional<PosteriorT<S>> fight_report;        // p(F-hat)
  std::optional<PosteriorT<S>> accommodate_report;  // p(A-hat)
  S prob_fight_report;        // P(F-hat | arrival)
  S prob_accommodate_report;  // P(A-hat | arrival)
};

template <typename S>
NoisyPosteriors<S> noisy_posteriors(const S& p0, const S& qA, const NoiseT<S>& noise) {
  const S one = Num<S>::one();
  const S zero = Num<S>::zero();
  require_probability(p0, "p0");
  require_probability(qA, "qA");
  noise.validate();

  const S eF = noise.false_negative;
  const S eA = noise.false_positive;

  NoisyPosteriors<S> out{};
  // F-hat arrives from a true fight (both types' fights pass with 1-epsF) or a
  // misreported accommodation.
  const S numF = p0 * (one - eF);
  const S denF = numF + (one - p0) * (qA * (one - eF) + (one - qA) * eA);
  const S numA = p0 * eF;
  const S denA = numA + (one - p0) * (qA * eF + (one - qA) * (one - eA));
  out.prob_fight_report = denF;
  out.prob_accommodate_report = denA;
  if (denF != zero) out.fight_report = PosteriorT<S>{numF / denF, SignalKind::NoisyFightReport};
  if (denA != zero)
    out.accommodate_report = PosteriorT<S>{numA / denA, SignalKind::NoisyAccommodateReport};
  return out;
}

namespace detail {

/// Posterior for a report with the off-path convention: a zero-probability
/// A-hat report can only come from an accommodation, which only the strategic
/// type plays, so the posterior is 0, matching the noiseless accommodate
/// signal convention.
template <typename S>
S report_posterior_with_convention(const NoisyPosteriors<S>& np, Report rep, bool* off_path) {
  if (rep == Report::Fight) {
    if (np.fight_report) return np.fight_report->value;
    if (off_path) *off_path = true;
    return Num<S>::one();  // unreachable in practice: P(F-hat) > 0 always
  }
  if (np.accommodate_report) return np.accommodate_report->value;
  if (off_path) *off_path = true;
  return Num<S>::zero();
}

/// Entrant policy implied by the belief system at (p0, qA, noise), with an
/// optional knife-edge mix at one report.
template <typename S>
EntrantBPolicy<S> cutoff_policy(const S& p0, const S& qA, const std::optional<NoiseT<S>>& noise,
                                const ThresholdsT<S>& th, const Cmp<S>& cmp,
                                KnifeEdgeSite knife = KnifeEdgeSite::None,
                                const S& knife_prob = Num<S>::zero()) {
  const S one = Num<S>::one();
  const S zero = Num<S>::zero();
  EntrantBPolicy<S> pol{};
  pol.enter_no_signal = cmp.leq(p0, th.phi) ? one : zero;

  S pF, pA;
  if (noise) {
    const auto np = noisy_posteriors(p0, qA, *noise);
    pF = report_posterior_with_convention(np, Report::Fight, nullptr);
    pA = report_posterior_with_convention(np, Report::Accommodate, nullptr);
  } else {
    pF = posterior_after_fight(p0, qA).value;
    pA = posterior_after_accommodate<S>().value;
  }
  pol.enter_fight_report = cmp.leq(pF, th.phi) ? one : zero;
  pol.enter_accommodate_report = cmp.leq(pA, th.phi) ? one : zero;
  if (knife == KnifeEdgeSite::AfterFightSignal || knife == KnifeEdgeSite::AfterFightReport)
    pol.enter_fight_report = knife_prob;
  if (knife == KnifeEdgeSite::AfterAccommodateReport) pol.enter_accommodate_report = knife_prob;
  return pol;
}

}  // namespace detail

/// Continuation entry probabilities under noisy reports, conditional on the
/// period-1 action. Expands over the report distribution given the action:
///   lambda_X = (1 - pi) 1{p0 <= phi}
///            + pi [ P(F-hat|X) 1{p(F-hat) <= phi} + P(A-hat|X) 1{p(A-hat) <= phi} ].
/// Reduces to the baseline lambdas at (epsF, epsA) = (0, 0) and matches the
/// exact tree enumeration by construction.
template <typename S>
std::pair<S, S> noisy_lambdas(const S& p0, const S& pi, const S& qA, const NoiseT<S>& noise,
                              const ThresholdsT<S>& th, const Cmp<S>& cmp) {
  SequentialAssessment<S> a{};
  a.prior = p0;
  a.spillover = pi;
  a.noise = noise;
  a.fight_prob_play = qA;
  a.fight_prob_belief = qA;
  a.entrant_b = detail::cutoff_policy(p0, qA, a.noise, th, cmp);
  const S lA = oracle_entry_prob_after_action(a, Action::Accommodate);
  const S lF = oracle_entry_prob_after_action(a, Action::Fight);
  return {lA, lF};
}

/// Entry reduction from fighting under noisy reports, lambda_A - lambda_F.
/// Algebraically equal to pi (1 - epsF - epsA) (1{p(A-hat)<=phi} - 1{p(F-hat)<=phi}).
template <typename S>
S noisy_delta_lambda(const S& p0, const S& pi, const S& qA, const NoiseT<S>& noise,
                     const ThresholdsT<S>& th, const Cmp<S>& cmp) {
  const auto [lA, lF] = noisy_lambdas(p0, pi, qA, noise, th, cmp);
  return lA - lF;
}

namespace detail {

/// Solves p(report X-hat; q) = phi for q. The posterior is A/(A + B(q)) with
/// B linear in q, so the crossing is the root of a linear equation.
template <typename S>
std::optional<S> report_posterior_crossing(const S& p0, const NoiseT<S>& noise, Report rep,
                                           const ThresholdsT<S>& th) {
  const S one = Num<S>::one();
  const S zero = Num<S>::zero();
  const S eF = noise.false_negative;
  const S eA = noise.false_positive;
  // Report emission rates: tough always fights.
  const S r_fight = rep == Report::Fight ? one - eF : eF;  // given action F (either type)
  const S r_accom = rep == Report::Fight ? eA : one - eA;  // given action A
  const S a_mass = p0 * r_fight;
  if (a_mass == zero) return std::nullopt;  // report proves action A; no interior crossing
  // A (1 - phi) = phi (1-p0) [q r_fight + (1-q) r_accom]
  const S target = a_mass * (one - th.phi) / (th.phi * (one - p0));
  if (r_fight == r_accom) return std::nullopt;
  const S q = (target - r_accom) / (r_fight - r_accom);
  if (q < zero || q > one) return std::nullopt;
  return q;
}

}  // namespace detail

/// Sequential-protocol PBE with noisy cross-market reports.
///
/// The equilibrium set is found by exact case analysis: the entry reduction is
/// piecewise constant in qA (it only moves when a report posterior crosses
/// phi), so candidate equilibria are the pure corners, the boundary continuum,
/// and knife-edge mixes where a report posterior sits exactly at phi and the
/// entrant randomizes to make the incumbent indifferent. Candidates are tested
/// in a canonical order and the first sequentially-rational one is returned;
/// at (epsF, epsA) = (0,0) the selection coincides with solve_sequential.
template <typename S>
EquilibriumOutcomeT<S> solve_sequential_noisy(const S& p0, const S& pi, const PayoffsT<S>& pay,
                                              const NoiseT<S>& noise, const Cmp<S>& cmp = Cmp<S>{},
                                              double boundary_selection = 0.5) {
  const S zero = Num<S>::zero();
  const S one = Num<S>::one();
  pay.validate();
  require_probability(p0, "p0");
  require_probability(pi, "pi");
  noise.validate();
  if (p0 == zero || p0 == one)
    throw degenerate_prior_error("solve_sequential_noisy: degenerate prior p0 in {0,1}");

  if (noise.noiseless()) {
    // Exact reduction: reuse the baseline solver so the noiseless case is
    // bit-identical to it, not merely close.
    EquilibriumOutcomeT<S> out = solve_sequential(p0, pi, pay, cmp, boundary_selection);
    out.noise = noise;
    return out;
  }

  EquilibriumOutcomeT<S> out;
  out.protocol = Protocol::Sequential;
  out.thresholds = thresholds(pay);
  out.noise = noise;
  out.qB = zero;

  SequentialAssessment<S>& a = out.assessment;
  a.prior = p0;
  a.spillover = pi;
  a.payoffs = pay;
  a.noise = noise;
  a.period2_fight_prob = zero;
  a.entrant_a = EntryRule::Cutoff;

  const ThresholdsT<S>& th = out.thresholds;

  const auto gap_at = [&](const S& q, const EntrantBPolicy<S>& pol) {
    SequentialAssessment<S> probe = a;
    probe.fight_prob_play = q;
    probe.fight_prob_belief = q;
    probe.entrant_b = pol;
    const S lA = oracle_entry_prob_after_action(probe, Action::Accommodate);
    const S lF = oracle_entry_prob_after_action(probe, Action::Fight);
    return incumbent_payoff_gap(lA - lF, pay);
  };

  const auto finish = [&](Regime regime, const S& q, KnifeEdgeSite site, const S& knife_prob,
                          QIntervalT<S> interval) {
    out.regime = regime;
    out.qA = q;
    out.qA_interval = interval;
    out.knife_site = site;
    out.knife_entry_prob = knife_prob;
    a.fight_prob_play = q;
    a.fight_prob_belief = q;
    a.entrant_b = detail::cutoff_policy(p0, q, a.noise, th, cmp, site, knife_prob);
    detail::fill_sequential_stats(out, cmp);
    return out;
  };

  // Candidate 1: pure fight. Sequentially rational iff the payoff gap at the
  // implied beliefs is nonnegative.
  {
    const auto pol = detail::cutoff_policy(p0, one, a.noise, th, cmp);
    if (cmp.geq(gap_at(one, pol), zero))
      return finish(Regime::HighFight, one, KnifeEdgeSite::None, one, {});
  }

  // Candidate 2: boundary continuum [0, q*) where q* is the F-hat posterior
  // crossing; supportable when the incumbent is exactly indifferent there.
  const auto qf = detail::report_posterior_crossing(p0, noise, Report::Fight, th);
  if (qf && cmp.leq(p0, th.phi)) {
    const S sel = Num<S>::from_ratio(static_cast<long>(boundary_selection * 1000000.0), 1000000);
    const S q_sel = *qf * sel;
    const auto pol = detail::cutoff_policy(p0, q_sel, a.noise, th, cmp);
    if (cmp.eq(gap_at(q_sel, pol), zero))
      return finish(Regime::BoundaryMix, q_sel, KnifeEdgeSite::None, one,
                    QIntervalT<S>{true, zero, *qf});
  }

  // Candidates 3 and 4: knife-edge mixes. At the crossing the report posterior
  // equals phi, the entrant may randomize; the entry probability that makes
  // the incumbent indifferent is the root of a linear equation, probed at 0/1.
  const auto try_knife = [&](Report rep, KnifeEdgeSite site) -> std::optional<EquilibriumOutcomeT<S>> {
    const auto q = detail::report_posterior_crossing(p0, noise, rep, th);
    if (!q) return std::nullopt;
    const auto pol0 = detail::cutoff_policy(p0, *q, a.noise, th, cmp, site, zero);
    const auto pol1 = detail::cutoff_policy(p0, *q, a.noise, th, cmp, site, one);
    const S g0 = gap_at(*q, pol0);
    const S g1 = gap_at(*q, pol1);
    if (g0 == g1) return std::nullopt;  // mix does not move the gap
    const S beta = -g0 / (g1 - g0);     // gap is linear in the mix probability
    if (beta < zero || beta > one) return std::nullopt;
    return finish(Regime::BoundaryMix, *q, site, beta, {});
  };
  const KnifeEdgeSite fight_site = noise.noiseless() ? KnifeEdgeSite::AfterFightSignal
                                                     : KnifeEdgeSite::AfterFightReport;
  if (auto r = try_knife(Report::Fight, fight_site)) return *r;
  if (auto r = try_knife(Report::Accommodate, KnifeEdgeSite::AfterAccommodateReport)) return *r;

  // Candidate 5: pure accommodation.
  {
    const auto pol = detail::cutoff_policy(p0, zero, a.noise, th, cmp);
    if (cmp.leq(gap_at(zero, pol), zero))
      return finish(Regime::LowAccommodate, zero, KnifeEdgeSite::None, one, {});
  }
  throw std::logic_error("solve_sequential_noisy: no sequentially rational candidate found");
}

}  // namespace chainstore
