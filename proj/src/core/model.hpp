#pragma once

#include <stdexcept>

#include "core/numeric.hpp"

namespace chainstore {

/// Stage-game parameters of the entry game.
///
/// The incumbent earns `monopoly` on an uncontested market, `accommodate` when
/// it yields to an entrant and pays `fight_cost` (stored positive) when it
/// fights. The entrant gains `entry_gain` under accommodation and loses
/// `entry_loss` under a fight.
template <typename S>
struct PayoffsT {
  S monopoly;     // M
  S accommodate;  // a
  S fight_cost;   // c, payoff is -c
  S entry_loss;   // d, payoff is -d
  S entry_gain;   // v

  void validate() const {
    const S zero = Num<S>::zero();
    if (!(monopoly > accommodate)) throw std::invalid_argument("payoffs: require M > a");
    if (!(accommodate > zero)) throw std::invalid_argument("payoffs: require a > 0");
    if (!(fight_cost > zero)) throw std::invalid_argument("payoffs: require c > 0");
    if (!(entry_loss > zero)) throw std::invalid_argument("payoffs: require d > 0");
    if (!(entry_gain > zero)) throw std::invalid_argument("payoffs: require v > 0");
  }
};

using Payoffs = PayoffsT<double>;

/// Fig.-2 calibration, used as the default everywhere.
inline Payoffs default_payoffs() { return Payoffs{1.0, 0.30, 0.20, 1.0, 1.0}; }
inline PayoffsT<Rational> default_payoffs_rational() {
  return PayoffsT<Rational>{Rational(1), Rational(3, 10), Rational(1, 5), Rational(1), Rational(1)};
}

/// Entry cutoff phi and deterrence gain threshold delta.
template <typename S>
struct ThresholdsT {
  S phi;    // v / (v + d), in (0,1)
  S delta;  // (a + c) / (M - a), may exceed 1
};

using Thresholds = ThresholdsT<double>;

/// phi = v / (v + d): the fight-belief level at which an entrant is
/// indifferent between entering and staying out.
template <typename S>
S entry_cutoff(const PayoffsT<S>& pay) {
  pay.validate();
  return pay.entry_gain / (pay.entry_gain + pay.entry_loss);
}

/// delta = (a + c) / (M - a): the continuation entry reduction that makes
/// fighting worth its static cost. Can exceed 1, in which case no spillover
/// level satisfies pi >= delta.
template <typename S>
S deterrence_threshold(const PayoffsT<S>& pay) {
  pay.validate();
  return (pay.accommodate + pay.fight_cost) / (pay.monopoly - pay.accommodate);
}

template <typename S>
ThresholdsT<S> thresholds(const PayoffsT<S>& pay) {
  return ThresholdsT<S>{entry_cutoff(pay), deterrence_threshold(pay)};
}

/// Entrant's expected payoff from entering given fight belief alpha:
/// v - (v + d) * alpha. Nonnegative exactly when alpha <= phi.
template <typename S>
S entrant_value(const S& alpha, const PayoffsT<S>& pay) {
  return pay.entry_gain - (pay.entry_gain + pay.entry_loss) * alpha;
}

/// Fight belief alpha = p + (1 - p) q: the chance the entrant is fought in her
/// own market when the incumbent is tough with probability p and the strategic
/// type fights with probability q.
template <typename S>
S fight_belief(const S& p, const S& q) {
  return p + (Num<S>::one() - p) * q;
}

enum class SignalKind {
  FightSignal,
  AccommodateSignal,
  NoSignal,
  NoisyFightReport,
  NoisyAccommodateReport,
};

template <typename S>
struct PosteriorT {
  S value;
  SignalKind conditioning;
};

using Posterior = PosteriorT<double>;

/// Posterior toughness after an observed fight when the strategic type fights
/// with probability qA. Conventions: qA = 0 makes a fight fully revealing
/// (posterior 1); qA = 1 leaves beliefs at the prior.
template <typename S>
PosteriorT<S> posterior_after_fight(const S& p0, const S& qA) {
  const S one = Num<S>::one();
  if (qA == Num<S>::zero()) return {one, SignalKind::FightSignal};
  if (qA == one) return {p0, SignalKind::FightSignal};
  return {p0 / (p0 + (one - p0) * qA), SignalKind::FightSignal};
}

/// An observed accommodation reveals the strategic type: posterior exactly 0.
template <typename S>
PosteriorT<S> posterior_after_accommodate() {
  return {Num<S>::zero(), SignalKind::AccommodateSignal};
}

template <typename S>
PosteriorT<S> posterior_no_signal(const S& p0) {
  return {p0, SignalKind::NoSignal};
}

}  // namespace chainstore
