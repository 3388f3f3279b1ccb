#include "core/sweeps.hpp"

#include <cmath>
#include <stdexcept>

namespace chainstore {

namespace {

/// Degenerate-prior classification by continuity: at p0 = 0 there is no
/// reputation to defend (LOW); at p0 = 1 the incumbent is tough for sure and
/// the fight region is pi >= delta.
template <typename S>
RegionRow<S> degenerate_region_point(const S& p0, const S& pi, const PayoffsT<S>& pay,
                                     const Cmp<S>& cmp) {
  const S zero = Num<S>::zero();
  const S one = Num<S>::one();
  const ThresholdsT<S> th = thresholds(pay);

  RegionRow<S> row{p0, pi, Regime::LowAccommodate, zero, zero, zero};
  if (p0 == zero) {
    row.regime = Regime::LowAccommodate;
    row.qA = zero;
    row.fight_prob = zero;
    // The lone strategic type accommodates; entrant B always enters.
    row.ex_ante_entry_B = one;
    return row;
  }
  // p0 = 1: the commitment type fights regardless; label by the limit of the
  // high-prior condition.
  row.regime = cmp.geq(pi, th.delta) ? Regime::HighFight : Regime::LowAccommodate;
  row.qA = row.regime == Regime::HighFight ? one : zero;
  row.fight_prob = one;
  row.ex_ante_entry_B = zero;  // posterior never drops below the (sure) prior 1 > phi
  return row;
}

}  // namespace

template <typename S>
RegionRow<S> region_point(const S& p0, const S& pi, const PayoffsT<S>& pay, const Cmp<S>& cmp,
                          double boundary_selection) {
  if (p0 == Num<S>::zero() || p0 == Num<S>::one())
    return degenerate_region_point(p0, pi, pay, cmp);
  const auto out = solve_sequential(p0, pi, pay, cmp, boundary_selection);
  return RegionRow<S>{p0, pi, out.regime, out.qA, out.ex_ante_entry_B, out.overall_fight_prob()};
}

template <typename S>
std::vector<RegionRow<S>> region_sweep(const PayoffsT<S>& pay, int p0_count, int pi_count,
                                       const Cmp<S>& cmp, double boundary_selection) {
  if (p0_count < 2 || pi_count < 2)
    throw std::invalid_argument("region_sweep: need at least 2 grid points per axis");
  std::vector<RegionRow<S>> rows;
  rows.reserve(static_cast<std::size_t>(p0_count) * pi_count);
  for (int i = 0; i < p0_count; ++i) {
    const S p0 = Num<S>::from_ratio(i, p0_count - 1);
    for (int j = 0; j < pi_count; ++j) {
      const S pi = Num<S>::from_ratio(j, pi_count - 1);
      rows.push_back(region_point(p0, pi, pay, cmp, boundary_selection));
    }
  }
  return rows;
}

template RegionRow<double> region_point(const double&, const double&, const PayoffsT<double>&,
                                        const Cmp<double>&, double);
template RegionRow<Rational> region_point(const Rational&, const Rational&,
                                          const PayoffsT<Rational>&, const Cmp<Rational>&, double);
template std::vector<RegionRow<double>> region_sweep(const PayoffsT<double>&, int, int,
                                                     const Cmp<double>&, double);
template std::vector<RegionRow<Rational>> region_sweep(const PayoffsT<Rational>&, int, int,
                                                       const Cmp<Rational>&, double);

namespace {

template <typename S>
CsvTable region_table_impl(const std::vector<RegionRow<S>>& rows) {
  CsvTable t;
  t.header = {"p0", "pi", "regime", "qA", "exAnteEntryB", "fightProb"};
  t.rows.reserve(rows.size());
  for (const auto& r : rows) {
    t.rows.push_back({format_number(Num<S>::to_double(r.p0)),
                      format_number(Num<S>::to_double(r.pi)), to_string(r.regime),
                      format_number(Num<S>::to_double(r.qA)),
                      format_number(Num<S>::to_double(r.ex_ante_entry_B)),
                      format_number(Num<S>::to_double(r.fight_prob))});
  }
  return t;
}

}  // namespace

CsvTable region_table(const std::vector<RegionRow<double>>& rows) {
  return region_table_impl(rows);
}
CsvTable region_table(const std::vector<RegionRow<Rational>>& rows) {
  return region_table_impl(rows);
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "pi") return SweepAxis::Pi;
  if (name == "p0") return SweepAxis::P0;
  if (name == "epsF" || name == "eps-f" || name == "epsf") return SweepAxis::EpsF;
  if (name == "epsA" || name == "eps-a" || name == "epsa") return SweepAxis::EpsA;
  if (name == "k") return SweepAxis::K;
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Pi: return "pi";
    case SweepAxis::P0: return "p0";
    case SweepAxis::EpsF: return "epsF";
    case SweepAxis::EpsA: return "epsA";
    case SweepAxis::K: return "k";
  }
  return "?";
}

SweepResult sweep_1d(SweepAxis axis, double lo, double hi, int count,
                     const SweepPointInputs& base, const Payoffs& pay, const Cmp<double>& cmp,
                     double boundary_selection) {
  if (count < 2) throw std::invalid_argument("sweep: need at least 2 points");
  if (hi < lo) throw std::invalid_argument("sweep: max below min");
  SweepResult res;
  res.axis = axis;
  res.rows.reserve(count);

  for (int i = 0; i < count; ++i) {
    const double value = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    SweepPointInputs in = base;
    switch (axis) {
      case SweepAxis::Pi: in.pi = value; break;
      case SweepAxis::P0: in.p0 = value; break;
      case SweepAxis::EpsF: {
        Noise n = in.noise.value_or(Noise{0.0, 0.0});
        n.false_negative = value;
        in.noise = n;
        break;
      }
      case SweepAxis::EpsA: {
        Noise n = in.noise.value_or(Noise{0.0, 0.0});
        n.false_positive = value;
        in.noise = n;
        break;
      }
      case SweepAxis::K: in.k = value; break;
    }

    SweepRow row;
    row.value = value;
    if (axis == SweepAxis::K) {
      const auto sol = solve_with_acquisition(in.p0, in.pi, *in.k, pay, cmp, boundary_selection);
      const auto* sel = sol.selected();
      if (sel) {
        row.acquires = sel->acquires ? "1" : "0";
        row.pi_eff = sel->pi_eff;
        row.kstar = sel->kstar;
        const auto& eq = sel->outcome;
        row.regime = to_string(eq.regime);
        row.qA = eq.qA;
        row.lambda_A = eq.lambda_A;
        row.lambda_F = eq.lambda_F;
        row.delta_lambda = eq.delta_lambda;
        row.ex_ante_entry_B = eq.ex_ante_entry_B;
        row.fight_prob = eq.overall_fight_prob();
      } else {
        row.acquires = "none";
        row.pi_eff = in.pi;
        const auto eq = solve_sequential(in.p0, in.pi, pay, cmp, boundary_selection);
        AcquisitionProblem prob{*in.k, in.p0, eq.qA, in.pi, pay};
        row.kstar = acquisition_cutoff(prob);
        row.regime = to_string(eq.regime);
        row.qA = eq.qA;
        row.lambda_A = eq.lambda_A;
        row.lambda_F = eq.lambda_F;
        row.delta_lambda = eq.delta_lambda;
        row.ex_ante_entry_B = eq.ex_ante_entry_B;
        row.fight_prob = eq.overall_fight_prob();
      }
    } else {
      EquilibriumOutcome eq;
      if (in.noise && !in.noise->noiseless())
        eq = solve_sequential_noisy(in.p0, in.pi, pay, *in.noise, cmp, boundary_selection);
      else
        eq = solve_sequential(in.p0, in.pi, pay, cmp, boundary_selection);
      row.regime = to_string(eq.regime);
      row.qA = eq.qA;
      row.lambda_A = eq.lambda_A;
      row.lambda_F = eq.lambda_F;
      row.delta_lambda = eq.delta_lambda;
      row.ex_ante_entry_B = eq.ex_ante_entry_B;
      row.fight_prob = eq.overall_fight_prob();
      row.pi_eff = in.pi;
      AcquisitionProblem prob{in.k.value_or(0.0), in.p0, eq.qA, in.pi, pay};
      row.kstar = acquisition_cutoff(prob);
      row.acquires = "";
    }
    res.rows.push_back(std::move(row));
  }

  const auto classify = [&](auto getter) -> std::string {
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < res.rows.size(); ++i) {
      const double prev = getter(res.rows[i - 1]);
      const double cur = getter(res.rows[i]);
      if (cur < prev - cmp.tol.abs) inc = false;
      if (cur > prev + cmp.tol.abs) dec = false;
    }
    if (inc && dec) return "constant";
    if (inc) return "increasing";
    if (dec) return "decreasing";
    return "none";
  };
  res.monotonicity["qA"] = classify([](const SweepRow& r) { return r.qA; });
  res.monotonicity["lambdaA"] = classify([](const SweepRow& r) { return r.lambda_A; });
  res.monotonicity["lambdaF"] = classify([](const SweepRow& r) { return r.lambda_F; });
  res.monotonicity["deltaLambda"] = classify([](const SweepRow& r) { return r.delta_lambda; });
  res.monotonicity["exAnteEntryB"] = classify([](const SweepRow& r) { return r.ex_ante_entry_B; });
  res.monotonicity["fightProb"] = classify([](const SweepRow& r) { return r.fight_prob; });
  res.monotonicity["kstar"] = classify([](const SweepRow& r) { return r.kstar; });
  return res;
}

CsvTable SweepResult::table() const {
  CsvTable t;
  t.header = {"axis",         "value",   "regime",    "qA",        "lambdaA",
              "lambdaF",      "deltaLambda", "exAnteEntryB", "fightProb", "kstar",
              "acquires",     "piEff"};
  for (const auto& r : rows) {
    t.rows.push_back({to_string(axis), format_number(r.value), r.regime, format_number(r.qA),
                      format_number(r.lambda_A), format_number(r.lambda_F),
                      format_number(r.delta_lambda), format_number(r.ex_ante_entry_B),
                      format_number(r.fight_prob), format_number(r.kstar), r.acquires,
                      format_number(r.pi_eff)});
  }
  return t;
}

}  // namespace chainstore
