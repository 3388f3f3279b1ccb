#include "core/run.hpp"

#include <cmath>

#include "core/sweeps.hpp"
#include "core/verifier.hpp"

namespace chainstore {

namespace {

using nlohmann::json;

json outcome_json(const EquilibriumOutcome& out) {
  json j;
  j["protocol"] = to_string(out.protocol);
  j["regime"] = to_string(out.regime);
  j["qA"] = out.qA;
  if (out.qA_interval.present)
    j["qAInterval"] = {out.qA_interval.low, out.qA_interval.high};
  else
    j["qAInterval"] = nullptr;
  j["qB"] = out.qB;
  j["lambdaA"] = out.lambda_A;
  j["lambdaF"] = out.lambda_F;
  j["deltaLambda"] = out.delta_lambda;
  j["exAnteEntryB"] = out.ex_ante_entry_B;
  j["strategicPayoff"] = out.strategic_payoff;
  j["toughPayoff"] = out.tough_payoff;
  j["entrantAEnters"] = out.entrant_a_enters;
  j["fightProb"] = out.overall_fight_prob();
  j["payoffGap"] = incumbent_payoff_gap(out.delta_lambda, out.assessment.payoffs);
  j["thresholds"] = {{"phi", out.thresholds.phi}, {"delta", out.thresholds.delta}};
  if (out.knife_site != KnifeEdgeSite::None) {
    const char* site = out.knife_site == KnifeEdgeSite::AfterFightSignal ? "after-fight-signal"
                       : out.knife_site == KnifeEdgeSite::AfterFightReport
                           ? "after-fight-report"
                           : "after-accommodate-report";
    j["knifeEdge"] = {{"site", site}, {"entryProb", out.knife_entry_prob}};
  } else {
    j["knifeEdge"] = nullptr;
  }
  if (out.noise)
    j["noise"] = {{"epsF", out.noise->false_negative}, {"epsA", out.noise->false_positive}};
  else
    j["noise"] = nullptr;
  return j;
}

CsvTable outcome_table(const EquilibriumOutcome& out) {
  CsvTable t;
  t.header = {"p0",        "pi",          "protocol",     "regime",          "qA",
              "lambdaA",   "lambdaF",     "deltaLambda",  "exAnteEntryB",    "fightProb",
              "strategicPayoff", "toughPayoff", "entrantAEnters"};
  t.rows.push_back({format_number(out.assessment.prior), format_number(out.assessment.spillover),
                    to_string(out.protocol), to_string(out.regime), format_number(out.qA),
                    format_number(out.lambda_A), format_number(out.lambda_F),
                    format_number(out.delta_lambda), format_number(out.ex_ante_entry_B),
                    format_number(out.overall_fight_prob()), format_number(out.strategic_payoff),
                    format_number(out.tough_payoff), out.entrant_a_enters ? "1" : "0"});
  return t;
}

json report_json(const DeviationReport& rep) {
  json j;
  j["pass"] = rep.pass;
  j["maxIncumbentGain"] = rep.max_incumbent_gain;
  j["maxEntrantGain"] = rep.max_entrant_gain;
  j["worstDeviationQ1"] = rep.worst_incumbent_q;
  j["worstDeviationQ2"] = rep.worst_incumbent_q2;
  j["bayesViolations"] = rep.bayes_violations;
  j["conventionsApplied"] = rep.conventions_applied;
  j["tolerance"] = rep.tolerance;
  j["gridResolution"] = rep.grid_resolution;
  return j;
}

double need(const std::optional<Quantity>& q, const char* name) {
  if (!q) throw std::invalid_argument(std::string("missing required field '") + name + "'");
  return q->value;
}

EquilibriumOutcome solve_from_config(const RunConfig& cfg) {
  const Payoffs pay = cfg.payoffs();
  const Cmp<double> cmp = cfg.cmp();
  const double p0 = need(cfg.p0, "model.p0");
  if (cfg.protocol == Protocol::Simultaneous) return solve_simultaneous(p0, pay, cmp);
  const double pi = need(cfg.pi, "model.pi");
  const auto noise = cfg.noise();
  if (noise && !noise->noiseless())
    return solve_sequential_noisy(p0, pi, pay, *noise, cmp, cfg.boundary_selection);
  return solve_sequential(p0, pi, pay, cmp, cfg.boundary_selection);
}

RunResult cmd_solve(const RunConfig& cfg) {
  RunResult res;
  json j;

  if (cfg.k) {
    const auto sol = solve_with_acquisition(need(cfg.p0, "model.p0"), need(cfg.pi, "model.pi"),
                                            cfg.k->value, cfg.payoffs(), cfg.cmp(),
                                            cfg.boundary_selection);
    json cands = json::array();
    for (const auto& c : sol.candidates) {
      json cj;
      cj["acquires"] = c.acquires;
      cj["piEff"] = c.pi_eff;
      cj["kstar"] = c.kstar;
      cj["consistent"] = c.consistent;
      cj["outcome"] = outcome_json(c.outcome);
      cands.push_back(std::move(cj));
    }
    j["acquisition"] = {{"k", cfg.k->value},
                        {"candidates", cands},
                        {"multiple", sol.multiple},
                        {"hasConsistent", sol.has_consistent}};
    if (const auto* sel = sol.selected()) {
      j.update(outcome_json(sel->outcome));
      res.csv = outcome_table(sel->outcome).emit();
    } else {
      res.status = RunStatus::NumericalDegeneracy;
      res.message = "no pure acquisition equilibrium at this k (knife edge)";
    }
    res.json = j.dump(2);
    return res;
  }

  const EquilibriumOutcome out = solve_from_config(cfg);
  j = outcome_json(out);
  if (cfg.do_verify || cfg.force_qa) {
    EquilibriumOutcome cand = out;
    if (cfg.force_qa) {
      cand = make_flat_candidate(out.assessment.prior, out.assessment.spillover,
                                 out.assessment.payoffs, *cfg.force_qa, cfg.noise(), cfg.cmp());
      j["forcedQA"] = *cfg.force_qa;
    }
    const DeviationReport rep = verify_pbe(cand, cfg.verify_tolerance, cfg.verify_resolution);
    j["verify"] = report_json(rep);
    if (!rep.pass) {
      res.status = RunStatus::VerificationFailed;
      res.message = "PBE verification failed";
    }
  }
  res.json = j.dump(2);
  res.csv = outcome_table(out).emit();
  return res;
}

RunResult cmd_regions(const RunConfig& cfg) {
  RunResult res;
  CsvTable table;
  long high_cells = 0;
  double phi, delta;
  if (cfg.rational_mode) {
    const auto pay = cfg.payoffs_rational();
    Cmp<Rational> cmp{};
    const auto rows = region_sweep(pay, cfg.grid_p0, cfg.grid_pi, cmp, cfg.boundary_selection);
    for (const auto& r : rows) high_cells += r.regime == Regime::HighFight ? 1 : 0;
    table = region_table(rows);
    phi = entry_cutoff(pay).to_double();
    delta = deterrence_threshold(pay).to_double();
  } else {
    const auto pay = cfg.payoffs();
    const auto rows = region_sweep(pay, cfg.grid_p0, cfg.grid_pi, cfg.cmp(),
                                   cfg.boundary_selection);
    for (const auto& r : rows) high_cells += r.regime == Regime::HighFight ? 1 : 0;
    table = region_table(rows);
    phi = entry_cutoff(pay);
    delta = deterrence_threshold(pay);
  }
  json j;
  j["grid"] = {{"p0", cfg.grid_p0}, {"pi", cfg.grid_pi}};
  j["rows"] = table.rows.size();
  j["highFightCells"] = high_cells;
  j["phi"] = phi;
  j["delta"] = delta;
  j["rationalMode"] = cfg.rational_mode;
  res.json = j.dump(2);
  res.csv = table.emit();
  return res;
}

RunResult cmd_sweep(const RunConfig& cfg) {
  RunResult res;
  const SweepAxis axis = parse_axis(cfg.axis);
  SweepPointInputs base{};
  base.p0 = need(cfg.p0, "model.p0");
  base.pi = axis == SweepAxis::Pi ? 0.0 : need(cfg.pi, "model.pi");
  base.noise = cfg.noise();
  if (cfg.k) base.k = cfg.k->value;

  const auto result = sweep_1d(axis, cfg.sweep_min.value, cfg.sweep_max.value, cfg.sweep_count,
                               base, cfg.payoffs(), cfg.cmp(), cfg.boundary_selection);
  json j;
  j["axis"] = to_string(axis);
  j["count"] = cfg.sweep_count;
  j["monotonicity"] = result.monotonicity;
  res.json = j.dump(2);
  res.csv = result.table().emit();
  return res;
}

RunResult cmd_simulate(const RunConfig& cfg) {
  RunResult res;
  SimulateConfig sim;
  sim.n_markets = cfg.n_markets;
  sim.t_periods = cfg.t_periods;
  sim.prior = need(cfg.p0, "model.p0");
  sim.spillover = need(cfg.pi, "model.pi");
  sim.payoffs = cfg.payoffs();
  sim.noise = cfg.noise();
  sim.policy = cfg.policy;
  sim.replications = cfg.replications;
  sim.seed = cfg.seed;
  sim.force_first_entry = cfg.force_first_entry;
  sim.random_order = cfg.random_order;
  sim.tolerance = Tolerance{cfg.tolerance};
  sim.boundary_selection = cfg.boundary_selection;

  const SimulationStats stats = simulate(sim);

  // Hazard bound column only where Eq.-style constant accommodation rates
  // apply (CONSTANT policy).
  const bool constant_policy = sim.policy.kind == PolicyKind::Constant;
  std::vector<double> rs(sim.t_periods, sim.policy.accommodate_prob);
  std::vector<int> as(sim.t_periods, 1);

  CsvTable t;
  t.header = {"period",
              "entryFreq",
              "entrySE",
              "fightFreqStrategic",
              "fightSE",
              "policyIntentStrategic",
              "noPublicAccomFreqStrategic",
              "hazardBoundUpper"};
  json per = json::array();
  for (int tt = 1; tt <= sim.t_periods; ++tt) {
    const auto& p = stats.period[tt - 1];
    const double entry = stats.entry_freq(tt);
    const double entry_se = SimulationStats::binomial_se(entry, p.scheduled);
    const double fight = stats.fight_freq_strategic(tt);
    const double fight_se = SimulationStats::binomial_se(fight, p.contested_strategic);
    const double intent = stats.intent_strategic(tt);
    const double nopub = stats.no_public_accom_freq_strategic(tt);
    std::string bound;
    double bound_v = 1.0;
    if (constant_policy) {
      bound_v = hazard_bounds(rs, as, sim.spillover, tt).no_public_upper;
      bound = format_number(bound_v);
    }
    t.rows.push_back({std::to_string(tt), format_number(entry), format_number(entry_se),
                      format_number(fight), format_number(fight_se), format_number(intent),
                      format_number(nopub), bound});
    json pj;
    pj["period"] = tt;
    pj["entryFreq"] = entry;
    pj["entrySE"] = entry_se;
    pj["fightFreqStrategic"] = fight;
    pj["fightSE"] = fight_se;
    pj["policyIntentStrategic"] = intent;
    pj["noPublicAccomFreqStrategic"] = nopub;
    if (constant_policy) pj["hazardBoundUpper"] = bound_v;
    per.push_back(std::move(pj));
  }

  json j;
  j["replications"] = stats.replications;
  j["strategicReplications"] = stats.strategic_replications;
  j["toughReplications"] = stats.tough_replications;
  j["seed"] = sim.seed;
  j["nMarkets"] = sim.n_markets;
  j["tPeriods"] = sim.t_periods;
  j["forceFirstEntry"] = sim.force_first_entry;
  j["incumbentPayoffMean"] = stats.incumbent_payoff_mean;
  j["incumbentPayoffMeanStrategic"] = stats.incumbent_payoff_mean_strategic;
  j["incumbentPayoffMeanTough"] = stats.incumbent_payoff_mean_tough;
  j["anyPublicAccommodation"] = stats.any_public_accommodation;
  j["meanFirstPublicAccommodation"] = stats.mean_first_public_accommodation;
  j["frontloadViolations"] = stats.frontload_violations;
  j["periods"] = per;
  res.json = j.dump(2);
  res.csv = t.emit();
  return res;
}

RunResult cmd_verify(const RunConfig& cfg) {
  RunResult res;
  EquilibriumOutcome cand;
  if (cfg.force_qa) {
    cand = make_flat_candidate(need(cfg.p0, "model.p0"), need(cfg.pi, "model.pi"), cfg.payoffs(),
                               *cfg.force_qa, cfg.noise(), cfg.cmp());
  } else {
    cand = solve_from_config(cfg);
  }
  const DeviationReport rep = verify_pbe(cand, cfg.verify_tolerance, cfg.verify_resolution);
  json j;
  j["candidate"] = outcome_json(cand);
  if (cfg.force_qa) j["forcedQA"] = *cfg.force_qa;
  j["report"] = report_json(rep);
  res.json = j.dump(2);
  if (!rep.pass) {
    res.status = RunStatus::VerificationFailed;
    res.message = "PBE verification failed (max incumbent gain " +
                  format_number(rep.max_incumbent_gain) + ")";
  }
  return res;
}

RunResult cmd_voi(const RunConfig& cfg) {
  RunResult res;
  const Payoffs pay = cfg.payoffs();
  const double p0 = need(cfg.p0, "model.p0");
  const double pi = need(cfg.pi, "model.pi");
  double qA;
  if (cfg.force_qa) {
    qA = *cfg.force_qa;
  } else {
    // Default to the equilibrium fight probability at (p0, pi).
    qA = solve_sequential(p0, pi, pay, cfg.cmp(), cfg.boundary_selection).qA;
  }
  const double k = cfg.k ? cfg.k->value : 0.0;
  AcquisitionProblem prob{k, p0, qA, pi, pay};
  const double voi = value_of_information(prob);
  const bool acq = acquires_signal(prob, cfg.cmp());
  const auto [pf, pa] = action_probabilities(p0, qA);

  json j;
  j["p0"] = p0;
  j["pi"] = pi;
  j["qA"] = qA;
  j["k"] = k;
  j["voi"] = voi;
  j["kstar"] = voi;
  j["acquires"] = acq;
  j["piEff"] = effective_observability(pi, acq);
  j["actionProbs"] = {{"piF", pf}, {"piA", pa}};
  res.json = j.dump(2);

  CsvTable t;
  t.header = {"p0", "pi", "qA", "k", "voi", "kstar", "acquires", "piEff"};
  t.rows.push_back({format_number(p0), format_number(pi), format_number(qA), format_number(k),
                    format_number(voi), format_number(voi), acq ? "1" : "0",
                    format_number(effective_observability(pi, acq))});
  res.csv = t.emit();
  return res;
}

}  // namespace

RunResult run_command(const std::string& command, const std::string& config_json) {
  RunResult res;
  try {
    json doc = config_json.empty() ? json(nullptr) : json::parse(config_json);
    const RunConfig cfg = parse_config(doc);
    if (command == "solve") return cmd_solve(cfg);
    if (command == "regions") return cmd_regions(cfg);
    if (command == "sweep") return cmd_sweep(cfg);
    if (command == "simulate") return cmd_simulate(cfg);
    if (command == "verify") return cmd_verify(cfg);
    if (command == "voi") return cmd_voi(cfg);
    res.status = RunStatus::InvalidConfig;
    res.message = "unknown command '" + command + "'";
  } catch (const degenerate_prior_error& e) {
    res.status = RunStatus::InvalidConfig;
    res.message = e.what();
  } catch (const nlohmann::json::exception& e) {
    res.status = RunStatus::InvalidConfig;
    res.message = std::string("config parse error: ") + e.what();
  } catch (const std::invalid_argument& e) {
    res.status = RunStatus::InvalidConfig;
    res.message = e.what();
  } catch (const std::domain_error& e) {
    res.status = RunStatus::NumericalDegeneracy;
    res.message = e.what();
  } catch (const std::exception& e) {
    res.status = RunStatus::InternalError;
    res.message = e.what();
  }
  return res;
}

}  // namespace chainstore
