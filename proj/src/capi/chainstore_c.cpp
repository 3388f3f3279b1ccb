#include "chainstore/chainstore.h"

#include <new>
#include <string>

#include "core/acquisition.hpp"
#include "core/run.hpp"

struct cs_result {
  cs_status status = CS_OK;
  std::string message;
  std::string json;
  std::string csv;
};

namespace {

template <typename F>
cs_status guarded(F&& fn) {
  try {
    return fn();
  } catch (const chainstore::degenerate_prior_error&) {
    return CS_INVALID_CONFIG;
  } catch (const std::invalid_argument&) {
    return CS_INVALID_CONFIG;
  } catch (const std::domain_error&) {
    return CS_NUMERICAL_DEGENERACY;
  } catch (...) {
    return CS_INTERNAL_ERROR;
  }
}

}  // namespace

extern "C" {

cs_status cs_run(const char* command, const char* config_json, cs_result** out) {
  if (!out) return CS_INVALID_CONFIG;
  *out = nullptr;
  auto* result = new (std::nothrow) cs_result;
  if (!result) return CS_INTERNAL_ERROR;
  if (!command) {
    result->status = CS_INVALID_CONFIG;
    result->message = "null command";
    *out = result;
    return result->status;
  }
  const chainstore::RunResult r =
      chainstore::run_command(command, config_json ? config_json : "");
  result->status = static_cast<cs_status>(static_cast<int>(r.status));
  result->message = r.message;
  result->json = r.json;
  result->csv = r.csv;
  *out = result;
  return result->status;
}

const char* cs_result_json(const cs_result* result) { return result ? result->json.c_str() : ""; }
const char* cs_result_csv(const cs_result* result) { return result ? result->csv.c_str() : ""; }
const char* cs_result_message(const cs_result* result) {
  return result ? result->message.c_str() : "";
}
cs_status cs_result_status(const cs_result* result) {
  return result ? result->status : CS_INVALID_CONFIG;
}
void cs_result_free(cs_result* result) { delete result; }

cs_status cs_entry_cutoff(double v, double d, double* out) {
  if (!out) return CS_INVALID_CONFIG;
  return guarded([&] {
    chainstore::Payoffs pay = chainstore::default_payoffs();
    pay.entry_gain = v;
    pay.entry_loss = d;
    *out = chainstore::entry_cutoff(pay);
    return CS_OK;
  });
}

cs_status cs_deterrence_threshold(double M, double a, double c, double* out) {
  if (!out) return CS_INVALID_CONFIG;
  return guarded([&] {
    chainstore::Payoffs pay = chainstore::default_payoffs();
    pay.monopoly = M;
    pay.accommodate = a;
    pay.fight_cost = c;
    *out = chainstore::deterrence_threshold(pay);
    return CS_OK;
  });
}

cs_status cs_posterior_after_fight(double p0, double qA, double* out) {
  if (!out) return CS_INVALID_CONFIG;
  return guarded([&] {
    chainstore::require_probability(p0, "p0");
    chainstore::require_probability(qA, "qA");
    *out = chainstore::posterior_after_fight(p0, qA).value;
    return CS_OK;
  });
}

cs_status cs_value_of_information(double p0, double qA, double pi, double v, double d,
                                  double* out) {
  if (!out) return CS_INVALID_CONFIG;
  return guarded([&] {
    chainstore::Payoffs pay = chainstore::default_payoffs();
    pay.entry_gain = v;
    pay.entry_loss = d;
    chainstore::AcquisitionProblem prob{0.0, p0, qA, pi, pay};
    *out = chainstore::value_of_information(prob);
    return CS_OK;
  });
}

cs_status cs_solve_sequential(double p0, double pi, double M, double a, double c, double d,
                              double v, cs_outcome* out) {
  if (!out) return CS_INVALID_CONFIG;
  return guarded([&] {
    const chainstore::Payoffs pay{M, a, c, d, v};
    const auto eq = chainstore::solve_sequential(p0, pi, pay);
    out->regime = static_cast<int>(eq.regime);
    out->qA = eq.qA;
    out->has_interval = eq.qA_interval.present ? 1 : 0;
    out->qA_interval_low = eq.qA_interval.low;
    out->qA_interval_high = eq.qA_interval.high;
    out->lambda_A = eq.lambda_A;
    out->lambda_F = eq.lambda_F;
    out->delta_lambda = eq.delta_lambda;
    out->ex_ante_entry_B = eq.ex_ante_entry_B;
    out->strategic_payoff = eq.strategic_payoff;
    out->tough_payoff = eq.tough_payoff;
    out->entrant_A_enters = eq.entrant_a_enters ? 1 : 0;
    out->knife_entry_prob = eq.knife_site == chainstore::KnifeEdgeSite::None
                                ? 1.0
                                : eq.knife_entry_prob;
    out->phi = eq.thresholds.phi;
    out->delta = eq.thresholds.delta;
    return CS_OK;
  });
}

const char* cs_version(void) { return "chainstore 1.0.0"; }

}  // extern "C"
