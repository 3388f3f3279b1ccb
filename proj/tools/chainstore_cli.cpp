// Command-line front end. Builds a config JSON document from flags (every
// flag overrides the matching config-file field) and drives the shared
// library through its C API only.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainstore/chainstore.h"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> p0, pi, M, a, c, d, v;
  std::optional<std::string> eps_f, eps_a, k;
  std::optional<std::string> protocol;
  std::optional<std::string> axis, grid;
  std::optional<int> count;
  std::optional<std::string> sweep_min, sweep_max;
  std::optional<int> n_markets, t_periods;
  std::optional<std::string> policy;
  std::optional<long> reps;
  std::optional<std::uint64_t> seed;
  bool force_first_entry = false;
  std::optional<double> force_qa;
  bool verify = false;
  std::optional<double> tolerance;
  bool rational = false;
  std::string format;
  std::string out_path;
};

// Numeric flags are forwarded as strings so exact rational literals like
// "5/7" survive into the config document.
void set_num(json& obj, const char* key, const std::optional<std::string>& val) {
  if (val) obj[key] = *val;
}

json build_config(const CommonFlags& f) {
  json cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + f.config_path);
    in >> cfg;
  }
  set_num(cfg["payoffs"], "M", f.M);
  set_num(cfg["payoffs"], "a", f.a);
  set_num(cfg["payoffs"], "c", f.c);
  set_num(cfg["payoffs"], "d", f.d);
  set_num(cfg["payoffs"], "v", f.v);
  set_num(cfg["model"], "p0", f.p0);
  set_num(cfg["model"], "pi", f.pi);
  if (f.protocol) cfg["model"]["protocol"] = *f.protocol;
  set_num(cfg["noise"], "epsF", f.eps_f);
  set_num(cfg["noise"], "epsA", f.eps_a);
  set_num(cfg["acquisition"], "k", f.k);
  if (f.axis) cfg["sweep"]["axis"] = *f.axis;
  if (f.count) cfg["sweep"]["count"] = *f.count;
  set_num(cfg["sweep"], "min", f.sweep_min);
  set_num(cfg["sweep"], "max", f.sweep_max);
  if (f.grid) cfg["sweep"]["grid"] = *f.grid;
  if (f.n_markets) cfg["simulate"]["nMarkets"] = *f.n_markets;
  if (f.t_periods) cfg["simulate"]["tPeriods"] = *f.t_periods;
  if (f.policy) cfg["simulate"]["policy"] = *f.policy;
  if (f.reps) cfg["simulate"]["replications"] = *f.reps;
  if (f.seed) cfg["simulate"]["seed"] = *f.seed;
  if (f.force_first_entry) cfg["simulate"]["forceFirstEntry"] = true;
  if (f.verify) cfg["verify"]["enabled"] = true;
  if (f.force_qa) cfg["verify"]["forceQA"] = *f.force_qa;
  if (f.tolerance) cfg["numerics"]["tolerance"] = *f.tolerance;
  if (f.rational) cfg["numerics"]["rationalMode"] = true;
  if (!f.format.empty()) cfg["output"]["format"] = f.format;
  if (!f.out_path.empty()) cfg["output"]["path"] = f.out_path;

  // Prune empty sections created by operator[] above.
  for (auto it = cfg.begin(); it != cfg.end();) {
    if (it->is_object() && it->empty())
      it = cfg.erase(it);
    else
      ++it;
  }
  return cfg;
}

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its fields");
  cmd->add_option("--p0", f.p0, "prior probability of the tough type");
  cmd->add_option("--pi", f.pi, "cross-market observability");
  cmd->add_option("--M", f.M, "monopoly payoff");
  cmd->add_option("--a", f.a, "accommodation payoff");
  cmd->add_option("--c", f.c, "fighting cost");
  cmd->add_option("--d", f.d, "entrant loss under fight");
  cmd->add_option("--v", f.v, "entrant gain under accommodation");
  cmd->add_option("--eps-f", f.eps_f, "false negative rate of the cross-market report");
  cmd->add_option("--eps-a", f.eps_a, "false positive rate of the cross-market report");
  cmd->add_option("--k", f.k, "observation cost for the later entrant");
  cmd->add_option("--tolerance", f.tolerance, "absolute comparison tolerance (default 1e-12)");
  cmd->add_flag("--rational", f.rational, "exact rational arithmetic (inputs must be exact)");
  cmd->add_option("--format", f.format, "output format: json|csv");
  cmd->add_option("--out", f.out_path, "write the payload to this path instead of stdout");
}

int emit(const CommonFlags& f, const char* default_format, cs_result* result) {
  const cs_status status = cs_result_status(result);
  const std::string message = cs_result_message(result);
  std::string format = f.format.empty() ? default_format : f.format;

  std::string payload = format == "csv" ? cs_result_csv(result) : cs_result_json(result);
  if (payload.empty()) payload = cs_result_json(result);

  if (!message.empty()) std::cerr << "chainstore: " << message << "\n";
  if (f.out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(f.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "chainstore: cannot write " << f.out_path << "\n";
      cs_result_free(result);
      return 2;
    }
    out << payload;
  }
  cs_result_free(result);
  return static_cast<int>(status);
}

int run(const std::string& command, const CommonFlags& f, const char* default_format) {
  json cfg;
  try {
    cfg = build_config(f);
  } catch (const std::exception& e) {
    std::cerr << "chainstore: " << e.what() << "\n";
    return 2;
  }
  cs_result* result = nullptr;
  cs_run(command.c_str(), cfg.dump().c_str(), &result);
  return emit(f, default_format, result);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chainstore: reputation spillover entry game solver / verifier / simulator"};
  app.require_subcommand(1);

  CommonFlags f;

  auto* solve = app.add_subcommand("solve", "solve one parameter point");
  add_common_flags(solve, f);
  solve->add_option("--protocol", f.protocol, "sequential|simultaneous");
  solve->add_flag("--verify", f.verify, "certify the outcome against the deviation oracle");
  solve->add_option("--force-qa", f.force_qa, "verify a planted candidate with this qA instead");

  auto* regions = app.add_subcommand("regions", "regime map over the (p0, pi) grid");
  add_common_flags(regions, f);
  regions->add_option("--grid", f.grid, "grid size, e.g. 101x101");

  auto* sweep = app.add_subcommand("sweep", "1-D comparative static along an axis");
  add_common_flags(sweep, f);
  sweep->add_option("--axis", f.axis, "pi|p0|epsF|epsA|k");
  sweep->add_option("--count", f.count, "number of grid points");
  sweep->add_option("--min", f.sweep_min, "axis minimum");
  sweep->add_option("--max", f.sweep_max, "axis maximum");

  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo of the N x T extension");
  add_common_flags(simulate, f);
  simulate->add_option("--n-markets", f.n_markets, "number of markets");
  simulate->add_option("--t-periods", f.t_periods, "number of periods");
  simulate->add_option("--policy", f.policy, "threshold | constant=<r>");
  simulate->add_option("--reps", f.reps, "number of replications");
  simulate->add_option("--seed", f.seed, "RNG seed");
  simulate->add_flag("--force-first-entry", f.force_first_entry,
                     "condition period 1 on entry, matching the solver's statistics");

  auto* verify = app.add_subcommand("verify", "certify an equilibrium (or planted candidate)");
  add_common_flags(verify, f);
  verify->add_option("--protocol", f.protocol, "sequential|simultaneous");
  verify->add_option("--force-qa", f.force_qa, "plant a candidate with this qA");

  auto* voi = app.add_subcommand("voi", "value of information / acquisition cutoff");
  add_common_flags(voi, f);
  voi->add_option("--qa", f.force_qa, "evaluate at this qA instead of the equilibrium one");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return run("solve", f, "json");
  if (regions->parsed()) return run("regions", f, "csv");
  if (sweep->parsed()) return run("sweep", f, "csv");
  if (simulate->parsed()) return run("simulate", f, "json");
  if (verify->parsed()) return run("verify", f, "json");
  if (voi->parsed()) return run("voi", f, "json");
  return 2;
}
