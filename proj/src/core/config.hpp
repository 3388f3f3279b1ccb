#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "core/multimarket.hpp"

namespace chainstore {

/// A numeric input carried in both binary and, when the source text allows it,
/// exact rational form. Rational mode requires the exact form.
struct Quantity {
  double value = 0.0;
  std::optional<Rational> exact{};

  static Quantity from_exact(const std::string& text) {
    Rational r = Rational::parse(text);
    return Quantity{r.to_double(), r};
  }
  const Rational& require_exact(const char* name) const {
    if (!exact)
      throw std::invalid_argument(std::string("rational mode requires an exact value for '") +
                                  name + "' (pass it as a string, e.g. \"3/10\" or \"0.30\")");
    return *exact;
  }
};

struct RunConfig {
  // payoffs (defaults: M=1, a=0.30, c=0.20, v=1, d=1)
  Quantity M = Quantity::from_exact("1");
  Quantity a = Quantity::from_exact("0.30");
  Quantity c = Quantity::from_exact("0.20");
  Quantity d = Quantity::from_exact("1");
  Quantity v = Quantity::from_exact("1");

  // model
  std::optional<Quantity> p0{};
  std::optional<Quantity> pi{};
  Protocol protocol = Protocol::Sequential;

  // extensions
  std::optional<Quantity> eps_f{};
  std::optional<Quantity> eps_a{};
  std::optional<Quantity> k{};

  // sweep / regions
  std::string axis = "pi";
  int sweep_count = 101;
  Quantity sweep_min = Quantity::from_exact("0");
  Quantity sweep_max = Quantity::from_exact("1");
  int grid_p0 = 101;
  int grid_pi = 101;

  // simulate
  int n_markets = 2;
  int t_periods = 2;
  PolicySpec policy{PolicyKind::Threshold, 0.5};
  long replications = 10000;
  std::uint64_t seed = 1;
  bool force_first_entry = false;
  bool random_order = false;

  // verify
  bool do_verify = false;
  std::optional<double> force_qa{};
  double verify_tolerance = 1e-9;
  int verify_resolution = 1001;

  // output
  std::string format{};  // "json" | "csv"; empty picks the command default
  std::string out_path{};

  // numerics
  double tolerance = 1e-12;
  bool rational_mode = false;
  double boundary_selection = 0.5;

  Payoffs payoffs() const {
    Payoffs p{M.value, a.value, c.value, d.value, v.value};
    p.validate();
    return p;
  }
  PayoffsT<Rational> payoffs_rational() const {
    PayoffsT<Rational> p{M.require_exact("M"), a.require_exact("a"), c.require_exact("c"),
                         d.require_exact("d"), v.require_exact("v")};
    p.validate();
    return p;
  }
  Cmp<double> cmp() const { return Cmp<double>{Tolerance{tolerance}}; }
  std::optional<Noise> noise() const {
    if (!eps_f && !eps_a) return std::nullopt;
    Noise n{eps_f ? eps_f->value : 0.0, eps_a ? eps_a->value : 0.0};
    n.validate();
    return n;
  }
};

/// Parses a config JSON document (possibly empty) into a RunConfig. Numeric
/// leaves accept JSON numbers or strings ("5/7", "0.30"); strings are kept in
/// exact form for rational mode.
RunConfig parse_config(const nlohmann::json& doc);

}  // namespace chainstore
