#include "core/config.hpp"

namespace chainstore {

namespace {

Quantity parse_quantity(const nlohmann::json& j, const char* name) {
  if (j.is_string()) return Quantity::from_exact(j.get<std::string>());
  if (j.is_number_integer())
    return Quantity{static_cast<double>(j.get<long long>()), Rational(j.get<long long>())};
  if (j.is_number()) return Quantity{j.get<double>(), std::nullopt};
  throw std::invalid_argument(std::string("config field '") + name + "' must be numeric");
}

template <typename T>
void read_if(const nlohmann::json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

void read_quantity_if(const nlohmann::json& obj, const char* key, Quantity& out) {
  if (obj.contains(key)) out = parse_quantity(obj.at(key), key);
}

void read_opt_quantity_if(const nlohmann::json& obj, const char* key,
                          std::optional<Quantity>& out) {
  if (obj.contains(key)) out = parse_quantity(obj.at(key), key);
}

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
  RunConfig cfg;
  if (doc.is_null()) return cfg;
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

  if (doc.contains("payoffs")) {
    const auto& p = doc.at("payoffs");
    read_quantity_if(p, "M", cfg.M);
    read_quantity_if(p, "a", cfg.a);
    read_quantity_if(p, "c", cfg.c);
    read_quantity_if(p, "d", cfg.d);
    read_quantity_if(p, "v", cfg.v);
  }
  if (doc.contains("model")) {
    const auto& m = doc.at("model");
    read_opt_quantity_if(m, "p0", cfg.p0);
    read_opt_quantity_if(m, "pi", cfg.pi);
    if (m.contains("protocol")) {
      const std::string proto = m.at("protocol").get<std::string>();
      if (proto == "sequential")
        cfg.protocol = Protocol::Sequential;
      else if (proto == "simultaneous")
        cfg.protocol = Protocol::Simultaneous;
      else
        throw std::invalid_argument("model.protocol must be sequential|simultaneous");
    }
  }
  if (doc.contains("noise")) {
    const auto& n = doc.at("noise");
    read_opt_quantity_if(n, "epsF", cfg.eps_f);
    read_opt_quantity_if(n, "epsA", cfg.eps_a);
  }
  if (doc.contains("acquisition")) {
    read_opt_quantity_if(doc.at("acquisition"), "k", cfg.k);
  }
  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    read_if(s, "axis", cfg.axis);
    read_if(s, "count", cfg.sweep_count);
    read_quantity_if(s, "min", cfg.sweep_min);
    read_quantity_if(s, "max", cfg.sweep_max);
    if (s.contains("grid")) {
      const std::string g = s.at("grid").get<std::string>();
      const auto x = g.find('x');
      if (x == std::string::npos) throw std::invalid_argument("sweep.grid must look like 101x101");
      cfg.grid_p0 = std::stoi(g.substr(0, x));
      cfg.grid_pi = std::stoi(g.substr(x + 1));
    }
  }
  if (doc.contains("simulate")) {
    const auto& s = doc.at("simulate");
    read_if(s, "nMarkets", cfg.n_markets);
    read_if(s, "tPeriods", cfg.t_periods);
    read_if(s, "replications", cfg.replications);
    if (s.contains("seed")) cfg.seed = s.at("seed").get<std::uint64_t>();
    read_if(s, "forceFirstEntry", cfg.force_first_entry);
    read_if(s, "randomOrder", cfg.random_order);
    if (s.contains("policy")) {
      const std::string p = s.at("policy").get<std::string>();
      if (p == "threshold") {
        cfg.policy.kind = PolicyKind::Threshold;
      } else if (p.rfind("constant", 0) == 0) {
        cfg.policy.kind = PolicyKind::Constant;
        const auto eqpos = p.find('=');
        if (eqpos != std::string::npos)
          cfg.policy.accommodate_prob = std::stod(p.substr(eqpos + 1));
      } else {
        throw std::invalid_argument("simulate.policy must be threshold|constant=<r>");
      }
    }
    if (s.contains("policyR")) cfg.policy.accommodate_prob = s.at("policyR").get<double>();
  }
  if (doc.contains("verify")) {
    const auto& v = doc.at("verify");
    read_if(v, "enabled", cfg.do_verify);
    if (v.contains("forceQA")) cfg.force_qa = v.at("forceQA").get<double>();
    read_if(v, "tolerance", cfg.verify_tolerance);
    read_if(v, "gridResolution", cfg.verify_resolution);
  }
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    read_if(o, "format", cfg.format);
    read_if(o, "path", cfg.out_path);
  }
  if (doc.contains("numerics")) {
    const auto& n = doc.at("numerics");
    read_if(n, "tolerance", cfg.tolerance);
    read_if(n, "rationalMode", cfg.rational_mode);
    read_if(n, "boundarySelection", cfg.boundary_selection);
  }
  return cfg;
}

}  // namespace chainstore
