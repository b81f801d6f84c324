#pragma once

// Scenario files are JSON documents:
//
//   {
//     "name": "...",
//     "model":  { "r": 1, "K": 5.19.., "q": 0.19.., "P": 1, "C": 0.19.. },
//     "initial_biomass": 2.5,                                   (optional, K/2)
//     "solver": { "tol": 1e-9, "max_iter": 10000, "damping": 0.5,
//                 "init": [0, 0] },                             (optional)
//     "output": { "format": "json", "path": "out.json" },       (optional)
//     "sweep":  { "parameter": "C", "start": 0.1, "stop": 0.3,
//                 "steps": 5, "metrics": ["nash", "h_total"] }  (optional)
//   }

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fishgame/game.hpp"
#include "fishgame/params.hpp"

namespace fishgame {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  OutputFormat format = OutputFormat::Json;
  std::string path;  // empty: stdout
};

struct SweepSpec {
  std::string parameter;  // r, K, q, P or C
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;
  std::vector<std::string> metrics{"nash", "h_total", "waste", "coop_gain"};

  static const std::vector<std::string>& known_metrics() {
    static const std::vector<std::string> m{"nash", "h_total", "waste", "coop_gain"};
    return m;
  }
};

struct ScenarioConfig {
  std::string name;
  ModelParams params = ModelParams::reference_scenario();
  double initial_biomass = 0.0;
  SolverOptions solver;
  OutputSpec output;
  std::optional<SweepSpec> sweep;
};

namespace detail {

inline double required_number(const nlohmann::json& obj, const std::string& section,
                              const std::string& key, bool positive) {
  const std::string field = section + "." + key;
  if (!obj.contains(key)) throw ConfigError("missing required field '" + field + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("field '" + field + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("field '" + field + "' must be finite");
  if (positive && !(x > 0.0)) throw ConfigError("field '" + field + "' must be > 0");
  return x;
}

inline double optional_number(const nlohmann::json& obj, const std::string& section,
                              const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("field '" + section + "." + key + "' must be a number");
  return v.get<double>();
}

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

}  // namespace detail

inline ScenarioConfig parse_scenario(const nlohmann::json& doc) {
  using detail::optional_number;
  using detail::required_number;
  if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
  if (!doc.contains("model") || !doc.at("model").is_object())
    throw ConfigError("missing required section 'model'");

  ScenarioConfig cfg;
  cfg.name = doc.value("name", std::string{});
  const auto& m = doc.at("model");
  cfg.params = ModelParams(required_number(m, "model", "r", true),
                           required_number(m, "model", "K", true),
                           required_number(m, "model", "q", true),
                           required_number(m, "model", "P", true),
                           required_number(m, "model", "C", true));

  cfg.initial_biomass = cfg.params.K() / 2.0;
  if (doc.contains("initial_biomass")) {
    cfg.initial_biomass = optional_number(doc, "scenario", "initial_biomass", 0.0);
    if (!(cfg.initial_biomass >= 0.0))
      throw ConfigError("field 'initial_biomass' must be >= 0");
  }

  if (doc.contains("solver")) {
    const auto& s = doc.at("solver");
    if (!s.is_object()) throw ConfigError("section 'solver' must be an object");
    cfg.solver.tol = optional_number(s, "solver", "tol", cfg.solver.tol);
    cfg.solver.damping = optional_number(s, "solver", "damping", cfg.solver.damping);
    cfg.solver.max_iter = static_cast<int>(
        optional_number(s, "solver", "max_iter", cfg.solver.max_iter));
    if (!(cfg.solver.tol > 0.0)) throw ConfigError("field 'solver.tol' must be > 0");
    if (!(cfg.solver.damping > 0.0 && cfg.solver.damping <= 1.0))
      throw ConfigError("field 'solver.damping' must lie in (0, 1]");
    if (cfg.solver.max_iter < 1) throw ConfigError("field 'solver.max_iter' must be >= 1");
    if (s.contains("init")) {
      const auto& init = s.at("init");
      if (!init.is_array() || init.size() != 2 || !init[0].is_number() || !init[1].is_number())
        throw ConfigError("field 'solver.init' must be a pair of numbers");
      try {
        cfg.solver.init = EffortProfile(init[0].get<double>(), init[1].get<double>());
      } catch (const DomainError& e) {
        throw ConfigError(std::string("field 'solver.init': ") + e.what());
      }
    }
  }

  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    if (!o.is_object()) throw ConfigError("section 'output' must be an object");
    if (o.contains("format")) cfg.output.format = detail::parse_format(o.at("format").get<std::string>());
    cfg.output.path = o.value("path", std::string{});
  }

  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    if (!s.is_object()) throw ConfigError("section 'sweep' must be an object");
    SweepSpec sw;
    if (!s.contains("parameter") || !s.at("parameter").is_string())
      throw ConfigError("missing required field 'sweep.parameter'");
    sw.parameter = s.at("parameter").get<std::string>();
    if (sw.parameter != "r" && sw.parameter != "K" && sw.parameter != "q" &&
        sw.parameter != "P" && sw.parameter != "C")
      throw ConfigError("field 'sweep.parameter' must be one of r, K, q, P, C");
    sw.start = required_number(s, "sweep", "start", false);
    sw.stop = required_number(s, "sweep", "stop", false);
    sw.steps = static_cast<int>(required_number(s, "sweep", "steps", true));
    if (!(sw.start < sw.stop)) throw ConfigError("field 'sweep.start' must be < 'sweep.stop'");
    if (sw.steps < 2) throw ConfigError("field 'sweep.steps' must be >= 2");
    if (s.contains("metrics")) {
      sw.metrics.clear();
      for (const auto& v : s.at("metrics")) {
        const auto name = v.get<std::string>();
        const auto& known = SweepSpec::known_metrics();
        if (std::find(known.begin(), known.end(), name) == known.end())
          throw ConfigError("unknown metric '" + name + "' in 'sweep.metrics'");
        sw.metrics.push_back(name);
      }
    }
    cfg.sweep = sw;
  }
  return cfg;
}

inline ScenarioConfig parse_scenario_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed scenario file: ") + e.what());
  }
  try {
    return parse_scenario(doc);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid model parameters: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
}

inline ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

inline nlohmann::ordered_json params_to_json(const ModelParams& p) {
  nlohmann::ordered_json j;
  j["r"] = p.r();
  j["K"] = p.K();
  j["q"] = p.q();
  j["P"] = p.P();
  j["C"] = p.C();
  return j;
}

}  // namespace fishgame
