#pragma once

#include <limits>
#include <string>

#include "json.hpp"

namespace drawstring {

// One top-level configuration for the CLI; flags override file values.
struct RunConfig {
  std::string command;
  std::string preset = "flat-torus";
  double eps = 0.01;
  double v0_const = -1.0;
  double c_pull = std::numeric_limits<double>::infinity();
  int resolution = 64;
  std::string output_dir = "out";
  long seed = 0;
  int steps = 200;
  double mass = 0.1;
  double delta = 0.0;
  double desk_r1 = 0.0;  // 0 = lemma-certified selection
  double k_const = 1.0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["preset"] = preset;
    j["eps"] = eps;
    j["v0_const"] = v0_const;
    j["c_pull"] = std::isinf(c_pull) ? "inf" : nlohmann::json(c_pull);
    j["resolution"] = resolution;
    j["output_dir"] = output_dir;
    j["seed"] = seed;
    j["steps"] = steps;
    j["mass"] = mass;
    j["delta"] = delta;
    j["desk_r1"] = desk_r1;
    j["k_const"] = k_const;
    return j;
  }

  static RunConfig from_json(const nlohmann::json& j) {
    RunConfig c;
    const auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("command", c.command);
    get("preset", c.preset);
    get("eps", c.eps);
    get("v0_const", c.v0_const);
    if (j.contains("c_pull")) {
      if (j.at("c_pull").is_string())
        c.c_pull = std::numeric_limits<double>::infinity();
      else
        c.c_pull = j.at("c_pull").get<double>();
    }
    get("resolution", c.resolution);
    get("output_dir", c.output_dir);
    get("seed", c.seed);
    get("steps", c.steps);
    get("mass", c.mass);
    get("delta", c.delta);
    get("desk_r1", c.desk_r1);
    get("k_const", c.k_const);
    return c;
  }
};

}  // namespace drawstring
