#pragma once

#include <string>

#include "leafflow/family.hpp"

namespace leafflow {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tool configuration, read from a single JSON document. Unknown keys are
// rejected so that typos fail loudly.
struct Config {
  FamilySpec family = FamilySpec::linear();
  Interval z_interval;
  double eps_f = 1e-9;
  double eps_axis = 1e-9;
  double eps_red = 1e-6;
  double casimir_tol = 1e-8;
  double rtol = 1e-10;
  double atol = 1e-12;
  std::string output_dir = ".";

  Family build() const { return build_family(family, z_interval); }
};

Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);
std::string config_to_json(const Config& cfg);

}  // namespace leafflow
