#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac/spectrum.hpp"

namespace dirac {

struct Tolerances {
  double trace_tol = 1e-6;
  double newton_tol = 1e-10;
  double richardson_tol = 1e-9;
  double symmetry_tol = kDefaultSymmetryTol;
};

struct Outputs {
  bool csv = true, json = true, svg = true;
};

struct RunConfig {
  PeriodicPotential potential = PeriodicPotential::constant(0.0, 0.0);
  nlohmann::ordered_json potential_json;  // as read, echoed into reports
  std::vector<double> h_list;
  Window window{-3.0, 3.0, -1.0, 1.0};
  int nx = 64, ny = 64;
  double delta = 0.3;
  Tolerances tol;
  IntegratorConfig integrator;
  Outputs outputs;
  std::string out_dir = ".";
  unsigned threads = 0;

  TraceOptions trace_options() const;
};

inline constexpr int kSchemaVersion = 1;

// Throws ConfigError with a message naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

PeriodicPotential parse_potential(const nlohmann::json& spec);

}  // namespace dirac
