#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "thopf/pde_sim.hpp"

namespace thopf::cli {

struct SweepConfig {
  std::array<double, 2> r_range{0.0, 0.0};
  std::array<double, 2> tau_range{0.0, 0.0};
  std::array<int, 2> grid{0, 0}; // points along r, along tau
  /// Also simulate every grid point and record the diagnostic label.
  bool simulate = false;
  /// Samples per Hopf curve.
  int curve_samples = 101;
};

struct OutputConfig {
  std::string dir = ".";
  std::vector<std::string> formats{"json"};
};

struct RunConfig {
  ModelParams model;
  SimConfig sim;
  InitialCondition init;
  std::optional<SweepConfig> sweep;
  OutputConfig output;
  int k_max = 3;
  double mixed_rel = 0.05;
  bool tracked_eps = true;
  std::optional<double> alpha1;
  std::optional<double> alpha2;
};

/// Throws Error(invalid_argument) on unknown keys, missing model fields or
/// values of the wrong type.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const SimConfig& cfg, const InitialCondition& init);

} // namespace thopf::cli
