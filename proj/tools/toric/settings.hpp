#pragma once

#include "toric/calabi.hpp"
#include "toric/curvature.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace toric_tool {

/// Run configuration: the shipped defaults file, optionally replaced by
/// --config, then overridden by individual flags.
struct Settings {
  std::uint64_t seed = 0;
  std::size_t grid_points = 100;
  std::size_t lift_points = 50;
  double einstein_tolerance = 1e-4;
  toric::calabi::Tolerances calabi;
  toric::CurvatureOptions curvature;

  nlohmann::json to_json() const;
};

Settings load_settings(const std::string& config_path);

}  // namespace toric_tool
