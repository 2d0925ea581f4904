#include "toric/settings.hpp"

#include "toric/io.hpp"
#include "toric_tool/defaults.hpp"

namespace toric_tool {

namespace {

template <class T>
void read(const nlohmann::json& j, const char* section, const char* key, T& target) {
  if (!j.contains(section)) return;
  const auto& s = j.at(section);
  if (s.contains(key)) target = s.at(key).get<T>();
}

}  // namespace

Settings load_settings(const std::string& config_path) {
  auto j = config_path.empty() ? toric::io::parse_text(kDefaultsJson, "built-in defaults")
                               : toric::io::read_file(config_path);
  Settings s;
  try {
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    read(j, "grid", "points", s.grid_points);
    read(j, "grid", "lift_points", s.lift_points);
    read(j, "tolerances", "root", s.calabi.root);
    read(j, "tolerances", "gamma", s.calabi.gamma);
    read(j, "tolerances", "curvature", s.calabi.curvature);
    read(j, "tolerances", "lift_curvature", s.calabi.lift_curvature);
    read(j, "tolerances", "equivalence", s.calabi.equivalence);
    read(j, "tolerances", "einstein", s.einstein_tolerance);
    read(j, "curvature", "relative_step", s.curvature.relative_step);
    read(j, "curvature", "max_shrinks", s.curvature.max_shrinks);
    read(j, "curvature", "richardson", s.curvature.richardson);
    if (j.contains("a_grid")) s.calabi.a_grid = j.at("a_grid").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw toric::io::ParseError(std::string("configuration: ") + e.what());
  }
  s.calabi.grid_points = s.grid_points;
  s.calabi.lift_points = s.lift_points;
  return s;
}

nlohmann::json Settings::to_json() const {
  return {{"seed", seed},
          {"grid", {{"points", grid_points}, {"lift_points", lift_points}}},
          {"tolerances",
           {{"root", calabi.root},
            {"gamma", calabi.gamma},
            {"curvature", calabi.curvature},
            {"lift_curvature", calabi.lift_curvature},
            {"equivalence", calabi.equivalence},
            {"einstein", einstein_tolerance}}},
          {"curvature",
           {{"relative_step", curvature.relative_step},
            {"max_shrinks", curvature.max_shrinks},
            {"richardson", curvature.richardson}}},
          {"a_grid", calabi.a_grid}};
}

}  // namespace toric_tool
