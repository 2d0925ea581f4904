#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace toric_tool {

std::string sha256_hex(const std::string& bytes);

/// Records what a run read and wrote. The digest covers command, arguments,
/// input digests, configuration and version; every output embeds it.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> arguments, nlohmann::json config);

  void add_input(const std::string& path);
  const std::string& digest();

  /// Writes `content` to `path` and records its SHA-256.
  void write_output(const std::string& path, const std::string& content);
  /// Writes <primary>.manifest.json.
  void finish(const std::string& primary_output) const;

 private:
  nlohmann::json header() const;

  std::string command_;
  std::vector<std::string> arguments_;
  nlohmann::json config_;
  nlohmann::json inputs_ = nlohmann::json::array();
  nlohmann::json outputs_ = nlohmann::json::array();
  std::string digest_;
};

}  // namespace toric_tool
