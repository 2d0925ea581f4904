#include "toric/manifest.hpp"

#include "toric/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace toric_tool {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

RunManifest::RunManifest(std::string command, std::vector<std::string> arguments, nlohmann::json config)
    : command_(std::move(command)), arguments_(std::move(arguments)), config_(std::move(config)) {}

void RunManifest::add_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  inputs_.push_back({{"path", path}, {"sha256", sha256_hex(bytes)}});
  digest_.clear();
}

nlohmann::json RunManifest::header() const {
  return {{"command", command_},
          {"arguments", arguments_},
          {"inputs", inputs_},
          {"config", config_},
          {"tool_version", TORIC_VERSION}};
}

const std::string& RunManifest::digest() {
  if (digest_.empty()) digest_ = sha256_hex(toric::io::dump(header(), -1));
  return digest_;
}

void RunManifest::write_output(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  out.close();
  outputs_.push_back({{"path", path}, {"sha256", sha256_hex(content)}});
}

void RunManifest::finish(const std::string& primary_output) const {
  auto j = header();
  j["digest"] = sha256_hex(toric::io::dump(header(), -1));
  j["outputs"] = outputs_;
  std::ofstream out(primary_output + ".manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest for " + primary_output);
  out << toric::io::dump(j) << '\n';
}

}  // namespace toric_tool
