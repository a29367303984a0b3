#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kleingate/kinematics.hpp"

namespace kleingate::cli {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kConfigSchemaVersion = 1;

/// Provenance record written next to every output file.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  PhysicalConstants consts{};
  std::optional<std::uint64_t> seed{};
  std::string timestamp;  // ISO 8601 UTC
  std::vector<std::string> outputs;

  static RunManifest start(std::string command);
  nlohmann::ordered_json to_json() const;
};

/// Sidecar path for an output file: `<path>.manifest.json`.
std::string manifest_path(const std::string& output_path);

}  // namespace kleingate::cli
