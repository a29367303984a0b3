#include "kleingate/cli/manifest.hpp"

#include <chrono>
#include <ctime>

#include "kleingate/units.hpp"

namespace kleingate::cli {

RunManifest RunManifest::start(std::string command) {
  RunManifest m;
  m.command = std::move(command);
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  m.timestamp = buf;
  return m;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "kleingate";
  j["version"] = kToolVersion;
  j["schema_version"] = kConfigSchemaVersion;
  j["command"] = command;
  j["config"] = config;
  j["constants"] = {
      {"hbar_vF_eVA", consts.hbar_vf},
      {"coulomb_eVA", units::kCoulombEvAngstrom},
      {"pi_orbital_extent_A", units::kPiOrbitalExtent},
      {"inelastic_length_A", units::kInelasticLength},
  };
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  j["timestamp"] = timestamp;
  j["outputs"] = outputs;
  return j;
}

std::string manifest_path(const std::string& output_path) {
  return output_path + ".manifest.json";
}

}  // namespace kleingate::cli
