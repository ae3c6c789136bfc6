#include "icregion/manifest.hpp"

#include <fmt/format.h>

#include <chrono>
#include <ctime>

#include "json.hpp"

namespace icr {

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& in : inputs)
    j["inputs"].push_back({{"name", in.name}, {"fnv1a64", fmt::format("{:016x}", in.hash)}});
  if (seed) j["seed"] = *seed;
  j["version"] = version;
  if (wall_time) j["wall_time"] = *wall_time;
  return j.dump();
}

std::string RunManifest::to_comment(const std::string& prefix) const {
  std::string out = prefix + "command: " + command + "\n";
  for (const auto& in : inputs) out += fmt::format("{}input: {} fnv1a64={:016x}\n", prefix, in.name, in.hash);
  if (seed) out += fmt::format("{}seed: {}\n", prefix, *seed);
  out += prefix + "version: " + version + "\n";
  if (wall_time) out += prefix + "wall_time: " + *wall_time + "\n";
  return out;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace icr
