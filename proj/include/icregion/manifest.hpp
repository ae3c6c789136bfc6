#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace icr {

inline constexpr const char* kToolVersion = "0.1.0";

struct ManifestInput {
  std::string name;  // path or builtin reference
  std::uint64_t hash = 0;
};

// Provenance block embedded in every CLI artifact. Wall time is recorded only
// when requested, so default artifacts stay byte-identical across runs.
struct RunManifest {
  std::string command;
  std::vector<ManifestInput> inputs;
  std::optional<std::uint64_t> seed;
  std::string version = kToolVersion;
  std::optional<std::string> wall_time;

  std::string to_json() const;
  // Each line prefixed with `prefix`, e.g. "# " for text and CSV.
  std::string to_comment(const std::string& prefix) const;
};

// ISO-8601 UTC timestamp of now.
std::string utc_now();

}  // namespace icr
