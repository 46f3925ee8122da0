#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace confstab {

/// Bumped whenever results could change; part of every cache key.
inline constexpr const char* kCodeVersion = "confstab-1.0.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

/// Hex digest of the canonical serialization of `inputs` together with `version`.
/// Vertex ids are taken literally: isomorphic graphs with different ids get different keys.
std::string cache_key(const nlohmann::json& inputs, const std::string& version = kCodeVersion);

/// Content-addressed report store, one JSON file per key.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  /// Cache directory from the explicit option, else $CONFSTAB_CACHE_DIR, else none.
  static std::optional<std::filesystem::path> resolve_dir(const std::string& option);

  /// nullopt on a miss. A corrupt entry counts as a miss and adds a warning.
  std::optional<nlohmann::json> get(const std::string& key, std::vector<std::string>& warnings) const;
  void put(const std::string& key, const nlohmann::json& report) const;

  [[nodiscard]] std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace confstab
