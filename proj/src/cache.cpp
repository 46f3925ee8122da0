#include "confstab/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "confstab/graph_io.hpp"

namespace confstab {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string cache_key(const nlohmann::json& inputs, const std::string& version) {
  const nlohmann::json payload = {{"inputs", inputs}, {"version", version}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_canonical_string(payload))));
  return buf;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<std::filesystem::path> ResultCache::resolve_dir(const std::string& option) {
  if (!option.empty()) return std::filesystem::path(option);
  if (const char* env = std::getenv("CONFSTAB_CACHE_DIR"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

std::filesystem::path ResultCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<nlohmann::json> ResultCache::get(const std::string& key, std::vector<std::string>& warnings) const {
  const auto path = path_for(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto entry = nlohmann::json::parse(text.str(), nullptr, false);
  if (entry.is_discarded() || !entry.is_object() || entry.value("key", "") != key || !entry.contains("report")) {
    warnings.push_back("corrupt cache entry " + path.string() + "; recomputing");
    return std::nullopt;
  }
  return std::optional<nlohmann::json>(std::in_place, entry["report"]);
}

void ResultCache::put(const std::string& key, const nlohmann::json& report) const {
  std::filesystem::create_directories(dir_);
  const auto path = path_for(key);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << to_canonical_string({{"key", key}, {"report", report}}) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace confstab
