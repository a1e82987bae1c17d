#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "whmf/series.hpp"

namespace whmf {

std::string artifact_version();

std::uint64_t fnv1a(std::string_view bytes);

struct CacheKey {
  std::string kind;  // delta, eisenstein-plus, j, f
  int level = 0;
  int weight = 0;
  std::string chi;
  int m = 0;
  int precision = 0;
  std::string version = artifact_version();

  std::string canonical() const;
};

// On-disk store of primary objects. Entries are JSON documents written by
// atomic rename; an entry whose key or checksum does not match is ignored
// and overwritten on the next store.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);
  // WHMF_CACHE_DIR, or ./.whmf-cache.
  static Cache from_env();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const CacheKey& key) const;

  std::optional<nlohmann::json> load(const CacheKey& key) const;
  void store(const CacheKey& key, const nlohmann::json& payload) const;

  struct Entry {
    std::string key;
    std::filesystem::path path;
    bool valid = false;
  };
  std::vector<Entry> entries() const;
  int clear() const;

  // Loads the payload or computes and stores it.
  nlohmann::json get_or_compute(const CacheKey& key, const std::function<nlohmann::json()>& compute) const;

 private:
  std::filesystem::path dir_;
};

nlohmann::json series_to_json(const QSeries& s);
QSeries series_from_json(const nlohmann::json& j);

}  // namespace whmf
