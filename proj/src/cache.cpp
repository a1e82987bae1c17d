#include "whmf/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "whmf/errors.hpp"

namespace whmf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::optional<json> read_document(const fs::path& p) {
  std::ifstream in(p);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  json doc = json::parse(ss.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("payload") || !doc.contains("checksum") ||
      !doc.contains("key")) {
    return std::nullopt;
  }
  return doc;
}

bool document_valid(const json& doc) {
  return doc["checksum"].is_string() && doc["checksum"].get<std::string>() == hex(fnv1a(doc["payload"].dump()));
}

}  // namespace

std::string artifact_version() {
#ifdef WHMF_VERSION
  return WHMF_VERSION;
#else
  return "dev";
#endif
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string CacheKey::canonical() const {
  return kind + "|N=" + std::to_string(level) + "|k=" + std::to_string(weight) + "|chi=" + chi +
         "|m=" + std::to_string(m) + "|P=" + std::to_string(precision) + "|v=" + version;
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

Cache Cache::from_env() {
  const char* env = std::getenv("WHMF_CACHE_DIR");
  return Cache(env && *env ? fs::path(env) : fs::path(".whmf-cache"));
}

fs::path Cache::path_for(const CacheKey& key) const { return dir_ / (hex(fnv1a(key.canonical())) + ".json"); }

std::optional<json> Cache::load(const CacheKey& key) const {
  auto doc = read_document(path_for(key));
  if (!doc || (*doc)["key"] != key.canonical() || !document_valid(*doc)) return std::nullopt;
  return (*doc)["payload"];
}

void Cache::store(const CacheKey& key, const json& payload) const {
  fs::create_directories(dir_);
  const json doc{{"key", key.canonical()}, {"checksum", hex(fnv1a(payload.dump()))}, {"payload", payload}};
  const fs::path target = path_for(key);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw MathError(ErrorKind::Usage, "cannot write cache entry " + tmp.string());
    out << doc.dump() << '\n';
  }
  fs::rename(tmp, target);
}

std::vector<Cache::Entry> Cache::entries() const {
  std::vector<Entry> out;
  if (!fs::exists(dir_)) return out;
  for (const auto& de : fs::directory_iterator(dir_)) {
    if (de.path().extension() != ".json") continue;
    Entry e;
    e.path = de.path();
    if (auto doc = read_document(de.path())) {
      e.key = (*doc)["key"].is_string() ? (*doc)["key"].get<std::string>() : "";
      e.valid = document_valid(*doc) && de.path().filename() == hex(fnv1a(e.key)) + ".json";
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.path < b.path; });
  return out;
}

int Cache::clear() const {
  int n = 0;
  for (const auto& e : entries()) n += fs::remove(e.path) ? 1 : 0;
  return n;
}

json Cache::get_or_compute(const CacheKey& key, const std::function<json()>& compute) const {
  if (auto hit = load(key)) return *hit;
  json payload = compute();
  store(key, payload);
  return payload;
}

json series_to_json(const QSeries& s) {
  return json{{"valuation", s.valuation()}, {"precision", s.precision()}, {"coefficients", serialize_coeffs(s)}};
}

QSeries series_from_json(const json& j) {
  const auto coeffs = j.at("coefficients").get<std::vector<std::string>>();
  return deserialize_series(j.at("valuation").get<int>(), j.at("precision").get<int>(), coeffs);
}

}  // namespace whmf
