#pragma once

#include <openssl/evp.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <unistd.h>

#include "hecke/io/config.hpp"
#include "hecke/io/table.hpp"
#include "hecke/p_canonical.hpp"

namespace hecke::io {

// Bumping this invalidates every existing cache entry.
inline constexpr const char* kCodeVersion = "hecke-1";

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

struct CacheStats {
  std::atomic<int> hits{0};
  std::atomic<int> misses{0};
  std::atomic<int> stores{0};
  std::atomic<int> discarded{0};  // corrupt entries removed
};

// Content-addressed file store. An entry lives at <dir>/<k[0:2]>/<k>.entry
// and holds a header line "hecke-cache <version> <sha256(payload)>" followed
// by the payload. Writers publish with rename() so readers never see a torn
// file; an O_EXCL lock file keeps one writer per key.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir, std::string version = kCodeVersion)
      : dir_(std::move(dir)), version_(std::move(version)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_))
      throw std::runtime_error("cache directory '" + dir_.string() + "' is not usable");
  }

  [[nodiscard]] std::string address(const std::string& canonical_config, const std::string& op,
                                    const Json& args) const {
    Json key{{"config", canonical_config}, {"op", op}, {"args", args}, {"version", version_}};
    return sha256_hex(key.dump());
  }

  std::optional<std::string> load(const std::string& key) {
    auto path = entry_path(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      ++stats_.misses;
      return std::nullopt;
    }
    std::string header;
    std::getline(in, header);
    std::ostringstream rest;
    rest << in.rdbuf();
    std::string payload = rest.str();
    if (header != "hecke-cache " + version_ + " " + sha256_hex(payload)) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
      ++stats_.discarded;
      ++stats_.misses;
      return std::nullopt;
    }
    ++stats_.hits;
    return payload;
  }

  void store(const std::string& key, const std::string& payload) {
    auto path = entry_path(key);
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    auto lock = path;
    lock += ".lock";
    FILE* lf = std::fopen(lock.c_str(), "wx");
    if (!lf) {
      // a lock left behind by a killed writer is reclaimed after a minute
      auto age = std::filesystem::file_time_type::clock::now() - std::filesystem::last_write_time(lock, ec);
      if (ec || age < std::chrono::minutes(1)) return;  // another writer owns this key
      std::filesystem::remove(lock, ec);
      lf = std::fopen(lock.c_str(), "wx");
      if (!lf) return;
    }
    std::fclose(lf);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter_++);
    {
      std::ofstream out(tmp, std::ios::binary);
      out << "hecke-cache " << version_ << " " << sha256_hex(payload) << "\n" << payload;
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
    std::filesystem::remove(lock, ec);
    ++stats_.stores;
  }

  [[nodiscard]] std::filesystem::path entry_path(const std::string& key) const {
    return dir_ / key.substr(0, 2) / (key + ".entry");
  }
  [[nodiscard]] const CacheStats& stats() const { return stats_; }
  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string version_;
  std::atomic<unsigned> counter_{0};
  CacheStats stats_;
};

// Intersection-form ledgers keyed by (Cartan matrix, word, tie-break); the
// forms depend on nothing else. Elements are stored as words since ids are
// per-process.
class CachedLedgerStore : public FormLedgerStore {
 public:
  CachedLedgerStore(ResultCache& cache, const CoxeterGroup& group, TieBreak tie)
      : cache_(cache), group_(group), tie_(tie) {
    cartan_ = Json(group.cartan().entries()).dump();
  }

  std::optional<DivisorLedger> load(const Word& w) override {
    auto payload = cache_.load(key(w));
    if (!payload) return std::nullopt;
    try {
      Json j = Json::parse(*payload);
      DivisorLedger out;
      for (const auto& c : j) {
        FormCell cell;
        cell.y = group_.from_word(group_.parse_word(c.at("y").get<std::string>()));
        cell.degree = c.at("j").get<int>();
        cell.rows = c.at("rows").get<std::size_t>();
        cell.cols = c.at("cols").get<std::size_t>();
        for (const auto& d : c.at("divisors")) cell.divisors.emplace_back(d.get<std::string>());
        out.push_back(std::move(cell));
      }
      return out;
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable payload: recompute
    }
  }

  void save(const Word& w, const DivisorLedger& ledger) override {
    Json j = Json::array();
    for (const auto& c : ledger) {
      Json d = Json::array();
      for (const auto& x : c.divisors) d.push_back(x.get_str());
      j.push_back({{"y", element_key(group_, c.y)}, {"j", c.degree}, {"rows", c.rows}, {"cols", c.cols}, {"divisors", d}});
    }
    cache_.store(key(w), j.dump());
  }

 private:
  std::string key(const Word& w) const {
    Json args{{"word", group_.format_word(w, ".", "")}, {"tie", tie_ == TieBreak::lex ? "lex" : "reverse"}};
    return cache_.address(cartan_, "ledger", args);
  }

  ResultCache& cache_;
  const CoxeterGroup& group_;
  TieBreak tie_;
  std::string cartan_;
};

}  // namespace hecke::io
