#pragma once

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fthresh/nu.hpp"

namespace fthresh {

// Append-only JSON-lines store of NuRecords. A corrupt trailing line
// (e.g. a crashed writer) is tolerated and truncated away on open; a
// corrupt interior line is an error. With exclusive_lock the underlying
// file is flock'ed for the lifetime of the store (single-writer CLI
// contract).
class CacheStore {
  public:
    explicit CacheStore(std::filesystem::path path, bool exclusive_lock = false);
    ~CacheStore();

    CacheStore(const CacheStore&) = delete;
    CacheStore& operator=(const CacheStore&) = delete;

    std::optional<NuRecord> lookup(const std::string& ring_digest, const std::string& I_digest,
                                   const std::string& J_digest, std::uint64_t e) const;
    void append(const NuRecord& rec);

    std::size_t size() const { return records_.size(); }
    const std::filesystem::path& path() const { return path_; }
    const std::vector<NuRecord>& records() const { return records_; }

    static std::string serialize(const NuRecord& rec);

  private:
    using Key = std::tuple<std::string, std::string, std::string, std::uint64_t>;

    std::filesystem::path path_;
    std::FILE* file_ = nullptr;
    std::vector<NuRecord> records_;
    std::map<Key, std::size_t> index_;
};

}  // namespace fthresh
