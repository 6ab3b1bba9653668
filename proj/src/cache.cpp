#include "fthresh/cache.hpp"

#include <fstream>

#include "json.hpp"

#ifdef __unix__
#include <sys/file.h>
#include <unistd.h>
#endif

namespace fthresh {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<NuRecord> parse_line(const std::string& line) {
    ordered_json j = ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return std::nullopt;
    NuRecord rec;
    try {
        rec.ring_digest = j.at("ring_digest").get<std::string>();
        rec.I_digest = j.at("I_digest").get<std::string>();
        rec.J_digest = j.at("J_digest").get<std::string>();
        rec.e = j.at("e").get<std::uint64_t>();
        rec.q = j.at("q").get<std::uint64_t>();
        rec.nu = j.at("nu").get<std::uint64_t>();
        rec.method = j.at("method").get<std::string>();
        rec.wall_ms = j.at("wall_ms").get<std::uint64_t>();
    } catch (const ordered_json::exception&) {
        return std::nullopt;
    }
    return rec;
}

}  // namespace

std::string CacheStore::serialize(const NuRecord& rec) {
    ordered_json j;
    j["ring_digest"] = rec.ring_digest;
    j["I_digest"] = rec.I_digest;
    j["J_digest"] = rec.J_digest;
    j["e"] = rec.e;
    j["q"] = rec.q;
    j["nu"] = rec.nu;
    j["method"] = rec.method;
    j["wall_ms"] = rec.wall_ms;
    return j.dump();
}

CacheStore::CacheStore(std::filesystem::path path, bool exclusive_lock) : path_(std::move(path)) {
    std::vector<std::string> lines;
    std::uintmax_t valid_bytes = 0;
    bool needs_truncate = false;
    {
        std::ifstream in(path_, std::ios::binary);
        std::string line;
        std::uintmax_t consumed = 0;
        while (in && std::getline(in, line)) {
            consumed += line.size() + 1;
            if (line.empty()) {
                valid_bytes = consumed;
                continue;
            }
            auto rec = parse_line(line);
            if (!rec) {
                // Only a trailing corrupt line is tolerated.
                std::string rest;
                if (std::getline(in, rest) && !rest.empty())
                    throw validation_error("corrupt cache line in " + path_.string());
                needs_truncate = true;
                break;
            }
            Key key{rec->ring_digest, rec->I_digest, rec->J_digest, rec->e};
            index_[key] = records_.size();
            records_.push_back(std::move(*rec));
            valid_bytes = consumed;
        }
    }
    if (needs_truncate) std::filesystem::resize_file(path_, valid_bytes);

    file_ = std::fopen(path_.string().c_str(), "ab");
    if (!file_) throw validation_error("cannot open cache file " + path_.string());
#ifdef __unix__
    if (exclusive_lock && flock(fileno(file_), LOCK_EX | LOCK_NB) != 0) {
        std::fclose(file_);
        file_ = nullptr;
        throw validation_error("cache file " + path_.string() + " is locked by another process");
    }
#else
    (void)exclusive_lock;
#endif
}

CacheStore::~CacheStore() {
    if (file_) std::fclose(file_);
}

std::optional<NuRecord> CacheStore::lookup(const std::string& ring_digest,
                                           const std::string& I_digest, const std::string& J_digest,
                                           std::uint64_t e) const {
    auto it = index_.find(Key{ring_digest, I_digest, J_digest, e});
    if (it == index_.end()) return std::nullopt;
    return records_[it->second];
}

void CacheStore::append(const NuRecord& rec) {
    std::string line = serialize(rec) + "\n";
    if (std::fwrite(line.data(), 1, line.size(), file_) != line.size())
        throw validation_error("failed to append to cache file " + path_.string());
    std::fflush(file_);
    Key key{rec.ring_digest, rec.I_digest, rec.J_digest, rec.e};
    index_[key] = records_.size();
    records_.push_back(rec);
}

}  // namespace fthresh
