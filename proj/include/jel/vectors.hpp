#pragma once
// Dense embedding tables: pre-trained word vectors and trained entity
// vectors share one keyed store and one text format. Immutable after
// load/training; reads are concurrency-safe.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "jel/dense.hpp"

namespace jel {

class EmbeddingTable {
public:
    EmbeddingTable() = default;
    explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return keys_.size(); }

    /// Inserts or overwrites; first insert on a default-constructed table
    /// fixes the dimension.
    void put(const std::string& key, Vec v);

    const Vec* lookup(const std::string& key) const;
    const std::vector<std::string>& keys() const { return keys_; }
    const Vec& row(std::size_t i) const { return rows_[i]; }

    /// Exact brute-force k nearest neighbors by Euclidean distance,
    /// ascending, ties broken by key. Returns min(k, size()) results.
    std::vector<std::pair<std::string, double>> knn(std::span<const double> query,
                                                    std::size_t k) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::string> keys_;
    std::vector<Vec> rows_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Text format: one "key v1 ... vd" line per row; an optional two-integer
/// first line ("count dim" header) is skipped. `limit` caps loaded rows.
EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               std::optional<std::size_t> limit = std::nullopt);

/// Writes with a "count dim" header; doubles round-trip bit-exactly.
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path);

}  // namespace jel
