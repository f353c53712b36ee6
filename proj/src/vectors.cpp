#include "jel/vectors.hpp"

#include <algorithm>
#include <stdexcept>

#include "jel/textio.hpp"

namespace jel {

void EmbeddingTable::put(const std::string& key, Vec v) {
    if (dim_ == 0 && !v.empty()) dim_ = v.size();
    if (v.size() != dim_) {
        throw std::invalid_argument("embedding dimension mismatch for key '" + key + "': " +
                                    std::to_string(v.size()) + " vs " + std::to_string(dim_));
    }
    auto it = index_.find(key);
    if (it != index_.end()) {
        rows_[it->second] = std::move(v);
        return;
    }
    index_.emplace(key, keys_.size());
    keys_.push_back(key);
    rows_.push_back(std::move(v));
}

const Vec* EmbeddingTable::lookup(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &rows_[it->second];
}

std::vector<std::pair<std::string, double>> EmbeddingTable::knn(std::span<const double> query,
                                                                std::size_t k) const {
    if (query.size() != dim_) throw std::invalid_argument("knn: query dimension mismatch");
    std::vector<std::pair<std::string, double>> all;
    all.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        all.emplace_back(keys_[i], euclidean_distance(query, rows_[i]));
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    if (all.size() > k) all.resize(k);
    return all;
}

namespace {

bool is_count_dim_header(const std::vector<std::string>& fields) {
    if (fields.size() != 2) return false;
    for (const auto& f : fields) {
        if (f.empty() || f.find_first_not_of("0123456789") != std::string::npos) return false;
    }
    return true;
}

}  // namespace

EmbeddingTable load_embeddings(const std::filesystem::path& path, std::optional<std::size_t> limit) {
    auto lines = read_lines(path);
    EmbeddingTable table;
    std::size_t start = 0;
    if (!lines.empty() && is_count_dim_header(split_spaces(lines[0]))) start = 1;
    for (std::size_t i = start; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        if (limit && table.size() >= *limit) break;
        auto fields = split_spaces(lines[i]);
        if (fields.size() < 2) {
            throw ParseError("embedding file line " + std::to_string(i + 1) + ": expected key and values");
        }
        Vec v;
        v.reserve(fields.size() - 1);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            v.push_back(parse_double(fields[j], "embedding value"));
        }
        if (table.dim() != 0 && v.size() != table.dim()) {
            throw ParseError("embedding file line " + std::to_string(i + 1) + ": dimension " +
                             std::to_string(v.size()) + " differs from " + std::to_string(table.dim()));
        }
        table.put(fields[0], std::move(v));
    }
    return table;
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path) {
    std::string out = std::to_string(table.size()) + " " + std::to_string(table.dim()) + "\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        out += table.keys()[i];
        for (double v : table.row(i)) {
            out += ' ';
            out += format_double(v);
        }
        out += '\n';
    }
    write_file(path, out);
}

}  // namespace jel
