#include "jel/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include "jel/textio.hpp"

namespace jel {

const SuffixMap& default_suffix_map() {
    static const SuffixMap map = {
        {"incorporated", ""}, {"inc", ""},     {"corp", ""},    {"corporation", ""},
        {"llc", ""},          {"ltd", ""},     {"limited", ""}, {"co", ""},
        {"holdings", "hlds"}, {"technologies", "tech"}, {"international", "intl"},
    };
    return map;
}

namespace {

// Lowercase + keep only alphanumerics within each whitespace-separated token.
std::vector<std::string> clean_words(std::string_view raw) {
    std::vector<std::string> words;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            words.push_back(current);
            current.clear();
        }
    };
    for (unsigned char ch : raw) {
        if (std::isspace(ch)) {
            flush();
        } else if (std::isalnum(ch)) {
            current.push_back(static_cast<char>(std::tolower(ch)));
        }
    }
    flush();
    return words;
}

}  // namespace

NormalizedName normalize_name(std::string_view raw, const SuffixMap& suffixes) {
    NormalizedName out;
    for (std::string& w : clean_words(raw)) {
        auto it = suffixes.find(w);
        if (it != suffixes.end()) {
            if (it->second.empty()) continue;  // dropped suffix
            w = it->second;
        }
        out.words.push_back(std::move(w));
    }
    for (const auto& w : out.words) out.joined += w;
    return out;
}

std::vector<std::string> tokenize(std::string_view text) { return clean_words(text); }

// ---------------------------------------------------------------------------

std::uint32_t CharVocab::add(const std::string& token) {
    auto it = index_.find(token);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(tokens_.size());
    tokens_.push_back(token);
    index_.emplace(token, id);
    return id;
}

std::int64_t CharVocab::find(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

void CharVocab::save(const std::filesystem::path& path) const {
    std::string out;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        out += tokens_[i] + "\t" + std::to_string(i) + "\n";
    }
    write_file(path, out);
}

CharVocab CharVocab::load(const std::filesystem::path& path) {
    CharVocab vocab;
    auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = split_tabs(lines[i]);
        if (fields.size() != 2) throw ParseError("vocab line " + std::to_string(i + 1) + ": expected token<TAB>index");
        const auto idx = parse_int(fields[1], "vocab index");
        if (static_cast<std::size_t>(idx) != vocab.size()) {
            throw ParseError("vocab line " + std::to_string(i + 1) + ": indices must be dense and ordered");
        }
        vocab.add(fields[0]);
    }
    return vocab;
}

// ---------------------------------------------------------------------------

std::vector<std::string> char_tokens(std::string_view raw, const SuffixMap& suffixes) {
    const NormalizedName name = normalize_name(raw, suffixes);
    std::vector<std::string> tokens;
    if (name.degenerate()) return tokens;

    const std::string padded = "*" + name.joined + "*";
    std::unordered_set<std::string> seen;
    auto emit = [&](std::string tok) {
        if (seen.insert(tok).second) tokens.push_back(std::move(tok));
    };
    for (std::size_t n = 2; n <= 5; ++n) {
        if (padded.size() < n) break;
        for (std::size_t i = 0; i + n <= padded.size(); ++i) {
            emit(padded.substr(i, n));
        }
    }
    for (const auto& w : name.words) emit("*" + w + "*");
    return tokens;
}

namespace {

CharFeatureVector to_features(const std::vector<std::string>& tokens, CharVocab* build,
                              const CharVocab* frozen) {
    CharFeatureVector fv;
    for (const auto& tok : tokens) {
        if (build) {
            fv.indices.push_back(build->add(tok));
        } else {
            const auto idx = frozen->find(tok);
            if (idx >= 0) fv.indices.push_back(static_cast<std::uint32_t>(idx));
        }
    }
    std::sort(fv.indices.begin(), fv.indices.end());
    fv.indices.erase(std::unique(fv.indices.begin(), fv.indices.end()), fv.indices.end());
    return fv;
}

}  // namespace

CharFeatureVector featurize_chars_build(std::string_view raw, CharVocab& vocab,
                                        const SuffixMap& suffixes) {
    return to_features(char_tokens(raw, suffixes), &vocab, nullptr);
}

CharFeatureVector featurize_chars(std::string_view raw, const CharVocab& vocab,
                                  const SuffixMap& suffixes) {
    return to_features(char_tokens(raw, suffixes), nullptr, &vocab);
}

// ---------------------------------------------------------------------------

TfIdfModel TfIdfModel::fit(const std::vector<std::vector<std::string>>& docs) {
    TfIdfModel model;
    model.doc_count_ = docs.size();
    for (const auto& doc : docs) {
        // df counts distinct words; entries keep first-appearance order.
        std::unordered_set<std::string> counted;
        for (const auto& w : doc) {
            if (!counted.insert(w).second) continue;
            auto it = model.df_.find(w);
            if (it == model.df_.end()) {
                model.df_.emplace(w, 1);
                model.entries_.emplace_back(w, 1);
            } else {
                ++it->second;
            }
        }
    }
    for (auto& [word, df] : model.entries_) df = model.df_.at(word);
    return model;
}

std::size_t TfIdfModel::df(const std::string& word) const {
    auto it = df_.find(word);
    return it == df_.end() ? 0 : it->second;
}

double TfIdfModel::idf(const std::string& word) const {
    const std::size_t d = std::max<std::size_t>(df(word), 1);
    return std::log(static_cast<double>(doc_count_) / static_cast<double>(d));
}

void TfIdfModel::save(const std::filesystem::path& path) const {
    std::string out = std::to_string(doc_count_) + "\n";
    for (const auto& [word, df] : entries_) {
        out += word + "\t" + std::to_string(df) + "\n";
    }
    write_file(path, out);
}

TfIdfModel TfIdfModel::load(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    if (lines.empty()) throw ParseError("empty tf-idf model file: " + path.string());
    TfIdfModel model;
    model.doc_count_ = static_cast<std::size_t>(parse_int(lines[0], "tf-idf document count"));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto fields = split_tabs(lines[i]);
        if (fields.size() != 2) throw ParseError("tf-idf line " + std::to_string(i + 1) + ": expected token<TAB>df");
        const auto df = static_cast<std::size_t>(parse_int(fields[1], "df"));
        if (df == 0 || df > model.doc_count_) {
            throw ParseError("tf-idf line " + std::to_string(i + 1) + ": df out of range");
        }
        model.entries_.emplace_back(fields[0], df);
        model.df_.emplace(fields[0], df);
    }
    return model;
}

std::vector<ScoredWord> tfidf_scores(const std::vector<std::string>& doc, const TfIdfModel& model) {
    std::vector<ScoredWord> scored;
    std::unordered_map<std::string, std::size_t> tf;
    std::vector<std::string> order;
    for (const auto& w : doc) {
        if (tf.emplace(w, 1).second) {
            order.push_back(w);
        } else {
            ++tf[w];
        }
    }
    scored.reserve(order.size());
    for (const auto& w : order) {
        scored.push_back({w, static_cast<double>(tf[w]) * model.idf(w)});
    }
    return scored;
}

std::vector<std::string> top_k_words(std::vector<ScoredWord> scored, std::size_t k) {
    std::sort(scored.begin(), scored.end(), [](const ScoredWord& a, const ScoredWord& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.word < b.word;
    });
    if (scored.size() > k) scored.resize(k);
    std::vector<std::string> words;
    words.reserve(scored.size());
    for (auto& s : scored) words.push_back(std::move(s.word));
    return words;
}

}  // namespace jel
