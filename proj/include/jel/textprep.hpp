#pragma once
// String normalization, subword featurization, tokenization and tf-idf
// scoring. Shared by the wide matcher arm, the blockers, the baselines and
// triplet construction, so every consumer sees identical strings.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jel {

/// Company-name suffix rewrites applied word-by-word after lowercasing and
/// punctuation stripping. Empty replacement drops the word.
using SuffixMap = std::map<std::string, std::string>;

const SuffixMap& default_suffix_map();

struct NormalizedName {
    std::string joined;              // words concatenated, no separators
    std::vector<std::string> words;  // per-word form, suffixes already rewritten

    bool degenerate() const { return words.empty(); }
};

/// Lowercases, strips punctuation, rewrites suffixes, splits into words.
/// "PayPal Holdings, Inc." -> { "paypalhlds", {"paypal","hlds"} }.
/// A string with nothing left after cleaning comes back degenerate().
NormalizedName normalize_name(std::string_view raw, const SuffixMap& suffixes = default_suffix_map());

/// Plain word tokenizer for descriptions and contexts: lowercase, strip
/// punctuation, split on whitespace. No suffix handling.
std::vector<std::string> tokenize(std::string_view text);

// ---------------------------------------------------------------------------

/// Dense token -> index map over subword tokens; index order is insertion
/// order, so the vocabulary is deterministic given the input corpus order.
class CharVocab {
public:
    std::uint32_t add(const std::string& token);           // get or insert
    std::int64_t find(const std::string& token) const;     // -1 if absent
    std::size_t size() const { return tokens_.size(); }
    const std::string& token(std::uint32_t index) const { return tokens_[index]; }

    void save(const std::filesystem::path& path) const;    // token<TAB>index
    static CharVocab load(const std::filesystem::path& path);

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// Sparse binary indicator vector: sorted unique vocab indices.
struct CharFeatureVector {
    std::vector<std::uint32_t> indices;

    bool empty() const { return indices.empty(); }
    bool operator==(const CharFeatureVector&) const = default;
};

/// Subword token list of a raw name, in generation order and deduplicated:
/// overlapping n-grams (n in [2,5]) of "*"+joined+"*" followed by each
/// padded word "*word*". Degenerate names give an empty list.
std::vector<std::string> char_tokens(std::string_view raw,
                                     const SuffixMap& suffixes = default_suffix_map());

/// Featurizes against a growing vocab (build mode: unseen tokens are added).
CharFeatureVector featurize_chars_build(std::string_view raw, CharVocab& vocab,
                                        const SuffixMap& suffixes = default_suffix_map());

/// Featurizes against a frozen vocab (unseen tokens are dropped).
CharFeatureVector featurize_chars(std::string_view raw, const CharVocab& vocab,
                                  const SuffixMap& suffixes = default_suffix_map());

// ---------------------------------------------------------------------------

/// Document frequencies for tf-idf: score(w) = tf(w, doc) * ln(N / df(w)).
/// Words missing from the model are scored with df = 1.
class TfIdfModel {
public:
    TfIdfModel() = default;

    /// df over distinct words per document.
    static TfIdfModel fit(const std::vector<std::vector<std::string>>& docs);

    std::size_t doc_count() const { return doc_count_; }
    std::size_t df(const std::string& word) const;  // 0 if absent
    double idf(const std::string& word) const;      // ln(N / max(df,1))

    void save(const std::filesystem::path& path) const;  // N header, token<TAB>df
    static TfIdfModel load(const std::filesystem::path& path);

private:
    std::size_t doc_count_ = 0;
    std::vector<std::pair<std::string, std::size_t>> entries_;  // insertion order
    std::unordered_map<std::string, std::size_t> df_;
};

struct ScoredWord {
    std::string word;
    double score;
};

/// tf-idf score per distinct word of `doc`, in first-occurrence order.
std::vector<ScoredWord> tfidf_scores(const std::vector<std::string>& doc, const TfIdfModel& model);

/// k highest-scoring words; ties broken lexicographically. Fewer than k
/// words returns all of them.
std::vector<std::string> top_k_words(std::vector<ScoredWord> scored, std::size_t k);

}  // namespace jel
