#pragma once
// Weak labeling of mention-entity pairs via bigram-cosine buckets, dataset
// balancing/splitting, and the synthetic corpus generator.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jel/kb.hpp"
#include "jel/mention.hpp"
#include "jel/textprep.hpp"
#include "jel/vectors.hpp"

namespace jel {

enum class Provenance { auto_negative, auto_positive, review_queue, synthetic };

std::string provenance_name(Provenance p);
Provenance parse_provenance(std::string_view s);

/// Candidate mention-entity pair. label is set for auto/synthetic
/// provenance and absent for review-queue pairs.
struct LabeledPair {
    MentionContext mention;
    std::string entity_id;
    std::optional<int> label;  // 0 or 1 when present
    Provenance provenance = Provenance::synthetic;
};

struct WeakLabelResult {
    std::vector<LabeledPair> labeled;       // auto_negative / auto_positive
    std::vector<LabeledPair> review_queue;  // unlabeled, needs a human pass
    std::size_t discarded = 0;              // mid-similarity band
};

/// Buckets every (mention, entity) combination by the bigram cosine of the
/// mention surface vs the entity name: below 0.5 an automatic negative; at
/// exactly 1.0 an automatic positive unless several entities tie at 1.0
/// (collision goes to review); the (0.75, 1.0) band goes to review; the
/// remaining [0.5, 0.75] band is discarded. Passing a tfidf model weights
/// the bigrams; the default is unweighted counts, which is what the bucket
/// thresholds were calibrated against.
WeakLabelResult weak_label_pairs(const std::vector<MentionContext>& mentions,
                                 const KnowledgeBase& kb, const TfIdfModel* tfidf = nullptr);

/// Downsamples negatives to the positive count (seeded; positives all kept).
/// Unlabeled pairs are rejected.
std::vector<LabeledPair> balance_dataset(const std::vector<LabeledPair>& pairs,
                                         std::uint64_t seed);

struct DatasetSplit {
    std::vector<LabeledPair> train;
    std::vector<LabeledPair> valid;
    std::vector<LabeledPair> test;
};

/// Disjoint 80/10/10 split with all pairs of one mention id kept together;
/// mention groups are shuffled by the seed before quota assignment.
DatasetSplit split_dataset(const std::vector<LabeledPair>& pairs, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Synthetic corpus

struct SynthSpec {
    std::size_t entities = 100;
    std::size_t industries = 5;
    // round(rate * entities) names are each shared by two entities in
    // different industries; needs 2*round(rate*entities) <= entities.
    double ambiguity_rate = 0.2;
    std::size_t mentions = 1000;
    std::size_t description_words = 30;
    std::size_t context_words = 30;  // per side, before windowing
    std::size_t word_dim = 50;       // synthetic word vector dimension
    std::uint64_t seed = 0;
};

struct SyntheticCorpus {
    KnowledgeBase kb;
    std::vector<MentionContext> mentions;
    // gold[i] pairs mentions[i].id with its entity id.
    std::vector<std::pair<std::string, std::string>> gold;
    EmbeddingTable words;  // synthetic word vectors covering the vocabulary
};

/// Entities get industry-specific description vocabularies; mention contexts
/// draw from the gold entity's industry vocabulary; an ambiguity_rate
/// fraction of names is duplicated across industries. Deterministic per
/// seed.
SyntheticCorpus generate_synthetic_corpus(const SynthSpec& spec);

/// One positive and one negative pair per mention, provenance synthetic.
/// The negative is the gold entity's same-name twin when one exists,
/// otherwise a random other entity.
std::vector<LabeledPair> build_synthetic_pairs(const SyntheticCorpus& corpus,
                                               std::uint64_t seed);

// ---------------------------------------------------------------------------
// File formats (tab-separated, one record per line)

/// mention-id, surface, left-context, right-context, entity-id, label,
/// provenance. Review-queue rows leave the label column empty.
void save_pairs(const std::vector<LabeledPair>& pairs, const std::filesystem::path& path);
std::vector<LabeledPair> load_pairs(const std::filesystem::path& path, std::size_t window);

/// mention-id, surface, left-context, right-context.
void save_mentions(const std::vector<MentionContext>& mentions,
                   const std::filesystem::path& path);
std::vector<MentionContext> load_mentions(const std::filesystem::path& path, std::size_t window);

/// mention-id, entity-id.
void save_gold(const std::vector<std::pair<std::string, std::string>>& gold,
               const std::filesystem::path& path);
std::vector<std::pair<std::string, std::string>> load_gold(const std::filesystem::path& path);

}  // namespace jel
