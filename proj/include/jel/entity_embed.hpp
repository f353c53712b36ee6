#pragma once
// Triplet construction and margin-loss training of entity vectors against a
// frozen word embedding table.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "jel/kb.hpp"
#include "jel/textprep.hpp"
#include "jel/vectors.hpp"

namespace jel {

struct Triplet {
    std::string entity_id;
    std::string positive_word;  // top tf-idf description word
    std::string negative_word;  // word-table word absent from the description
};

struct TripletConfig {
    double margin = 2.0;
    std::size_t positives_per_entity = 10;
    std::size_t negatives_per_entity = 10;
    std::size_t epochs = 200;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;
    // Negatives are sampled once up front; flip to draw fresh ones per epoch.
    bool resample_negatives_per_epoch = false;
};

struct TripletBuildReport {
    std::vector<Triplet> triplets;
    std::vector<std::string> skipped_entities;  // empty/unusable descriptions
};

/// Per entity: positives are the top tf-idf description words that exist in
/// `words`, paired 1:1 with negatives sampled uniformly from word-table
/// entries absent from the description. Deterministic given cfg.seed.
TripletBuildReport build_triplets(const KnowledgeBase& kb, const EmbeddingTable& words,
                                  const TfIdfModel& tfidf, const TripletConfig& cfg);

/// max(0, |f_a - f_p|^2 - |f_a - f_n|^2 + margin). Dims must match.
double triplet_loss(std::span<const double> f_a, std::span<const double> f_p,
                    std::span<const double> f_n, double margin);

struct EmbedTrainResult {
    EmbeddingTable entities;
    std::vector<double> epoch_mean_loss;         // one entry per epoch
    std::vector<std::string> entities_without_triplets;
};

/// Gradient descent on the summed hinge over each entity's triplet batch.
/// Word vectors stay frozen; entity vectors start at the mean of their
/// positive-word vectors (seeded random when no positive has a vector).
EmbedTrainResult train_entity_embeddings(const std::vector<Triplet>& triplets,
                                         const EmbeddingTable& words, const KnowledgeBase& kb,
                                         const TripletConfig& cfg);

/// Mean over entities of the fraction of each entity's k nearest neighbors
/// (within `entities`) that share its industry. Entities missing from the
/// table are skipped.
double industry_knn_purity(const EmbeddingTable& entities, const KnowledgeBase& kb, std::size_t k);

}  // namespace jel
