#pragma once
// Comparison methods: n-gram cosine string matching, context-word
// similarity, and a four-feature logistic classifier.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "jel/kb.hpp"
#include "jel/textprep.hpp"

namespace jel {

/// Cosine over character n-gram count vectors of the normalized strings,
/// each token weighted by its idf under `tfidf` (nullptr or unknown token
/// means weight 1). Strings that normalize identically score exactly 1;
/// a side without n-grams otherwise scores 0.
double ngram_cosine(std::string_view a, std::string_view b, std::size_t n,
                    const TfIdfModel* tfidf = nullptr);

enum class ContextSimilarityKind { jaccard, cosine };

/// Jaccard over word sets or cosine over word count vectors; pairs sharing
/// no words score 0.
double context_similarity(const std::vector<std::string>& mention_ctx,
                          const std::vector<std::string>& entity_desc,
                          ContextSimilarityKind kind);

std::size_t levenshtein(std::string_view a, std::string_view b);

struct SurfaceFeatures {
    double str_sim_surface = 0.0;     // 1 - lev/max(len) on normalized names
    double exact_equal_surface = 0.0; // overlapped lemmatized name words
    double tf_sim_context = 0.0;      // tf-idf cosine, context vs description
    double word_num_match = 0.0;      // overlapped lemmatized context/description words

    std::vector<double> as_vector() const {
        return {str_sim_surface, exact_equal_surface, tf_sim_context, word_num_match};
    }
};

/// Lemmatizer stand-in used for the overlap counts: lowercase plus plural
/// "s" stripping on words of length >= 4.
std::string lemma(std::string_view word);

SurfaceFeatures surface_features(std::string_view mention_surface,
                                 const std::vector<std::string>& mention_ctx_words,
                                 const Entity& entity, const TfIdfModel& tfidf);

/// Logistic model over SurfaceFeatures + bias.
struct LogisticModel {
    std::vector<double> weights;  // 4 feature weights
    double bias = 0.0;

    double score(const SurfaceFeatures& f) const;  // probability in (0,1)
    bool predict(const SurfaceFeatures& f) const { return score(f) >= 0.5; }
};

struct LogisticTrainConfig {
    double learning_rate = 0.5;
    std::size_t epochs = 500;
};

struct LabeledFeatures {
    SurfaceFeatures features;
    int label = 0;  // 0 or 1
};

/// Full-batch gradient descent on mean cross-entropy from zero init.
LogisticModel logistic_baseline_train(const std::vector<LabeledFeatures>& data,
                                      const LogisticTrainConfig& cfg = {});

/// Mean cross-entropy and its gradient (weights then bias); exposed so the
/// training step can be checked against finite differences.
double logistic_loss_and_grad(const LogisticModel& model, const std::vector<LabeledFeatures>& data,
                              std::vector<double>* grad_out);

}  // namespace jel
