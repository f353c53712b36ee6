#pragma once
// Wide & Deep mention-entity matcher: a Siamese character-feature arm, an
// LSTM+attention context encoder, a weighted combined distance, and
// contrastive training over labeled pairs.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jel/autodiff.hpp"
#include "jel/kb.hpp"
#include "jel/mention.hpp"
#include "jel/textprep.hpp"
#include "jel/vectors.hpp"
#include "jel/weaklabel.hpp"

namespace jel {

struct LinkerConfig {
    double lambda_syx = 1.0;   // weight of the character distance
    double lambda_smc = 1.0;   // weight of the semantic distance
    double margin = 1.0;       // contrastive margin m
    std::size_t window = 10;   // context tokens per side, mention included
    std::size_t h_wide = 128;  // character-arm output width
    std::size_t h_lstm = 64;   // LSTM hidden size per direction
    std::size_t epochs = 30;
    double learning_rate = 0.01;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;
};

/// One linear layer shared by both Siamese arms: y = b + sum of the weight
/// rows of the active character features.
struct WideModelParams {
    ad::Param w;  // (vocab, h_wide)
    ad::Param b;  // (h_wide, 1)
};

struct DeepEncoderParams {
    ad::LstmParams lstm_left;   // consumes the left window in document order
    ad::LstmParams lstm_right;  // consumes the right window reversed
    ad::Param attn_left;        // (h_lstm, 1) attention scorer
    ad::Param attn_right;       // (h_lstm, 1)
    ad::Param fc_w;             // (d, 2*h_lstm)
    ad::Param fc_b;             // (d, 1)
};

/// Full parameter set plus the shape facts a checkpoint must echo.
struct LinkerModel {
    LinkerConfig cfg;
    std::size_t vocab_size = 0;  // character vocabulary size at training time
    std::size_t word_dim = 0;    // word/entity embedding dimension d

    WideModelParams wide;
    DeepEncoderParams deep;

    /// Allocates all tensors for the given shapes and initializes them from
    /// cfg.seed.
    static LinkerModel create(const LinkerConfig& cfg, std::size_t vocab_size,
                              std::size_t word_dim);

    std::vector<ad::Param*> params();
};

/// Euclidean distance between the two arm outputs. Identical feature vectors
/// give exactly 0 for every parameter setting (the arms share weights).
double wide_distance(LinkerModel& model, const CharFeatureVector& a, const CharFeatureVector& b);

/// Context encoding V_m: per side an LSTM pass over the window, attention
/// pooling of its hidden states, then concat and the FC layer. Empty windows
/// on both sides are an error; OOV words enter as zero vectors.
Vec encode_mention(LinkerModel& model, const MentionContext& ctx, const EmbeddingTable& words);

double semantic_distance(std::span<const double> v_m, std::span<const double> v_e);

double combined_distance(double d_syx, double d_smc, const LinkerConfig& cfg);

/// y=1: D_W^2/2. y=0: max(0, margin - D_W)^2 / 2.
double contrastive_loss(int y, double d_w, double margin);

struct PairScore {
    double d_syx = 0.0;
    double d_smc = 0.0;
    double d_w = 0.0;
};

/// Frozen-model scoring of one mention-entity pair. Missing entity vectors
/// fall back to the zero vector.
PairScore score_pair(LinkerModel& model, const MentionContext& ctx, const Entity& entity,
                     const CharVocab& vocab, const EmbeddingTable& words,
                     const EmbeddingTable& entity_vecs);

struct LinkTrainResult {
    std::vector<double> epoch_mean_loss;
};

/// Minibatch gradient descent on the mean contrastive loss. Entity vectors
/// and word vectors stay frozen; pairs must be labeled and reference known
/// kb ids. Deterministic given model.cfg.seed.
LinkTrainResult train_linker(LinkerModel& model, const std::vector<LabeledPair>& pairs,
                             const KnowledgeBase& kb, const CharVocab& vocab,
                             const EmbeddingTable& words, const EmbeddingTable& entity_vecs);

struct RankedCandidate {
    std::string entity_id;
    double d_syx = 0.0;
    double d_smc = 0.0;
    double d_w = 0.0;
};

/// Scores every candidate and sorts ascending by combined distance, ties by
/// entity id. The first element is the predicted link.
std::vector<RankedCandidate> rank_candidates(LinkerModel& model, const MentionContext& ctx,
                                             const std::vector<const Entity*>& candidates,
                                             const CharVocab& vocab, const EmbeddingTable& words,
                                             const EmbeddingTable& entity_vecs);

/// Checkpoint: tensor file with the config and shapes echoed in the header.
void save_linker(LinkerModel& model, const std::filesystem::path& path);
LinkerModel load_linker(const std::filesystem::path& path);

}  // namespace jel
