#include "jel/entity_embed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "jel/autodiff.hpp"

namespace jel {

namespace {

std::unordered_set<std::string> distinct_words(const std::vector<std::string>& words) {
    return {words.begin(), words.end()};
}

/// Picks `count` distinct indices from [0, pool) by partial Fisher-Yates;
/// wraps around when the pool is smaller than the request.
std::vector<std::size_t> sample_indices(std::size_t pool, std::size_t count,
                                        std::mt19937_64& rng) {
    std::vector<std::size_t> order(pool);
    for (std::size_t i = 0; i < pool; ++i) order[i] = i;
    std::vector<std::size_t> picked;
    picked.reserve(count);
    std::size_t filled = 0;
    while (picked.size() < count && pool > 0) {
        if (filled == pool) filled = 0;  // wrap: reuse shuffled prefix order
        std::uniform_int_distribution<std::size_t> dist(filled, pool - 1);
        std::swap(order[filled], order[dist(rng)]);
        picked.push_back(order[filled]);
        ++filled;
    }
    return picked;
}

std::vector<std::string> negative_candidates(const EmbeddingTable& words,
                                             const std::unordered_set<std::string>& desc_words) {
    std::vector<std::string> out;
    for (const auto& key : words.keys()) {
        if (!desc_words.count(key)) out.push_back(key);
    }
    return out;
}

}  // namespace

TripletBuildReport build_triplets(const KnowledgeBase& kb, const EmbeddingTable& words,
                                  const TfIdfModel& tfidf, const TripletConfig& cfg) {
    TripletBuildReport report;
    std::mt19937_64 rng(cfg.seed);
    for (const auto& e : kb.entities()) {
        const auto desc = tokenize(e.description);
        if (desc.empty()) {
            report.skipped_entities.push_back(e.id);
            continue;
        }
        // Top-scoring words are cut after the in-vocabulary filter so an
        // entity still gets its full positive count when some high scorers
        // lack vectors.
        auto scored = tfidf_scores(desc, tfidf);
        std::vector<ScoredWord> in_vocab;
        for (const auto& s : scored) {
            if (words.lookup(s.word)) in_vocab.push_back(s);
        }
        const auto positives = top_k_words(std::move(in_vocab), cfg.positives_per_entity);
        if (positives.empty()) {
            report.skipped_entities.push_back(e.id);
            continue;
        }
        const auto desc_set = distinct_words(desc);
        const auto candidates = negative_candidates(words, desc_set);
        if (candidates.empty()) {
            report.skipped_entities.push_back(e.id);
            continue;
        }
        const auto picks = sample_indices(candidates.size(), positives.size(), rng);
        for (std::size_t i = 0; i < positives.size(); ++i) {
            report.triplets.push_back({e.id, positives[i], candidates[picks[i]]});
        }
    }
    return report;
}

double triplet_loss(std::span<const double> f_a, std::span<const double> f_p,
                    std::span<const double> f_n, double margin) {
    if (f_a.size() != f_p.size() || f_a.size() != f_n.size()) {
        throw std::invalid_argument("triplet_loss: dimension mismatch");
    }
    const double d_pos = squared_distance(f_a, f_p);
    const double d_neg = squared_distance(f_a, f_n);
    return std::max(0.0, d_pos - d_neg + margin);
}

EmbedTrainResult train_entity_embeddings(const std::vector<Triplet>& triplets,
                                         const EmbeddingTable& words, const KnowledgeBase& kb,
                                         const TripletConfig& cfg) {
    if (words.size() == 0) throw std::invalid_argument("train_entity_embeddings: empty word table");
    const std::size_t dim = words.dim();

    // Group triplets per entity, keeping first-appearance order.
    std::vector<std::string> entity_order;
    std::unordered_map<std::string, std::vector<const Triplet*>> groups;
    for (const auto& t : triplets) {
        auto [it, inserted] = groups.try_emplace(t.entity_id);
        if (inserted) entity_order.push_back(t.entity_id);
        it->second.push_back(&t);
        if (!words.lookup(t.positive_word)) {
            throw std::invalid_argument("train_entity_embeddings: no vector for positive word '" +
                                        t.positive_word + "'");
        }
        if (!words.lookup(t.negative_word)) {
            throw std::invalid_argument("train_entity_embeddings: no vector for negative word '" +
                                        t.negative_word + "'");
        }
    }

    EmbedTrainResult result;
    for (const auto& e : kb.entities()) {
        if (!groups.count(e.id)) result.entities_without_triplets.push_back(e.id);
    }

    std::mt19937_64 rng(cfg.seed);
    std::vector<ad::Param> params;
    params.reserve(entity_order.size());
    for (const auto& id : entity_order) {
        ad::Param p(id, dim, 1);
        Vec mean(dim, 0.0);
        std::size_t n = 0;
        for (const Triplet* t : groups[id]) {
            const Vec* w = words.lookup(t->positive_word);
            axpy(1.0, *w, mean);
            ++n;
        }
        if (n > 0) {
            for (double& x : mean) x /= static_cast<double>(n);
            std::copy(mean.begin(), mean.end(), p.value.data.begin());
        } else {
            ad::init_uniform(p, dim, rng);
        }
        params.push_back(std::move(p));
    }

    // Fresh-negative pools, only needed when the per-epoch knob is on.
    std::unordered_map<std::string, std::vector<std::string>> pools;
    if (cfg.resample_negatives_per_epoch) {
        for (const auto& id : entity_order) {
            const Entity* e = kb.find(id);
            const auto desc_set =
                e ? distinct_words(tokenize(e->description)) : std::unordered_set<std::string>{};
            pools.emplace(id, negative_candidates(words, desc_set));
        }
    }

    const double total = static_cast<double>(triplets.size());
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        double loss_sum = 0.0;
        for (std::size_t i = 0; i < entity_order.size(); ++i) {
            const auto& batch_triplets = groups[entity_order[i]];
            std::vector<const Vec*> negs(batch_triplets.size());
            for (std::size_t j = 0; j < batch_triplets.size(); ++j) {
                negs[j] = words.lookup(batch_triplets[j]->negative_word);
            }
            if (cfg.resample_negatives_per_epoch) {
                const auto& pool = pools[entity_order[i]];
                if (!pool.empty()) {
                    const auto picks = sample_indices(pool.size(), negs.size(), rng);
                    for (std::size_t j = 0; j < negs.size(); ++j) {
                        negs[j] = words.lookup(pool[picks[j]]);
                    }
                }
            }
            ad::Param& p = params[i];
            p.zero_grad();
            ad::Tape tape;
            const ad::NodeId a = tape.leaf(p);
            ad::NodeId batch = ad::kNoNode;
            for (std::size_t j = 0; j < batch_triplets.size(); ++j) {
                const ad::NodeId pos = tape.constant(*words.lookup(batch_triplets[j]->positive_word));
                const ad::NodeId neg = tape.constant(*negs[j]);
                const ad::NodeId gap = tape.sub(tape.squared_distance(a, pos),
                                                tape.squared_distance(a, neg));
                const ad::NodeId hinge = tape.relu(tape.add_scalar(gap, cfg.margin));
                batch = batch == ad::kNoNode ? hinge : tape.add(batch, hinge);
            }
            loss_sum += tape.scalar(batch);
            tape.backward(batch);
            axpy(-cfg.learning_rate, p.grad.data, p.value.data);
        }
        result.epoch_mean_loss.push_back(total == 0.0 ? 0.0 : loss_sum / total);
    }

    EmbeddingTable table(dim);
    for (const auto& p : params) table.put(p.name, p.value.data);
    result.entities = std::move(table);
    return result;
}

double industry_knn_purity(const EmbeddingTable& entities, const KnowledgeBase& kb,
                           std::size_t k) {
    if (k == 0) throw std::invalid_argument("industry_knn_purity: k must be >= 1");
    double sum = 0.0;
    std::size_t counted = 0;
    for (const auto& id : entities.keys()) {
        const Entity* self = kb.find(id);
        if (!self) continue;
        const auto neighbors = entities.knn(*entities.lookup(id), k + 1);
        std::size_t same = 0, taken = 0;
        for (const auto& [nid, dist] : neighbors) {
            (void)dist;
            if (nid == id) continue;
            if (taken == k) break;
            ++taken;
            const Entity* other = kb.find(nid);
            if (other && other->industry == self->industry) ++same;
        }
        if (taken == 0) continue;
        sum += static_cast<double>(same) / static_cast<double>(taken);
        ++counted;
    }
    return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

}  // namespace jel
