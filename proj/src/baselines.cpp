#include "jel/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace jel {

namespace {

std::map<std::string, std::size_t> ngram_counts(const std::string& joined, std::size_t n) {
    std::map<std::string, std::size_t> counts;
    if (joined.size() < n) return counts;
    for (std::size_t i = 0; i + n <= joined.size(); ++i) {
        ++counts[joined.substr(i, n)];
    }
    return counts;
}

double weighted_cosine(const std::map<std::string, std::size_t>& a,
                       const std::map<std::string, std::size_t>& b,
                       const TfIdfModel* tfidf) {
    auto weight = [&](const std::string& tok) {
        if (!tfidf || tfidf->df(tok) == 0) return 1.0;
        return tfidf->idf(tok);
    };
    double na = 0.0, nb = 0.0, num = 0.0;
    for (const auto& [tok, c] : a) {
        const double v = static_cast<double>(c) * weight(tok);
        na += v * v;
    }
    for (const auto& [tok, c] : b) {
        const double v = static_cast<double>(c) * weight(tok);
        nb += v * v;
        auto it = a.find(tok);
        if (it != a.end()) {
            num += v * static_cast<double>(it->second) * weight(tok);
        }
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return num / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

double ngram_cosine(std::string_view a, std::string_view b, std::size_t n, const TfIdfModel* tfidf) {
    if (n != 2 && n != 3) throw std::invalid_argument("ngram_cosine: n must be 2 or 3");
    const std::string ja = normalize_name(a).joined;
    const std::string jb = normalize_name(b).joined;
    if (ja == jb && !ja.empty()) return 1.0;  // identical normalized strings
    return weighted_cosine(ngram_counts(ja, n), ngram_counts(jb, n), tfidf);
}

double context_similarity(const std::vector<std::string>& mention_ctx,
                          const std::vector<std::string>& entity_desc,
                          ContextSimilarityKind kind) {
    if (kind == ContextSimilarityKind::jaccard) {
        const std::set<std::string> a(mention_ctx.begin(), mention_ctx.end());
        const std::set<std::string> b(entity_desc.begin(), entity_desc.end());
        if (a.empty() && b.empty()) return 0.0;
        std::size_t shared = 0;
        for (const auto& w : a) shared += b.count(w);
        const std::size_t uni = a.size() + b.size() - shared;
        return uni == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(uni);
    }
    std::map<std::string, std::size_t> ca, cb;
    for (const auto& w : mention_ctx) ++ca[w];
    for (const auto& w : entity_desc) ++cb[w];
    return weighted_cosine(ca, cb, nullptr);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    const std::size_t m = a.size(), n = b.size();
    std::vector<std::size_t> prev(n + 1), curr(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 0; i < m; ++i) {
        curr[0] = i + 1;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t del = prev[j + 1] + 1;
            const std::size_t ins = curr[j] + 1;
            const std::size_t sub = a[i] == b[j] ? prev[j] : prev[j] + 1;
            curr[j + 1] = std::min({del, ins, sub});
        }
        std::swap(prev, curr);
    }
    return prev[n];
}

std::string lemma(std::string_view word) {
    std::string w;
    for (char c : word) w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (w.size() >= 4 && w.back() == 's') w.pop_back();
    return w;
}

namespace {

std::size_t lemma_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::unordered_set<std::string> sa, sb;
    for (const auto& w : a) sa.insert(lemma(w));
    for (const auto& w : b) sb.insert(lemma(w));
    std::size_t n = 0;
    for (const auto& w : sa) n += sb.count(w);
    return n;
}

double tfidf_cosine(const std::vector<std::string>& a, const std::vector<std::string>& b,
                    const TfIdfModel& tfidf) {
    std::map<std::string, std::size_t> ca, cb;
    for (const auto& w : a) ++ca[w];
    for (const auto& w : b) ++cb[w];
    return weighted_cosine(ca, cb, &tfidf);
}

}  // namespace

SurfaceFeatures surface_features(std::string_view mention_surface,
                                 const std::vector<std::string>& mention_ctx_words,
                                 const Entity& entity, const TfIdfModel& tfidf) {
    SurfaceFeatures f;
    const NormalizedName nm = normalize_name(mention_surface);
    const NormalizedName ne = normalize_name(entity.name);
    const std::size_t maxlen = std::max(nm.joined.size(), ne.joined.size());
    f.str_sim_surface =
        maxlen == 0 ? 1.0
                    : 1.0 - static_cast<double>(levenshtein(nm.joined, ne.joined)) /
                                static_cast<double>(maxlen);
    f.exact_equal_surface = static_cast<double>(
        lemma_overlap(tokenize(std::string(mention_surface)), tokenize(entity.name)));
    const auto desc_words = tokenize(entity.description);
    f.tf_sim_context = tfidf_cosine(mention_ctx_words, desc_words, tfidf);
    f.word_num_match = static_cast<double>(lemma_overlap(mention_ctx_words, desc_words));
    return f;
}

double LogisticModel::score(const SurfaceFeatures& f) const {
    const auto x = f.as_vector();
    double z = bias;
    for (std::size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
    return 1.0 / (1.0 + std::exp(-z));
}

double logistic_loss_and_grad(const LogisticModel& model, const std::vector<LabeledFeatures>& data,
                              std::vector<double>* grad_out) {
    const std::size_t n = data.size();
    if (n == 0) throw std::invalid_argument("logistic loss: empty dataset");
    double loss = 0.0;
    std::vector<double> grad(model.weights.size() + 1, 0.0);
    for (const auto& d : data) {
        const double p = model.score(d.features);
        const double y = static_cast<double>(d.label);
        // Clamp to keep log finite on (numerically) saturated scores.
        const double pc = std::clamp(p, 1e-12, 1.0 - 1e-12);
        loss += -(y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc));
        const auto x = d.features.as_vector();
        const double err = p - y;
        for (std::size_t i = 0; i < x.size(); ++i) grad[i] += err * x[i];
        grad.back() += err;
    }
    loss /= static_cast<double>(n);
    for (double& g : grad) g /= static_cast<double>(n);
    if (grad_out) *grad_out = std::move(grad);
    return loss;
}

LogisticModel logistic_baseline_train(const std::vector<LabeledFeatures>& data,
                                      const LogisticTrainConfig& cfg) {
    LogisticModel model;
    model.weights.assign(4, 0.0);
    std::vector<double> grad;
    for (std::size_t e = 0; e < cfg.epochs; ++e) {
        logistic_loss_and_grad(model, data, &grad);
        for (std::size_t i = 0; i < model.weights.size(); ++i) {
            model.weights[i] -= cfg.learning_rate * grad[i];
        }
        model.bias -= cfg.learning_rate * grad.back();
    }
    return model;
}

}  // namespace jel
