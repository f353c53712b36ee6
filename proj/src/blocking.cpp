#include "jel/blocking.hpp"

#include "jel/textprep.hpp"

namespace jel {

std::set<std::string> bigram_tokens(std::string_view s) {
    const std::string joined = normalize_name(s).joined;
    std::set<std::string> grams;
    if (joined.size() < 2) return grams;
    for (std::size_t i = 0; i + 2 <= joined.size(); ++i) {
        grams.insert(joined.substr(i, 2));
    }
    return grams;
}

namespace {

std::size_t shared_count(const std::set<std::string>& a, const std::set<std::string>& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    std::size_t n = 0;
    for (const auto& g : small) n += large.count(g);
    return n;
}

}  // namespace

std::vector<const Entity*> block_candidates(std::string_view mention_surface,
                                            const KnowledgeBase& kb, std::size_t threshold) {
    return Blocker(kb, threshold).candidates(mention_surface);
}

Blocker::Blocker(const KnowledgeBase& kb, std::size_t threshold) : kb_(kb), threshold_(threshold) {
    entity_bigrams_.reserve(kb.size());
    for (const Entity& e : kb.entities()) {
        entity_bigrams_.push_back(bigram_tokens(e.name));
    }
}

std::vector<const Entity*> Blocker::candidates(std::string_view mention_surface) const {
    const auto mention_grams = bigram_tokens(mention_surface);
    std::vector<const Entity*> out;
    for (std::size_t i = 0; i < kb_.size(); ++i) {
        if (shared_count(mention_grams, entity_bigrams_[i]) >= threshold_) {
            out.push_back(&kb_.at(i));
        }
    }
    return out;
}

}  // namespace jel
