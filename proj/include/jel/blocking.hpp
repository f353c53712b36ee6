#pragma once
// Overlap blocker: cheap candidate cut before the matcher scores anything.
// An entity survives for a mention when their normalized names share at
// least `threshold` distinct bigrams.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jel/kb.hpp"

namespace jel {

/// Distinct character bigrams of the normalized joined name (no padding).
/// Strings shorter than 2 after normalization give an empty set.
std::set<std::string> bigram_tokens(std::string_view s);

/// Entities sharing >= threshold bigrams with the mention surface, in KB
/// order. An empty result is legal.
std::vector<const Entity*> block_candidates(std::string_view mention_surface,
                                            const KnowledgeBase& kb, std::size_t threshold = 2);

/// Precomputed per-entity bigram sets for scoring many mentions.
class Blocker {
public:
    explicit Blocker(const KnowledgeBase& kb, std::size_t threshold = 2);
    std::vector<const Entity*> candidates(std::string_view mention_surface) const;
    std::size_t threshold() const { return threshold_; }

private:
    const KnowledgeBase& kb_;
    std::size_t threshold_;
    std::vector<std::set<std::string>> entity_bigrams_;
};

}  // namespace jel
