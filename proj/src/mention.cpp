#include "jel/mention.hpp"

#include <algorithm>

namespace jel {

MentionContext build_mention_context(std::string id, std::string surface,
                                     std::string_view left_text, std::string_view right_text,
                                     std::size_t n) {
    MentionContext ctx;
    ctx.id = std::move(id);
    ctx.surface = std::move(surface);
    ctx.left_raw = std::string(left_text);
    ctx.right_raw = std::string(right_text);
    const auto mention_words = tokenize(ctx.surface);
    const auto left_ctx = tokenize(left_text);
    const auto right_ctx = tokenize(right_text);

    std::vector<std::string> left = left_ctx;
    left.insert(left.end(), mention_words.begin(), mention_words.end());
    if (left.size() > n) left.erase(left.begin(), left.end() - static_cast<std::ptrdiff_t>(n));

    std::vector<std::string> right = mention_words;
    right.insert(right.end(), right_ctx.begin(), right_ctx.end());
    if (right.size() > n) right.resize(n);

    ctx.left_tokens = std::move(left);
    ctx.right_tokens = std::move(right);
    return ctx;
}

}  // namespace jel
