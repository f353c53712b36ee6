#pragma once
// A mention and its two context windows. Shared by the matcher, the weak
// labeler and the corpus generator.

#include <string>
#include <vector>

#include "jel/textprep.hpp"

namespace jel {

/// Both windows include the mention's own words: left_tokens are up to n
/// document-order words ending with them, right_tokens up to n words
/// starting with them.
struct MentionContext {
    std::string id;
    std::string surface;
    std::string left_raw;   // context text before the mention, as seen
    std::string right_raw;  // context text after the mention
    std::vector<std::string> left_tokens;
    std::vector<std::string> right_tokens;
};

/// Tokenizes the surface and both raw context strings and cuts the windows.
/// Windows never exceed n tokens; short contexts are used as-is.
MentionContext build_mention_context(std::string id, std::string surface,
                                     std::string_view left_text, std::string_view right_text,
                                     std::size_t n);

}  // namespace jel
