#include "jel/weaklabel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "jel/baselines.hpp"
#include "jel/textio.hpp"

namespace jel {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::auto_negative: return "auto-negative";
        case Provenance::auto_positive: return "auto-positive";
        case Provenance::review_queue: return "review-queue";
        case Provenance::synthetic: return "synthetic";
    }
    throw std::logic_error("provenance_name: bad enum value");
}

Provenance parse_provenance(std::string_view s) {
    if (s == "auto-negative") return Provenance::auto_negative;
    if (s == "auto-positive") return Provenance::auto_positive;
    if (s == "review-queue") return Provenance::review_queue;
    if (s == "synthetic") return Provenance::synthetic;
    throw ParseError("unknown provenance: '" + std::string(s) + "'");
}

WeakLabelResult weak_label_pairs(const std::vector<MentionContext>& mentions,
                                 const KnowledgeBase& kb, const TfIdfModel* tfidf) {
    WeakLabelResult result;
    std::vector<double> sims(kb.size());
    for (const auto& mention : mentions) {
        std::size_t exact_matches = 0;
        for (std::size_t i = 0; i < kb.size(); ++i) {
            sims[i] = ngram_cosine(mention.surface, kb.at(i).name, 2, tfidf);
            if (sims[i] == 1.0) ++exact_matches;
        }
        for (std::size_t i = 0; i < kb.size(); ++i) {
            const double sim = sims[i];
            LabeledPair pair;
            pair.mention = mention;
            pair.entity_id = kb.at(i).id;
            if (sim < 0.5) {
                pair.label = 0;
                pair.provenance = Provenance::auto_negative;
                result.labeled.push_back(std::move(pair));
            } else if (sim == 1.0) {
                if (exact_matches > 1) {
                    // Several entities tie at 1.0: the name is ambiguous, a
                    // human has to pick, so the pair is queued unlabeled.
                    pair.provenance = Provenance::review_queue;
                    result.review_queue.push_back(std::move(pair));
                } else {
                    pair.label = 1;
                    pair.provenance = Provenance::auto_positive;
                    result.labeled.push_back(std::move(pair));
                }
            } else if (sim > 0.75) {
                pair.provenance = Provenance::review_queue;
                result.review_queue.push_back(std::move(pair));
            } else {
                ++result.discarded;
            }
        }
    }
    return result;
}

std::vector<LabeledPair> balance_dataset(const std::vector<LabeledPair>& pairs,
                                         std::uint64_t seed) {
    std::vector<std::size_t> neg_idx;
    std::size_t positives = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!pairs[i].label.has_value()) {
            throw std::invalid_argument("balance_dataset: unlabeled pair at index " +
                                        std::to_string(i));
        }
        if (*pairs[i].label == 1) ++positives;
        else neg_idx.push_back(i);
    }
    if (neg_idx.size() <= positives) return pairs;

    std::mt19937_64 rng(seed);
    std::shuffle(neg_idx.begin(), neg_idx.end(), rng);
    std::vector<bool> keep(pairs.size(), false);
    for (std::size_t i = 0; i < positives; ++i) keep[neg_idx[i]] = true;

    std::vector<LabeledPair> out;
    out.reserve(2 * positives);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (*pairs[i].label == 1 || keep[i]) out.push_back(pairs[i]);
    }
    return out;
}

DatasetSplit split_dataset(const std::vector<LabeledPair>& pairs, std::uint64_t seed) {
    // Group by mention id so no mention leaks across splits.
    std::vector<std::string> group_order;
    std::unordered_map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [it, inserted] = groups.try_emplace(pairs[i].mention.id);
        if (inserted) group_order.push_back(pairs[i].mention.id);
        it->second.push_back(i);
    }
    std::mt19937_64 rng(seed);
    std::shuffle(group_order.begin(), group_order.end(), rng);

    const double n = static_cast<double>(pairs.size());
    const std::size_t train_quota = static_cast<std::size_t>(std::llround(0.8 * n));
    const std::size_t valid_quota = static_cast<std::size_t>(std::llround(0.9 * n));

    DatasetSplit split;
    std::size_t assigned = 0;
    for (const auto& id : group_order) {
        const auto& members = groups[id];
        std::vector<LabeledPair>* bucket;
        if (assigned < train_quota) bucket = &split.train;
        else if (assigned < valid_quota) bucket = &split.valid;
        else bucket = &split.test;
        for (std::size_t i : members) bucket->push_back(pairs[i]);
        assigned += members.size();
    }
    return split;
}

// ---------------------------------------------------------------------------
// Synthetic corpus

namespace {

const std::vector<std::string>& syllables() {
    static const std::vector<std::string> s = {
        "ba", "co", "di", "fu", "ga", "he", "ki", "lo", "mu", "na", "po", "ra",
        "se", "ti", "vu", "wa", "ze", "or", "in", "al", "en", "ta", "us", "ix"};
    return s;
}

std::string make_word(std::mt19937_64& rng, std::size_t min_syl, std::size_t max_syl) {
    const auto& syl = syllables();
    std::uniform_int_distribution<std::size_t> count_dist(min_syl, max_syl);
    std::uniform_int_distribution<std::size_t> pick(0, syl.size() - 1);
    const std::size_t count = count_dist(rng);
    std::string w;
    for (std::size_t i = 0; i < count; ++i) w += syl[pick(rng)];
    return w;
}

std::string make_unique_word(std::mt19937_64& rng, std::unordered_set<std::string>& used,
                             std::size_t min_syl, std::size_t max_syl) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::string w = make_word(rng, min_syl, max_syl);
        if (used.insert(w).second) return w;
    }
    throw std::runtime_error("synthetic vocabulary exhausted");
}

std::string capitalize(std::string w) {
    if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return w;
}

const std::vector<std::string>& industry_tags() {
    static const std::vector<std::string> tags = {"finance", "software", "energy",  "health",
                                                  "retail",  "media",    "transit", "metals",
                                                  "telecom", "agro"};
    return tags;
}

std::string industry_tag(std::size_t i) {
    const auto& tags = industry_tags();
    if (i < tags.size()) return tags[i];
    return "sector" + std::to_string(i);
}

std::string zero_pad(std::size_t value, std::size_t width) {
    std::string s = std::to_string(value);
    return s.size() >= width ? s : std::string(width - s.size(), '0') + s;
}

Vec noisy_vector(const Vec& center, double noise, std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-noise, noise);
    Vec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = (center.empty() ? 0.0 : center[i]) + dist(rng);
    return v;
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const SynthSpec& spec) {
    if (spec.industries < 2) {
        throw std::invalid_argument("synthetic corpus: need at least 2 industries");
    }
    if (spec.entities < spec.industries) {
        throw std::invalid_argument("synthetic corpus: need at least one entity per industry");
    }
    const std::size_t twin_names =
        static_cast<std::size_t>(std::llround(spec.ambiguity_rate * static_cast<double>(spec.entities)));
    if (2 * twin_names > spec.entities) {
        throw std::invalid_argument("synthetic corpus: ambiguity rate too high for entity count");
    }
    if (spec.word_dim == 0) throw std::invalid_argument("synthetic corpus: word_dim must be > 0");

    std::mt19937_64 rng(spec.seed);
    SyntheticCorpus corpus;

    // Industry-specific vocabularies around well-separated centers plus a
    // shared generic filler vocabulary; all words globally unique.
    constexpr std::size_t kIndustryVocab = 40;
    constexpr std::size_t kGenericVocab = 60;
    std::unordered_set<std::string> used_words;
    std::vector<std::vector<std::string>> industry_words(spec.industries);
    EmbeddingTable words(spec.word_dim);
    std::uniform_real_distribution<double> center_dist(-1.0, 1.0);
    for (std::size_t ind = 0; ind < spec.industries; ++ind) {
        Vec center(spec.word_dim);
        for (double& x : center) x = center_dist(rng);
        for (std::size_t w = 0; w < kIndustryVocab; ++w) {
            const std::string word = make_unique_word(rng, used_words, 2, 3);
            industry_words[ind].push_back(word);
            words.put(word, noisy_vector(center, 0.4, spec.word_dim, rng));
        }
    }
    std::vector<std::string> generic_words;
    for (std::size_t w = 0; w < kGenericVocab; ++w) {
        const std::string word = make_unique_word(rng, used_words, 2, 3);
        generic_words.push_back(word);
        words.put(word, noisy_vector({}, 1.0, spec.word_dim, rng));
    }

    // Entity names: unique normalized form, occasional corporate suffix.
    const std::vector<std::string> suffixes = {"Inc", "Corp", "LLC", "Technologies", "Holdings",
                                               "Group", "Ltd"};
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> suffix_pick(0, suffixes.size() - 1);
    std::unordered_set<std::string> used_names;
    auto make_name = [&]() {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::string name = capitalize(make_word(rng, 2, 3));
            if (coin(rng) < 0.4) name += " " + capitalize(make_word(rng, 2, 2));
            if (coin(rng) < 0.25) name += " " + suffixes[suffix_pick(rng)];
            const std::string norm = normalize_name(name).joined;
            if (norm.size() >= 3 && used_names.insert(norm).second) return name;
        }
        throw std::runtime_error("synthetic name space exhausted");
    };

    struct Draft {
        std::string name;
        std::size_t industry;
    };
    std::vector<Draft> drafts(spec.entities);
    for (std::size_t i = 0; i < spec.entities; ++i) {
        drafts[i] = {make_name(), i % spec.industries};
    }
    // Twin j duplicates the name of entity 2j onto entity 2j+1; round-robin
    // industry assignment already places them in different industries.
    for (std::size_t j = 0; j < twin_names; ++j) {
        drafts[2 * j + 1].name = drafts[2 * j].name;
    }

    auto sample_of = [&](const std::vector<std::string>& pool) -> const std::string& {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        return pool[pick(rng)];
    };
    auto text_words = [&](std::size_t count, std::size_t industry, double industry_share) {
        std::vector<std::string> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const bool from_industry = coin(rng) < industry_share;
            out.push_back(from_industry ? sample_of(industry_words[industry])
                                        : sample_of(generic_words));
        }
        return out;
    };

    for (std::size_t i = 0; i < spec.entities; ++i) {
        Entity e;
        e.id = "e" + zero_pad(i, 5);
        e.name = drafts[i].name;
        e.industry = industry_tag(drafts[i].industry);
        e.description = join(text_words(spec.description_words, drafts[i].industry, 0.7), " ");
        corpus.kb.add(std::move(e));
    }

    // Mentions: surfaces copy the gold name (sometimes suffix-stripped);
    // contexts draw mostly from the gold industry's vocabulary.
    std::uniform_int_distribution<std::size_t> entity_pick(0, spec.entities - 1);
    for (std::size_t m = 0; m < spec.mentions; ++m) {
        const std::size_t gold_row = entity_pick(rng);
        const Entity& gold = corpus.kb.at(gold_row);
        std::string surface = gold.name;
        if (coin(rng) < 0.5) {
            const auto space = surface.rfind(' ');
            if (space != std::string::npos) {
                const std::string last = surface.substr(space + 1);
                if (std::find(suffixes.begin(), suffixes.end(), last) != suffixes.end()) {
                    surface.resize(space);
                }
            }
        }
        const std::string left =
            join(text_words(spec.context_words, drafts[gold_row].industry, 0.6), " ");
        const std::string right =
            join(text_words(spec.context_words, drafts[gold_row].industry, 0.6), " ");
        MentionContext ctx =
            build_mention_context("m" + zero_pad(m, 6), surface, left, right,
                                  std::numeric_limits<std::size_t>::max());
        corpus.gold.emplace_back(ctx.id, gold.id);
        corpus.mentions.push_back(std::move(ctx));
    }

    corpus.words = std::move(words);
    return corpus;
}

std::vector<LabeledPair> build_synthetic_pairs(const SyntheticCorpus& corpus,
                                               std::uint64_t seed) {
    if (corpus.kb.size() < 2) {
        throw std::invalid_argument("build_synthetic_pairs: need at least 2 entities");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> entity_pick(0, corpus.kb.size() - 1);
    std::vector<LabeledPair> pairs;
    pairs.reserve(2 * corpus.mentions.size());
    for (std::size_t i = 0; i < corpus.mentions.size(); ++i) {
        const MentionContext& mention = corpus.mentions[i];
        const std::string& gold_id = corpus.gold[i].second;
        const Entity* gold = corpus.kb.find(gold_id);
        if (!gold) throw std::logic_error("build_synthetic_pairs: gold id missing from kb");

        LabeledPair pos;
        pos.mention = mention;
        pos.entity_id = gold_id;
        pos.label = 1;
        pos.provenance = Provenance::synthetic;
        pairs.push_back(std::move(pos));

        // Same-name twin is the hard negative; unique names draw a random
        // other entity.
        std::string neg_id;
        for (const auto& id : corpus.kb.ids_by_name(gold->name)) {
            if (id != gold_id) {
                neg_id = id;
                break;
            }
        }
        while (neg_id.empty()) {
            const Entity& cand = corpus.kb.at(entity_pick(rng));
            if (cand.id != gold_id) neg_id = cand.id;
        }
        LabeledPair neg;
        neg.mention = mention;
        neg.entity_id = neg_id;
        neg.label = 0;
        neg.provenance = Provenance::synthetic;
        pairs.push_back(std::move(neg));
    }
    return pairs;
}

// ---------------------------------------------------------------------------
// File formats

namespace {

std::string sanitize(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

}  // namespace

void save_pairs(const std::vector<LabeledPair>& pairs, const std::filesystem::path& path) {
    std::string out;
    for (const auto& p : pairs) {
        out += sanitize(p.mention.id) + "\t" + sanitize(p.mention.surface) + "\t" +
               sanitize(p.mention.left_raw) + "\t" + sanitize(p.mention.right_raw) + "\t" +
               sanitize(p.entity_id) + "\t" +
               (p.label.has_value() ? std::to_string(*p.label) : "") + "\t" +
               provenance_name(p.provenance) + "\n";
    }
    write_file(path, out);
}

std::vector<LabeledPair> load_pairs(const std::filesystem::path& path, std::size_t window) {
    std::vector<LabeledPair> pairs;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split_tabs(lines[i]);
        if (f.size() != 7) {
            throw ParseError("pairs file line " + std::to_string(i + 1) + ": expected 7 fields, got " +
                             std::to_string(f.size()));
        }
        LabeledPair p;
        p.mention = build_mention_context(f[0], f[1], f[2], f[3], window);
        p.entity_id = f[4];
        if (!f[5].empty()) {
            const long long label = parse_int(f[5], "label");
            if (label != 0 && label != 1) {
                throw ParseError("pairs file line " + std::to_string(i + 1) + ": label must be 0 or 1");
            }
            p.label = static_cast<int>(label);
        }
        p.provenance = parse_provenance(f[6]);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

void save_mentions(const std::vector<MentionContext>& mentions,
                   const std::filesystem::path& path) {
    std::string out;
    for (const auto& m : mentions) {
        out += sanitize(m.id) + "\t" + sanitize(m.surface) + "\t" + sanitize(m.left_raw) + "\t" +
               sanitize(m.right_raw) + "\n";
    }
    write_file(path, out);
}

std::vector<MentionContext> load_mentions(const std::filesystem::path& path, std::size_t window) {
    std::vector<MentionContext> mentions;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split_tabs(lines[i]);
        if (f.size() != 4) {
            throw ParseError("mentions file line " + std::to_string(i + 1) +
                             ": expected 4 fields, got " + std::to_string(f.size()));
        }
        mentions.push_back(build_mention_context(f[0], f[1], f[2], f[3], window));
    }
    return mentions;
}

void save_gold(const std::vector<std::pair<std::string, std::string>>& gold,
               const std::filesystem::path& path) {
    std::string out;
    for (const auto& [mention_id, entity_id] : gold) {
        out += sanitize(mention_id) + "\t" + sanitize(entity_id) + "\n";
    }
    write_file(path, out);
}

std::vector<std::pair<std::string, std::string>> load_gold(const std::filesystem::path& path) {
    std::vector<std::pair<std::string, std::string>> gold;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split_tabs(lines[i]);
        if (f.size() != 2) {
            throw ParseError("gold file line " + std::to_string(i + 1) + ": expected 2 fields, got " +
                             std::to_string(f.size()));
        }
        gold.emplace_back(f[0], f[1]);
    }
    return gold;
}

}  // namespace jel
