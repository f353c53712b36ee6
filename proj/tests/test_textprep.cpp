#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "jel/textio.hpp"
#include "jel/textprep.hpp"

using namespace jel;

namespace {

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() / ("jel_textprep_" + stem + ".tsv");
}

// Independent n-gram enumerator: every token char_tokens must emit, with
// duplicates, in generation order. Kept deliberately dumb.
std::vector<std::string> enumerate_tokens_with_repeats(const NormalizedName& name) {
    std::vector<std::string> out;
    std::string padded = "*" + name.joined + "*";
    for (std::size_t n = 2; n <= 5; ++n) {
        if (padded.size() < n) continue;
        for (std::size_t i = 0; i + n <= padded.size(); ++i) out.push_back(padded.substr(i, n));
    }
    for (const auto& w : name.words) out.push_back("*" + w + "*");
    return out;
}

std::vector<std::string> dedup_in_order(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& t : tokens)
        if (seen.insert(t).second) out.push_back(t);
    return out;
}

std::string random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<int> ch('a', 'z');
    std::string w(len(rng), ' ');
    for (auto& c : w) c = static_cast<char>(ch(rng));
    return w;
}

}  // namespace

TEST_CASE("normalize_name lowercases, strips punctuation and rewrites suffixes") {
    auto n = normalize_name("PayPal Holdings, Inc.");
    CHECK(n.joined == "paypalhlds");
    CHECK(n.words == std::vector<std::string>{"paypal", "hlds"});

    auto ibm = normalize_name("IBM");
    CHECK(ibm.joined == "ibm");
    CHECK(ibm.words == std::vector<std::string>{"ibm"});

    auto acma = normalize_name("Acma Furniture, LLC");
    CHECK(acma.joined == "acmafurniture");
    CHECK(acma.words == std::vector<std::string>{"acma", "furniture"});
}

TEST_CASE("normalize_name flags inputs that clean away to nothing") {
    CHECK(normalize_name("").degenerate());
    CHECK(normalize_name("!!! ...").degenerate());
    CHECK(normalize_name("Inc.").degenerate());  // suffix-only name drops entirely
    CHECK_FALSE(normalize_name("x").degenerate());
}

TEST_CASE("normalize_name applies the suffix map per word") {
    auto n = normalize_name("Frob Technologies International Ltd");
    CHECK(n.words == std::vector<std::string>{"frob", "tech", "intl"});
    CHECK(n.joined == "frobtechintl");
}

TEST_CASE("char_tokens of a two-letter name enumerates exactly") {
    auto tokens = char_tokens("ab");
    std::vector<std::string> expected = {"*a", "ab", "b*", "*ab", "ab*", "*ab*"};
    CHECK(tokens == expected);
}

TEST_CASE("char_tokens covers the documented subword inventory") {
    auto tokens = char_tokens("PayPal Holdings, Inc.");
    std::set<std::string> set(tokens.begin(), tokens.end());
    CHECK(set.count("*p"));
    CHECK(set.count("lhlds"));
    CHECK(set.count("hlds*"));
    CHECK(set.count("*paypal*"));
    CHECK(set.count("*hlds*"));
    CHECK(char_tokens("???").empty());
}

TEST_CASE("char_tokens matches a brute-force enumeration on random names") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> word_count(1, 4);
    for (int iter = 0; iter < 200; ++iter) {
        std::string raw;
        std::size_t words = word_count(rng);
        for (std::size_t w = 0; w < words; ++w) {
            if (w) raw += ' ';
            raw += random_word(rng, 1, 9);
        }
        auto name = normalize_name(raw);
        auto repeats = enumerate_tokens_with_repeats(name);

        // Pre-dedup count follows the sliding-window formula over the padded
        // joined string plus one token per word.
        std::size_t L = name.joined.size() + 2;
        std::size_t expected_repeats = 0;
        for (std::size_t n = 2; n <= 5; ++n) expected_repeats += (L >= n) ? L - n + 1 : 0;
        expected_repeats += name.words.size();
        CHECK(repeats.size() == expected_repeats);

        CHECK(char_tokens(raw) == dedup_in_order(repeats));
    }
}

TEST_CASE("every char token is a short n-gram or a star-padded word") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 100; ++iter) {
        std::string raw = random_word(rng, 1, 12) + " " + random_word(rng, 1, 12);
        for (const auto& t : char_tokens(raw)) {
            bool ngram_sized = t.size() >= 2 && t.size() <= 5;
            bool padded_word = t.size() >= 3 && t.front() == '*' && t.back() == '*';
            CHECK((ngram_sized || padded_word));
        }
    }
}

TEST_CASE("frozen featurization only ever emits build-time indices") {
    CharVocab vocab;
    auto built = featurize_chars_build("Acma Furniture, LLC", vocab);
    CHECK_FALSE(built.empty());
    CHECK(vocab.size() > 0);

    // Overlapping name: frozen output must be a subset of what build mode
    // would produce, and every index must already exist in the vocab.
    auto frozen = featurize_chars("Acma Retail", vocab);
    CharVocab scratch;
    auto full = featurize_chars_build("Acma Retail", scratch);
    CHECK(frozen.indices.size() <= full.indices.size());
    for (auto idx : frozen.indices) CHECK(idx < vocab.size());

    // A disjoint alphabet yields nothing under the frozen vocab.
    CHECK(featurize_chars("zzzz", vocab).empty());
}

TEST_CASE("names that normalize identically featurize identically") {
    CharVocab vocab;
    auto a = featurize_chars_build("PayPal Holdings, Inc.", vocab);
    auto b = featurize_chars("paypal hlds", vocab);
    auto c = featurize_chars("PAYPAL HOLDINGS CORP", vocab);
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("feature indices are sorted, unique and within the vocab") {
    std::mt19937_64 rng(99);
    CharVocab vocab;
    for (int iter = 0; iter < 50; ++iter) {
        std::string raw = random_word(rng, 2, 8) + " " + random_word(rng, 2, 8);
        auto fv = featurize_chars_build(raw, vocab);
        CHECK(std::is_sorted(fv.indices.begin(), fv.indices.end()));
        CHECK(std::adjacent_find(fv.indices.begin(), fv.indices.end()) == fv.indices.end());
        for (auto idx : fv.indices) CHECK(idx < vocab.size());
    }
}

TEST_CASE("tokenize lowercases, strips punctuation and splits") {
    CHECK(tokenize("Acma filed, for bankruptcy.") ==
          std::vector<std::string>{"acma", "filed", "for", "bankruptcy"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("  \t ").empty());

    // Re-tokenizing the joined token stream is a fixed point.
    auto words = tokenize("The Quick, Brown Fox; 42 jumps!");
    CHECK(tokenize(join(words, " ")) == words);
}

TEST_CASE("CharVocab assigns dense insertion-order indices and round-trips") {
    CharVocab vocab;
    CHECK(vocab.add("ab") == 0);
    CHECK(vocab.add("bc") == 1);
    CHECK(vocab.add("ab") == 0);
    CHECK(vocab.size() == 2);
    CHECK(vocab.find("bc") == 1);
    CHECK(vocab.find("zz") == -1);
    CHECK(vocab.token(0) == "ab");

    auto path = temp_file("vocab");
    vocab.save(path);
    auto loaded = CharVocab::load(path);
    CHECK(loaded.size() == vocab.size());
    CHECK(loaded.find("ab") == 0);
    CHECK(loaded.find("bc") == 1);
    std::filesystem::remove(path);
}

TEST_CASE("tf-idf scores follow tf times log inverse document frequency") {
    TfIdfModel model = TfIdfModel::fit({{"acma", "filed"}, {"filed", "report"}});
    CHECK(model.doc_count() == 2);
    CHECK(model.df("acma") == 1);
    CHECK(model.df("filed") == 2);
    CHECK(model.df("nowhere") == 0);

    // tf=3 for a word seen in one of two documents.
    auto scored = tfidf_scores({"acma", "acma", "acma"}, model);
    REQUIRE(scored.size() == 1);
    CHECK(scored[0].word == "acma");
    CHECK(scored[0].score == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(scored[0].score == doctest::Approx(2.0794).epsilon(1e-4));

    // A word in every document scores exactly zero.
    auto common = tfidf_scores({"filed"}, model);
    REQUIRE(common.size() == 1);
    CHECK(common[0].score == 0.0);

    // Unknown words fall back to df=1.
    auto unknown = tfidf_scores({"novel"}, model);
    REQUIRE(unknown.size() == 1);
    CHECK(unknown[0].score == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    CHECK(tfidf_scores({}, model).empty());
}

TEST_CASE("tf-idf score is zero exactly for corpus-wide words") {
    std::mt19937_64 rng(7);
    std::vector<std::string> pool = {"alpha", "beta", "gamma", "delta", "omni"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<std::vector<std::string>> docs(3);
        for (auto& d : docs) {
            d.push_back("omni");  // guaranteed df = N
            for (int j = 0; j < 4; ++j) d.push_back(pool[pick(rng)]);
        }
        auto model = TfIdfModel::fit(docs);
        for (const auto& doc : docs)
            for (const auto& sw : tfidf_scores(doc, model))
                CHECK((sw.score == 0.0) == (model.df(sw.word) == model.doc_count()));
    }
}

TEST_CASE("tfidf_scores lists each distinct word once, in first appearance order") {
    TfIdfModel model = TfIdfModel::fit({{"a"}, {"b"}});
    auto scored = tfidf_scores({"b", "a", "b", "c"}, model);
    REQUIRE(scored.size() == 3);
    CHECK(scored[0].word == "b");
    CHECK(scored[1].word == "a");
    CHECK(scored[2].word == "c");
    CHECK(scored[0].score == doctest::Approx(2.0 * std::log(2.0)));  // tf=2
}

TEST_CASE("top_k_words ranks by score with lexicographic ties") {
    std::vector<ScoredWord> scored;
    for (int i = 0; i < 12; ++i) scored.push_back({"w" + std::to_string(i), static_cast<double>(i)});
    auto top = top_k_words(scored, 10);
    REQUIRE(top.size() == 10);
    CHECK(top.front() == "w11");

    auto all = top_k_words({{"a", 1.0}, {"b", 2.0}, {"c", 0.5}, {"d", 3.0}}, 10);
    CHECK(all == std::vector<std::string>{"d", "b", "a", "c"});

    auto tied = top_k_words({{"pear", 1.0}, {"apple", 1.0}, {"fig", 2.0}}, 2);
    CHECK(tied == std::vector<std::string>{"fig", "apple"});
}

TEST_CASE("TfIdfModel round-trips through its file format") {
    auto model = TfIdfModel::fit({{"acma", "filed"}, {"filed"}, {"report", "filed"}});
    auto path = temp_file("tfidf");
    model.save(path);
    auto loaded = TfIdfModel::load(path);
    CHECK(loaded.doc_count() == 3);
    CHECK(loaded.df("filed") == 3);
    CHECK(loaded.df("acma") == 1);
    CHECK(loaded.idf("filed") == model.idf("filed"));
    CHECK(loaded.idf("missing") == model.idf("missing"));
    std::filesystem::remove(path);
}

TEST_CASE("vocab loader rejects non-dense index files") {
    auto path = temp_file("badvocab");
    write_file(path, "ab\t0\nbc\t7\n");
    CHECK_THROWS_AS(CharVocab::load(path), ParseError);
    std::filesystem::remove(path);
}

// --- text io plumbing ------------------------------------------------------

TEST_CASE("format_double and parse_double round-trip bit-exactly") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> values = {0.0,    1.0,       -1.0,   0.1,  1.0 / 3.0,
                                  1e-300, 1.2345e17, -2.5e-7, 42.0, 3.141592653589793};
    for (int i = 0; i < 100; ++i) values.push_back(unit(rng) * std::pow(10.0, i % 30 - 15));
    for (double v : values) {
        double back = parse_double(format_double(v), "test");
        CHECK(back == v);
    }
}

TEST_CASE("parse_double and parse_int reject malformed text with context") {
    CHECK_THROWS_WITH_AS(parse_double("abc", "weight"), "bad number for weight: 'abc'", ParseError);
    CHECK_THROWS_AS(parse_double("1.5x", "weight"), ParseError);
    CHECK(parse_int("-42", "count") == -42);
    CHECK_THROWS_AS(parse_int("12.5", "count"), ParseError);
    CHECK_THROWS_AS(parse_int("", "count"), ParseError);
}

TEST_CASE("split_tabs preserves empty fields, split_spaces collapses runs") {
    auto fields = split_tabs("a\t\tb\t");
    REQUIRE(fields.size() == 4);
    CHECK(fields[0] == "a");
    CHECK(fields[1] == "");
    CHECK(fields[2] == "b");
    CHECK(fields[3] == "");

    CHECK(split_spaces("  a   b  c ") == std::vector<std::string>{"a", "b", "c"});
    CHECK(join({"x", "y", "z"}, "\t") == "x\ty\tz");
}

TEST_CASE("read_lines reports unreadable paths") {
    CHECK_THROWS_AS(read_lines("/nonexistent/jel/file.tsv"), ParseError);
}
