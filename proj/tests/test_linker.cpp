#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "jel/linker.hpp"
#include "jel/textio.hpp"

using namespace jel;

namespace {

LinkerConfig tiny_config() {
    LinkerConfig cfg;
    cfg.h_wide = 4;
    cfg.h_lstm = 3;
    cfg.window = 4;
    return cfg;
}

void zero_params(LinkerModel& model) {
    for (auto* p : model.params()) std::fill(p->value.data.begin(), p->value.data.end(), 0.0);
}

std::filesystem::path temp_path(const std::string& stem) {
    return std::filesystem::temp_directory_path() / ("jel_linker_" + stem + ".txt");
}

EmbeddingTable two_dim_words() {
    EmbeddingTable words(2);
    words.put("alpha", {0.3, -0.2});
    words.put("beta", {-0.5, 0.8});
    words.put("gamma", {0.9, 0.1});
    return words;
}

}  // namespace

TEST_CASE("mention context windows keep the mention words on both sides") {
    auto ctx = build_mention_context("m1", "PayPal Holdings", "We paid with",
                                     "for the order yesterday", 4);
    CHECK(ctx.id == "m1");
    CHECK(ctx.surface == "PayPal Holdings");
    CHECK(ctx.left_raw == "We paid with");
    CHECK(ctx.right_raw == "for the order yesterday");
    CHECK(ctx.left_tokens == std::vector<std::string>{"paid", "with", "paypal", "holdings"});
    CHECK(ctx.right_tokens == std::vector<std::string>{"paypal", "holdings", "for", "the"});

    // A wide window keeps everything.
    auto wide = build_mention_context("m1", "PayPal Holdings", "We paid with", "for the order", 10);
    CHECK(wide.left_tokens ==
          std::vector<std::string>{"we", "paid", "with", "paypal", "holdings"});
    CHECK(wide.right_tokens ==
          std::vector<std::string>{"paypal", "holdings", "for", "the", "order"});

    // Window zero empties both sides.
    auto none = build_mention_context("m1", "PayPal", "left", "right", 0);
    CHECK(none.left_tokens.empty());
    CHECK(none.right_tokens.empty());
}

TEST_CASE("model construction validates its configuration") {
    LinkerConfig cfg = tiny_config();

    LinkerConfig bad = cfg;
    bad.lambda_syx = -1.0;
    CHECK_THROWS_WITH_AS(LinkerModel::create(bad, 10, 2),
                         "linker config: lambdas must be >= 0 and not both 0",
                         std::invalid_argument);
    bad = cfg;
    bad.lambda_syx = 0.0;
    bad.lambda_smc = 0.0;
    CHECK_THROWS_WITH_AS(LinkerModel::create(bad, 10, 2),
                         "linker config: lambdas must be >= 0 and not both 0",
                         std::invalid_argument);
    bad = cfg;
    bad.margin = 0.0;
    CHECK_THROWS_WITH_AS(LinkerModel::create(bad, 10, 2), "linker config: margin must be > 0",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(LinkerModel::create(cfg, 0, 2),
                         "linker config: empty character vocabulary", std::invalid_argument);
    CHECK_THROWS_WITH_AS(LinkerModel::create(cfg, 10, 0),
                         "linker config: word dimension must be > 0", std::invalid_argument);

    auto model = LinkerModel::create(cfg, 10, 2);
    CHECK(model.wide.w.rows() == 10);
    CHECK(model.wide.w.cols() == cfg.h_wide);
    CHECK(model.wide.b.rows() == cfg.h_wide);
    CHECK(model.deep.fc_w.rows() == 2);
    CHECK(model.deep.fc_w.cols() == 2 * cfg.h_lstm);
    CHECK(model.deep.lstm_left.hidden_dim() == cfg.h_lstm);
    CHECK(model.deep.lstm_right.input_dim() == 2);
}

TEST_CASE("character-arm distance") {
    SUBCASE("identical feature vectors sit at exactly zero for any parameters") {
        std::mt19937_64 seeds(3);
        for (int iter = 0; iter < 5; ++iter) {
            LinkerConfig cfg = tiny_config();
            cfg.seed = seeds();
            auto model = LinkerModel::create(cfg, 12, 2);
            CharFeatureVector f;
            f.indices = {0, 3, 7, 11};
            CHECK(wide_distance(model, f, f) == 0.0);
            CharFeatureVector g;
            g.indices = {1, 2};
            CHECK(wide_distance(model, f, g) == wide_distance(model, g, f));
            CHECK(wide_distance(model, f, g) > 0.0);
        }
    }

    SUBCASE("disjoint features reduce to a hand-built row sum") {
        LinkerConfig cfg = tiny_config();
        cfg.h_wide = 2;
        auto model = LinkerModel::create(cfg, 3, 2);
        // Arms share one layer: arm(f) = b + sum of the active rows of w.
        model.wide.w.value.data = {1.0, 2.0,   // row 0
                                   3.0, 5.0,   // row 1
                                   0.5, -1.0}; // row 2
        model.wide.b.value.data = {10.0, 20.0};
        CharFeatureVector a, b;
        a.indices = {0, 1};  // arm (14, 27)
        b.indices = {2};     // arm (10.5, 19)
        const double expected = std::sqrt(3.5 * 3.5 + 8.0 * 8.0);
        CHECK(wide_distance(model, a, b) == doctest::Approx(expected).epsilon(1e-15));

        // An empty feature vector leaves just the bias.
        CharFeatureVector none;
        CHECK(wide_distance(model, none, none) == 0.0);
        const double bias_only = std::sqrt(4.0 * 4.0 + 7.0 * 7.0);  // (14,27) vs (10,20)
        CHECK(wide_distance(model, a, none) == doctest::Approx(bias_only).epsilon(1e-15));
    }
}

TEST_CASE("context encoding") {
    SUBCASE("zeroed network passes the output bias through") {
        auto model = LinkerModel::create(tiny_config(), 6, 2);
        zero_params(model);
        model.deep.fc_b.value.data = {0.7, -0.3};
        EmbeddingTable words(2);  // empty: every token is out of vocabulary
        auto ctx = build_mention_context("m1", "Acme", "some words here", "and more", 4);
        Vec v = encode_mention(model, ctx, words);
        CHECK(v == Vec{0.7, -0.3});
    }

    SUBCASE("out-of-vocabulary words act as zero vectors") {
        LinkerConfig cfg = tiny_config();
        cfg.seed = 17;
        auto model = LinkerModel::create(cfg, 6, 2);
        EmbeddingTable words(2);
        words.put("known", {0.0, 0.0});
        auto with_zero_vec = build_mention_context("m1", "X", "known", "known", 3);
        auto with_oov = build_mention_context("m1", "X", "mystery", "mystery", 3);
        // The mention word "x" is out of vocabulary in both contexts, and
        // "known" carries the zero vector, so the LSTM sees identical inputs.
        CHECK(encode_mention(model, with_zero_vec, words) ==
              encode_mention(model, with_oov, words));
    }

    SUBCASE("output dimension is the word dimension") {
        for (std::size_t dim : {1, 2, 5}) {
            auto model = LinkerModel::create(tiny_config(), 6, dim);
            EmbeddingTable words(dim);
            auto ctx = build_mention_context("m1", "Acme", "a b", "c", 3);
            CHECK(encode_mention(model, ctx, words).size() == dim);
        }
    }

    SUBCASE("a single-side context is fine, both sides empty is an error") {
        auto model = LinkerModel::create(tiny_config(), 6, 2);
        auto words = two_dim_words();
        auto left_only = build_mention_context("m1", "", "alpha beta", "", 3);
        CHECK(encode_mention(model, left_only, words).size() == 2);

        MentionContext empty;
        empty.id = "m9";
        CHECK_THROWS_WITH_AS(encode_mention(model, empty, words),
                             "encode_mention: mention 'm9' has no usable context tokens",
                             std::invalid_argument);
    }

    SUBCASE("encoding is deterministic") {
        auto model = LinkerModel::create(tiny_config(), 6, 2);
        auto words = two_dim_words();
        auto ctx = build_mention_context("m1", "Acme", "alpha beta", "gamma", 4);
        CHECK(encode_mention(model, ctx, words) == encode_mention(model, ctx, words));
    }
}

TEST_CASE("distance composition") {
    Vec a = {0.0, 0.0}, b = {3.0, 4.0};
    CHECK(semantic_distance(a, b) == 5.0);
    Vec c = {1.0};
    CHECK_THROWS_WITH_AS(semantic_distance(a, c), "semantic_distance: dimension mismatch",
                         std::invalid_argument);

    LinkerConfig cfg;
    cfg.lambda_syx = 1.0;
    cfg.lambda_smc = 0.0;
    CHECK(combined_distance(2.0, 4.0, cfg) == 2.0);
    cfg.lambda_syx = 0.0;
    cfg.lambda_smc = 1.0;
    CHECK(combined_distance(2.0, 4.0, cfg) == 4.0);
    cfg.lambda_syx = 0.5;
    cfg.lambda_smc = 0.5;
    CHECK(combined_distance(2.0, 4.0, cfg) == 3.0);
}

TEST_CASE("contrastive loss values") {
    CHECK(contrastive_loss(0, 1.0, 1.0) == 0.0);   // slack clamps at the margin
    CHECK(contrastive_loss(0, 2.5, 1.0) == 0.0);
    CHECK(contrastive_loss(1, 2.0, 1.0) == 2.0);   // D^2 / 2
    CHECK(contrastive_loss(1, 0.0, 1.0) == 0.0);
    CHECK(contrastive_loss(0, 0.4, 1.0) == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(contrastive_loss(0, 0.0, 1.0) == 0.5);   // full margin violation
    CHECK_THROWS_WITH_AS(contrastive_loss(2, 1.0, 1.0), "contrastive_loss: label must be 0 or 1",
                         std::invalid_argument);
}

TEST_CASE("pair scoring composes the two distances") {
    LinkerConfig cfg = tiny_config();
    cfg.lambda_syx = 2.0;
    cfg.lambda_smc = 0.5;
    CharVocab vocab;
    featurize_chars_build("Acme Retail", vocab);
    featurize_chars_build("Zenith Labs", vocab);
    auto model = LinkerModel::create(cfg, vocab.size(), 2);
    auto words = two_dim_words();

    EmbeddingTable entity_vecs(2);
    entity_vecs.put("e1", {0.2, -0.1});

    Entity e1{"e1", "Acme Retail", "", ""};
    auto ctx = build_mention_context("m1", "Acme", "alpha beta", "gamma", 4);
    PairScore s = score_pair(model, ctx, e1, vocab, words, entity_vecs);
    CHECK(s.d_w == cfg.lambda_syx * s.d_syx + cfg.lambda_smc * s.d_smc);
    CHECK(s.d_syx > 0.0);

    // A surface matching the name zeroes the character distance exactly.
    auto exact = build_mention_context("m2", "Acme Retail", "alpha", "gamma", 4);
    CHECK(score_pair(model, exact, e1, vocab, words, entity_vecs).d_syx == 0.0);

    // Entities without a trained vector score against the zero vector.
    Entity e2{"e2", "Zenith Labs", "", ""};
    PairScore missing = score_pair(model, ctx, e2, vocab, words, entity_vecs);
    Vec v_m = encode_mention(model, ctx, words);
    Vec zero(2, 0.0);
    CHECK(missing.d_smc == semantic_distance(v_m, zero));
}

TEST_CASE("full objective gradients match finite differences") {
    std::mt19937_64 seeds(211);
    auto words = two_dim_words();
    for (int label : {1, 0}) {
        LinkerConfig cfg = tiny_config();
        cfg.h_wide = 3;
        cfg.h_lstm = 2;
        cfg.seed = seeds();
        auto model = LinkerModel::create(cfg, 5, 2);
        auto ctx = build_mention_context("m1", "Ab", "alpha beta", "gamma", 3);

        CharFeatureVector t_m, t_e;
        t_m.indices = {0, 2};
        t_e.indices = {1, 4};
        Vec v_e = {0.4, -0.6};

        // Margin chosen after the fact so the negative branch keeps a wide
        // active slack: no kink within the finite-difference step.
        double margin = 1.0;
        if (label == 0) {
            ad::Tape probe;
            double d = probe.scalar(probe.add(
                probe.scale(probe.euclidean_distance(
                                probe.row_sum(model.wide.w, model.wide.b, t_m.indices),
                                probe.row_sum(model.wide.w, model.wide.b, t_e.indices)),
                            cfg.lambda_syx),
                probe.scale(probe.euclidean_distance(probe.constant(encode_mention(model, ctx, words)),
                                                     probe.constant(v_e)),
                            cfg.lambda_smc)));
            margin = d + 0.5;
        }

        auto loss = [&](bool with_grad) {
            ad::Tape tape;
            const ad::NodeId arm_m = tape.row_sum(model.wide.w, model.wide.b, t_m.indices);
            const ad::NodeId arm_e = tape.row_sum(model.wide.w, model.wide.b, t_e.indices);
            const ad::NodeId d_syx = tape.euclidean_distance(arm_m, arm_e);

            auto encode_side = [&](ad::LstmParams& lstm, ad::Param& attn,
                                   const std::vector<std::string>& tokens, bool reversed) {
                std::vector<ad::NodeId> hidden;
                ad::NodeId state = ad::kNoNode;
                for (std::size_t i = 0; i < tokens.size(); ++i) {
                    const std::string& tok = tokens[reversed ? tokens.size() - 1 - i : i];
                    const Vec* wv = words.lookup(tok);
                    const ad::NodeId x =
                        wv ? tape.constant(*wv) : tape.constant(Vec(lstm.input_dim(), 0.0));
                    state = tape.lstm_step(lstm, x, state);
                    hidden.push_back(tape.slice(state, 0, lstm.hidden_dim()));
                }
                return tape.attention_pool(attn, hidden);
            };
            const ad::NodeId g_left =
                encode_side(model.deep.lstm_left, model.deep.attn_left, ctx.left_tokens, false);
            const ad::NodeId g_right =
                encode_side(model.deep.lstm_right, model.deep.attn_right, ctx.right_tokens, true);
            const ad::NodeId v_m =
                tape.linear(model.deep.fc_w, model.deep.fc_b, tape.concat(g_left, g_right));
            const ad::NodeId d_smc = tape.euclidean_distance(v_m, tape.constant(v_e));
            const ad::NodeId d_w = tape.add(tape.scale(d_syx, cfg.lambda_syx),
                                            tape.scale(d_smc, cfg.lambda_smc));
            ad::NodeId out;
            if (label == 1) {
                out = tape.scale(tape.square(d_w), 0.5);
            } else {
                out = tape.scale(
                    tape.square(tape.relu(tape.add_scalar(tape.scale(d_w, -1.0), margin))), 0.5);
            }
            if (with_grad) tape.backward(out);
            return tape.scalar(out);
        };

        REQUIRE(loss(false) > 1e-3);  // away from every kink
        auto all_params = model.params();
        auto report = ad::grad_check(loss, all_params, 1e-4);
        INFO("label ", label, " worst ", report.worst_param);
        CHECK(report.pass);
        CHECK(report.max_rel_error <= 1e-4);
    }
}

namespace {

struct ToyProblem {
    KnowledgeBase kb;
    CharVocab vocab;
    EmbeddingTable words = EmbeddingTable(2);
    EmbeddingTable entity_vecs = EmbeddingTable(2);
    std::vector<LabeledPair> pairs;
};

ToyProblem separable_toy() {
    ToyProblem toy;
    toy.kb.add({"acme", "Acme Retail", "shops and stores", "retail"});
    toy.kb.add({"zen", "Zenith Labs", "research lab", "health"});
    featurize_chars_build("Acme Retail", toy.vocab);
    featurize_chars_build("Zenith Labs", toy.vocab);

    toy.words.put("shops", {1.0, 0.1});
    toy.words.put("stores", {0.9, 0.0});
    toy.words.put("research", {0.0, 1.0});
    toy.words.put("lab", {0.1, 0.9});
    toy.entity_vecs.put("acme", {1.0, 0.0});
    toy.entity_vecs.put("zen", {0.0, 1.0});

    auto acme_ctx = build_mention_context("m1", "Acme Retail", "shops", "stores", 4);
    auto zen_ctx = build_mention_context("m2", "Zenith Labs", "research", "lab", 4);
    auto add_pair = [&](const MentionContext& ctx, const std::string& id, int label) {
        LabeledPair p;
        p.mention = ctx;
        p.entity_id = id;
        p.label = label;
        toy.pairs.push_back(p);
    };
    add_pair(acme_ctx, "acme", 1);
    add_pair(acme_ctx, "zen", 0);
    add_pair(zen_ctx, "zen", 1);
    add_pair(zen_ctx, "acme", 0);
    return toy;
}

LinkerConfig toy_config() {
    LinkerConfig cfg;
    cfg.h_wide = 8;
    cfg.h_lstm = 4;
    cfg.window = 4;
    cfg.epochs = 300;
    cfg.learning_rate = 0.2;
    cfg.batch_size = 4;
    return cfg;
}

}  // namespace

TEST_CASE("training drives a separable toy problem to near-zero loss") {
    ToyProblem toy = separable_toy();
    LinkerConfig cfg = toy_config();
    auto model = LinkerModel::create(cfg, toy.vocab.size(), 2);
    auto result = train_linker(model, toy.pairs, toy.kb, toy.vocab, toy.words, toy.entity_vecs);

    REQUIRE(result.epoch_mean_loss.size() == cfg.epochs);
    for (double loss : result.epoch_mean_loss) {
        CHECK(loss >= 0.0);
        CHECK(std::isfinite(loss));
    }
    CHECK(result.epoch_mean_loss.back() < 0.01);

    // The trained model ranks each mention's gold entity first.
    for (std::size_t i = 0; i < toy.pairs.size(); i += 2) {
        std::vector<const Entity*> candidates = {toy.kb.find("acme"), toy.kb.find("zen")};
        auto ranked = rank_candidates(model, toy.pairs[i].mention, candidates, toy.vocab,
                                      toy.words, toy.entity_vecs);
        CHECK(ranked[0].entity_id == toy.pairs[i].entity_id);
    }
}

TEST_CASE("training validates its inputs") {
    ToyProblem toy = separable_toy();
    auto model = LinkerModel::create(toy_config(), toy.vocab.size(), 2);

    CHECK_THROWS_WITH_AS(train_linker(model, {}, toy.kb, toy.vocab, toy.words, toy.entity_vecs),
                         "train_linker: no pairs", std::invalid_argument);

    auto unlabeled = toy.pairs;
    unlabeled[1].label.reset();
    CHECK_THROWS_WITH_AS(
        train_linker(model, unlabeled, toy.kb, toy.vocab, toy.words, toy.entity_vecs),
        "train_linker: unlabeled pair for mention 'm1'", std::invalid_argument);

    auto unknown = toy.pairs;
    unknown[2].entity_id = "ghost";
    CHECK_THROWS_WITH_AS(
        train_linker(model, unknown, toy.kb, toy.vocab, toy.words, toy.entity_vecs),
        "train_linker: unknown entity id 'ghost'", std::invalid_argument);
}

TEST_CASE("training is deterministic per seed") {
    ToyProblem toy = separable_toy();
    LinkerConfig cfg = toy_config();
    cfg.epochs = 10;

    auto run = [&](const std::filesystem::path& path) {
        auto model = LinkerModel::create(cfg, toy.vocab.size(), 2);
        auto result =
            train_linker(model, toy.pairs, toy.kb, toy.vocab, toy.words, toy.entity_vecs);
        save_linker(model, path);
        return result.epoch_mean_loss;
    };
    auto p1 = temp_path("det1");
    auto p2 = temp_path("det2");
    auto l1 = run(p1);
    auto l2 = run(p2);
    CHECK(l1 == l2);  // bit-exact loss trace
    CHECK(read_lines(p1) == read_lines(p2));
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("candidate ranking") {
    ToyProblem toy = separable_toy();
    LinkerConfig cfg = toy_config();
    cfg.seed = 5;
    auto model = LinkerModel::create(cfg, toy.vocab.size(), 2);
    auto ctx = build_mention_context("m1", "Acme Retail", "shops", "stores", 4);

    SUBCASE("a single candidate is returned with its combined distance") {
        std::vector<const Entity*> one = {toy.kb.find("acme")};
        auto ranked = rank_candidates(model, ctx, one, toy.vocab, toy.words, toy.entity_vecs);
        REQUIRE(ranked.size() == 1);
        CHECK(ranked[0].entity_id == "acme");
        CHECK(ranked[0].d_w ==
              combined_distance(ranked[0].d_syx, ranked[0].d_smc, cfg));
        PairScore s =
            score_pair(model, ctx, *toy.kb.find("acme"), toy.vocab, toy.words, toy.entity_vecs);
        CHECK(ranked[0].d_w == s.d_w);
    }

    SUBCASE("equal-distance duplicates order by entity id") {
        KnowledgeBase twins;
        twins.add({"b-twin", "Lumier", "", ""});
        twins.add({"a-twin", "Lumier", "", ""});
        EmbeddingTable vecs(2);
        vecs.put("a-twin", {0.3, 0.3});
        vecs.put("b-twin", {0.3, 0.3});
        std::vector<const Entity*> candidates = {twins.find("b-twin"), twins.find("a-twin")};
        auto ranked = rank_candidates(model, ctx, candidates, toy.vocab, toy.words, vecs);
        REQUIRE(ranked.size() == 2);
        CHECK(ranked[0].d_w == ranked[1].d_w);
        CHECK(ranked[0].entity_id == "a-twin");
        CHECK(ranked[1].entity_id == "b-twin");
    }

    SUBCASE("the ranking is a sorted permutation of the candidate set") {
        std::vector<const Entity*> candidates = {toy.kb.find("zen"), toy.kb.find("acme")};
        auto ranked = rank_candidates(model, ctx, candidates, toy.vocab, toy.words,
                                      toy.entity_vecs);
        REQUIRE(ranked.size() == 2);
        CHECK(ranked[0].d_w <= ranked[1].d_w);
        std::vector<std::string> ids = {ranked[0].entity_id, ranked[1].entity_id};
        std::sort(ids.begin(), ids.end());
        CHECK(ids == std::vector<std::string>{"acme", "zen"});
    }

    SUBCASE("an empty candidate set is rejected") {
        CHECK_THROWS_WITH_AS(
            rank_candidates(model, ctx, {}, toy.vocab, toy.words, toy.entity_vecs),
            "rank_candidates: no candidates", std::invalid_argument);
    }
}

TEST_CASE("checkpoints restore the model exactly") {
    ToyProblem toy = separable_toy();
    LinkerConfig cfg = toy_config();
    cfg.lambda_syx = 0.7;
    cfg.lambda_smc = 1.3;
    cfg.margin = 2.5;
    cfg.epochs = 4;
    cfg.seed = 77;
    auto model = LinkerModel::create(cfg, toy.vocab.size(), 2);
    train_linker(model, toy.pairs, toy.kb, toy.vocab, toy.words, toy.entity_vecs);

    auto path = temp_path("ckpt");
    save_linker(model, path);
    auto restored = load_linker(path);

    CHECK(restored.cfg.lambda_syx == cfg.lambda_syx);
    CHECK(restored.cfg.lambda_smc == cfg.lambda_smc);
    CHECK(restored.cfg.margin == cfg.margin);
    CHECK(restored.cfg.window == cfg.window);
    CHECK(restored.cfg.h_wide == cfg.h_wide);
    CHECK(restored.cfg.h_lstm == cfg.h_lstm);
    CHECK(restored.cfg.seed == cfg.seed);
    CHECK(restored.vocab_size == toy.vocab.size());
    CHECK(restored.word_dim == 2);

    // Bit-exact scoring after the round trip.
    auto ctx = build_mention_context("m1", "Acme Retail", "shops", "stores", 4);
    PairScore before =
        score_pair(model, ctx, *toy.kb.find("acme"), toy.vocab, toy.words, toy.entity_vecs);
    PairScore after =
        score_pair(restored, ctx, *toy.kb.find("acme"), toy.vocab, toy.words, toy.entity_vecs);
    CHECK(before.d_syx == after.d_syx);
    CHECK(before.d_smc == after.d_smc);
    CHECK(before.d_w == after.d_w);

    SUBCASE("unknown config keys are rejected") {
        auto lines = read_lines(path);
        for (auto& line : lines) {
            if (line.rfind("config margin", 0) == 0) line = "config bogus 2.5";
        }
        std::string mutated;
        for (const auto& l : lines) mutated += l + "\n";
        write_file(path, mutated);
        CHECK_THROWS_WITH_AS(load_linker(path), "unknown checkpoint config key: bogus",
                             ParseError);
    }

    SUBCASE("non-checkpoint files are rejected") {
        write_file(path, "just some text\n");
        CHECK_THROWS_WITH_AS(load_linker(path), doctest::Contains("not a jel-tensors file"),
                             ParseError);
    }

    std::filesystem::remove(path);
}
