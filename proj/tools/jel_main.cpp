// jel: batch pipeline driver. Subcommands cover corpus synthesis, KB
// ingestion, both training stages, linking, weak labeling and evaluation.
// Every run is reproducible from its --seed; failed runs remove the files
// they started writing.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "jel/autodiff.hpp"
#include "jel/baselines.hpp"
#include "jel/blocking.hpp"
#include "jel/entity_embed.hpp"
#include "jel/evalkit.hpp"
#include "jel/kb.hpp"
#include "jel/linker.hpp"
#include "jel/mention.hpp"
#include "jel/textio.hpp"
#include "jel/textprep.hpp"
#include "jel/vectors.hpp"
#include "jel/weaklabel.hpp"

namespace fs = std::filesystem;
using namespace jel;

namespace {

/// Removes tracked files unless the command committed, so failures do not
/// leave partial outputs behind.
class OutputGuard {
public:
    ~OutputGuard() {
        if (committed_) return;
        for (const auto& p : paths_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
    fs::path track(fs::path p) {
        paths_.push_back(p);
        return paths_.back();
    }
    void commit() { committed_ = true; }

private:
    std::vector<fs::path> paths_;
    bool committed_ = false;
};

std::vector<std::string> context_words(const MentionContext& m) {
    auto words = tokenize(m.left_raw);
    const auto right = tokenize(m.right_raw);
    words.insert(words.end(), right.begin(), right.end());
    return words;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    std::string out;
    SynthSpec spec;
};

void run_synth(const SynthArgs& a) {
    fs::create_directories(a.out);
    OutputGuard guard;
    const SyntheticCorpus corpus = generate_synthetic_corpus(a.spec);
    const auto pairs = build_synthetic_pairs(corpus, a.spec.seed);

    save_kb(corpus.kb, guard.track(fs::path(a.out) / "kb.tsv"));
    save_mentions(corpus.mentions, guard.track(fs::path(a.out) / "mentions.tsv"));
    save_gold(corpus.gold, guard.track(fs::path(a.out) / "gold.tsv"));
    save_embeddings(corpus.words, guard.track(fs::path(a.out) / "words.vec"));
    save_pairs(pairs, guard.track(fs::path(a.out) / "pairs.tsv"));
    guard.commit();

    std::cout << "entities\t" << corpus.kb.size() << "\n"
              << "mentions\t" << corpus.mentions.size() << "\n"
              << "pairs\t" << pairs.size() << "\n"
              << "words\t" << corpus.words.size() << "\n";
}

// ---------------------------------------------------------------------------
// ingest

struct IngestArgs {
    std::string kb;
    std::string out;
};

void run_ingest(const IngestArgs& a) {
    fs::create_directories(a.out);
    OutputGuard guard;
    const KnowledgeBase kb = load_kb(a.kb);

    CharVocab vocab;
    std::vector<std::vector<std::string>> docs;
    docs.reserve(kb.size());
    for (const auto& e : kb.entities()) {
        featurize_chars_build(e.name, vocab);
        docs.push_back(tokenize(e.description));
    }
    const TfIdfModel tfidf = TfIdfModel::fit(docs);

    vocab.save(guard.track(fs::path(a.out) / "char_vocab.tsv"));
    tfidf.save(guard.track(fs::path(a.out) / "tfidf.tsv"));
    guard.commit();

    std::cout << "entities\t" << kb.size() << "\n"
              << "char-vocab\t" << vocab.size() << "\n"
              << "tfidf-docs\t" << tfidf.doc_count() << "\n";
}

// ---------------------------------------------------------------------------
// train-embed

struct TrainEmbedArgs {
    std::string kb, words, tfidf, out;
    TripletConfig cfg;
};

void run_train_embed(const TrainEmbedArgs& a) {
    fs::create_directories(a.out);
    OutputGuard guard;
    const KnowledgeBase kb = load_kb(a.kb);
    const EmbeddingTable words = load_embeddings(a.words);
    const TfIdfModel tfidf = TfIdfModel::load(a.tfidf);

    const TripletBuildReport built = build_triplets(kb, words, tfidf, a.cfg);
    const EmbedTrainResult trained = train_entity_embeddings(built.triplets, words, kb, a.cfg);

    save_embeddings(trained.entities, guard.track(fs::path(a.out) / "entity_vecs.vec"));

    std::string trace = "epoch\tmean_loss\n";
    for (std::size_t i = 0; i < trained.epoch_mean_loss.size(); ++i) {
        trace += std::to_string(i) + "\t" + format_double(trained.epoch_mean_loss[i]) + "\n";
    }
    write_file(guard.track(fs::path(a.out) / "embed_loss.tsv"), trace);

    std::string report;
    for (const auto& id : built.skipped_entities) report += "no-triplets\t" + id + "\n";
    write_file(guard.track(fs::path(a.out) / "embed_report.tsv"), report);
    guard.commit();

    std::cout << "triplets\t" << built.triplets.size() << "\n"
              << "entities-embedded\t" << trained.entities.size() << "\n"
              << "entities-skipped\t" << built.skipped_entities.size() << "\n";
    if (!trained.epoch_mean_loss.empty()) {
        std::cout << "final-mean-loss\t" << format_double(trained.epoch_mean_loss.back()) << "\n";
    }
}

// ---------------------------------------------------------------------------
// train-link

struct TrainLinkArgs {
    std::string kb, pairs, words, entity_vecs, vocab, out;
    LinkerConfig cfg;
    bool balance = false;
};

void run_train_link(const TrainLinkArgs& a) {
    fs::create_directories(a.out);
    OutputGuard guard;
    const KnowledgeBase kb = load_kb(a.kb);
    const EmbeddingTable words = load_embeddings(a.words);
    const EmbeddingTable entity_vecs = load_embeddings(a.entity_vecs);
    const CharVocab vocab = CharVocab::load(a.vocab);
    if (entity_vecs.size() > 0 && entity_vecs.dim() != words.dim()) {
        throw std::invalid_argument("entity vector dimension does not match word vectors");
    }

    std::vector<LabeledPair> pairs = load_pairs(a.pairs, a.cfg.window);
    if (a.balance) pairs = balance_dataset(pairs, a.cfg.seed);
    const DatasetSplit split = split_dataset(pairs, a.cfg.seed);

    LinkerModel model = LinkerModel::create(a.cfg, vocab.size(), words.dim());
    const LinkTrainResult trained =
        train_linker(model, split.train, kb, vocab, words, entity_vecs);

    save_linker(model, guard.track(fs::path(a.out) / "linker.ckpt"));

    std::string trace = "epoch\tmean_loss\n";
    for (std::size_t i = 0; i < trained.epoch_mean_loss.size(); ++i) {
        trace += std::to_string(i) + "\t" + format_double(trained.epoch_mean_loss[i]) + "\n";
    }
    write_file(guard.track(fs::path(a.out) / "link_loss.tsv"), trace);

    // One row per mention id; a mention's pairs all live in one split.
    std::string splits;
    const auto emit = [&](const std::vector<LabeledPair>& bucket, const char* name) {
        std::vector<std::string> seen;
        for (const auto& p : bucket) {
            if (std::find(seen.begin(), seen.end(), p.mention.id) == seen.end()) {
                seen.push_back(p.mention.id);
                splits += p.mention.id + "\t" + name + "\n";
            }
        }
    };
    emit(split.train, "train");
    emit(split.valid, "valid");
    emit(split.test, "test");
    write_file(guard.track(fs::path(a.out) / "splits.tsv"), splits);
    guard.commit();

    std::cout << "pairs-train\t" << split.train.size() << "\n"
              << "pairs-valid\t" << split.valid.size() << "\n"
              << "pairs-test\t" << split.test.size() << "\n";
    if (!trained.epoch_mean_loss.empty()) {
        std::cout << "final-mean-loss\t" << format_double(trained.epoch_mean_loss.back()) << "\n";
    }
}

// ---------------------------------------------------------------------------
// link

struct LinkArgs {
    std::string kb, out, method = "jel";
    std::string mentions;     // ranking mode input
    std::string score_pairs;  // pair-scoring mode input
    std::string checkpoint, vocab, words, entity_vecs;  // jel artifacts
    std::string pairs, tfidf;                           // lr artifacts
    std::string splits, split;
    std::size_t block_threshold = 2;
    std::size_t top_k = 10;
    std::size_t window = 10;  // context window for non-jel methods
};

struct MethodScorer {
    // Distance-like score: lower is better. Baselines map similarity s to
    // 1 - s so every method ranks ascending.
    std::function<PairScore(const MentionContext&, const Entity&)> score;
};

MethodScorer make_scorer(const LinkArgs& a, const KnowledgeBase& kb,
                         std::optional<LinkerModel>& model, std::optional<CharVocab>& vocab,
                         std::optional<EmbeddingTable>& words,
                         std::optional<EmbeddingTable>& entity_vecs,
                         std::optional<TfIdfModel>& tfidf,
                         std::optional<LogisticModel>& lr_model, std::size_t& window_out) {
    MethodScorer scorer;
    if (a.method == "jel") {
        if (a.checkpoint.empty() || a.vocab.empty() || a.words.empty() || a.entity_vecs.empty()) {
            throw std::invalid_argument(
                "method jel needs --checkpoint, --vocab, --words and --entity-vecs");
        }
        model = load_linker(a.checkpoint);
        vocab = CharVocab::load(a.vocab);
        words = load_embeddings(a.words);
        entity_vecs = load_embeddings(a.entity_vecs);
        if (model->vocab_size != vocab->size()) {
            throw std::invalid_argument("checkpoint vocabulary size does not match --vocab");
        }
        window_out = model->cfg.window;
        scorer.score = [&model, &vocab, &words, &entity_vecs](const MentionContext& m,
                                                              const Entity& e) {
            return score_pair(*model, m, e, *vocab, *words, *entity_vecs);
        };
        return scorer;
    }
    window_out = a.window;
    if (a.method == "bigram" || a.method == "trigram") {
        const std::size_t n = a.method == "bigram" ? 2 : 3;
        scorer.score = [n](const MentionContext& m, const Entity& e) {
            PairScore s;
            s.d_w = 1.0 - ngram_cosine(m.surface, e.name, n);
            return s;
        };
        return scorer;
    }
    if (a.method == "jaccard-ctx" || a.method == "cosine-ctx") {
        const auto kind = a.method == "jaccard-ctx" ? ContextSimilarityKind::jaccard
                                                    : ContextSimilarityKind::cosine;
        scorer.score = [kind](const MentionContext& m, const Entity& e) {
            PairScore s;
            s.d_w = 1.0 - context_similarity(context_words(m), tokenize(e.description), kind);
            return s;
        };
        return scorer;
    }
    if (a.method == "lr") {
        if (a.pairs.empty() || a.tfidf.empty()) {
            throw std::invalid_argument("method lr needs --pairs and --tfidf to fit the baseline");
        }
        tfidf = TfIdfModel::load(a.tfidf);
        std::vector<LabeledFeatures> data;
        for (const auto& p : load_pairs(a.pairs, a.window)) {
            if (!p.label.has_value()) continue;
            const Entity* e = kb.find(p.entity_id);
            if (!e) throw std::invalid_argument("lr training pair references unknown entity id '" +
                                                p.entity_id + "'");
            data.push_back(
                {surface_features(p.mention.surface, context_words(p.mention), *e, *tfidf),
                 *p.label});
        }
        lr_model = logistic_baseline_train(data);
        scorer.score = [&lr_model, &tfidf](const MentionContext& m, const Entity& e) {
            PairScore s;
            s.d_w = 1.0 - lr_model->score(surface_features(m.surface, context_words(m), e, *tfidf));
            return s;
        };
        return scorer;
    }
    throw std::invalid_argument("unknown method: " + a.method);
}

void run_link(const LinkArgs& a) {
    if (a.mentions.empty() == a.score_pairs.empty()) {
        throw std::invalid_argument("pass exactly one of --mentions (ranking) or --score-pairs");
    }
    const KnowledgeBase kb = load_kb(a.kb);

    std::optional<LinkerModel> model;
    std::optional<CharVocab> vocab;
    std::optional<EmbeddingTable> words, entity_vecs;
    std::optional<TfIdfModel> tfidf;
    std::optional<LogisticModel> lr_model;
    std::size_t window = a.window;
    MethodScorer scorer =
        make_scorer(a, kb, model, vocab, words, entity_vecs, tfidf, lr_model, window);

    OutputGuard guard;

    if (!a.score_pairs.empty()) {
        // Pair-scoring mode: emit distances plus the stored label.
        std::string out;
        for (const auto& p : load_pairs(a.score_pairs, window)) {
            if (!p.label.has_value()) {
                throw std::invalid_argument("score-pairs input must be fully labeled");
            }
            const Entity* e = kb.find(p.entity_id);
            if (!e) {
                throw std::invalid_argument("pair references unknown entity id '" + p.entity_id + "'");
            }
            const PairScore s = scorer.score(p.mention, *e);
            out += p.mention.id + "\t" + p.entity_id + "\t" + format_double(s.d_syx) + "\t" +
                   format_double(s.d_smc) + "\t" + format_double(s.d_w) + "\t" +
                   std::to_string(*p.label) + "\n";
        }
        write_file(guard.track(a.out), out);
        guard.commit();
        std::cout << "scored-pairs written\t" << a.out << "\n";
        return;
    }

    auto mentions = load_mentions(a.mentions, window);
    if (!a.splits.empty()) {
        if (a.split.empty()) throw std::invalid_argument("--splits needs --split");
        std::unordered_set<std::string> wanted;
        for (const auto& line : read_lines(a.splits)) {
            if (line.empty()) continue;
            const auto f = split_tabs(line);
            if (f.size() != 2) throw ParseError("bad splits line: " + line);
            if (f[1] == a.split) wanted.insert(f[0]);
        }
        std::vector<MentionContext> kept;
        for (auto& m : mentions) {
            if (wanted.count(m.id)) kept.push_back(std::move(m));
        }
        mentions = std::move(kept);
    }

    const Blocker blocker(kb, a.block_threshold);
    std::vector<const Entity*> all;
    for (const auto& e : kb.entities()) all.push_back(&e);

    std::string out;
    std::size_t blocked_total = 0;
    for (const auto& m : mentions) {
        std::vector<const Entity*> candidates = blocker.candidates(m.surface);
        // A fully blocked mention still gets a ranking over the whole KB so
        // downstream evaluation sees every mention.
        if (candidates.empty()) candidates = all;
        blocked_total += candidates.size();

        std::vector<RankedCandidate> ranked;
        if (a.method == "jel") {
            ranked = rank_candidates(*model, m, candidates, *vocab, *words, *entity_vecs);
        } else {
            for (const Entity* e : candidates) {
                const PairScore s = scorer.score(m, *e);
                ranked.push_back({e->id, s.d_syx, s.d_smc, s.d_w});
            }
            std::sort(ranked.begin(), ranked.end(),
                      [](const RankedCandidate& x, const RankedCandidate& y) {
                          if (x.d_w != y.d_w) return x.d_w < y.d_w;
                          return x.entity_id < y.entity_id;
                      });
        }
        const std::size_t keep = std::min(a.top_k, ranked.size());
        for (std::size_t r = 0; r < keep; ++r) {
            out += m.id + "\t" + ranked[r].entity_id + "\t" + std::to_string(r + 1) + "\t" +
                   format_double(ranked[r].d_syx) + "\t" + format_double(ranked[r].d_smc) + "\t" +
                   format_double(ranked[r].d_w) + "\n";
        }
    }
    write_file(guard.track(a.out), out);
    guard.commit();

    std::cout << "mentions-linked\t" << mentions.size() << "\n";
    if (!mentions.empty()) {
        std::cout << "mean-candidates\t"
                  << format_double(static_cast<double>(blocked_total) /
                                   static_cast<double>(mentions.size()))
                  << "\n";
    }
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
    std::string mode = "ranking";
    std::string predictions, gold, kb, out;
    std::string scored;
    std::string method_name = "jel";
    std::vector<std::size_t> ks = {1, 3, 5, 10};
    double threshold = 1.0;
};

void run_eval_ranking(const EvalArgs& a) {
    if (a.predictions.empty() || a.gold.empty() || a.kb.empty()) {
        throw std::invalid_argument("ranking eval needs --predictions, --gold and --kb");
    }
    const KnowledgeBase kb = load_kb(a.kb);
    std::unordered_map<std::string, std::string> gold;
    for (const auto& [mid, eid] : load_gold(a.gold)) gold[mid] = eid;

    // Predictions arrive rank-ascending per mention; keep file order.
    std::vector<RankedMention> ranked;
    std::unordered_map<std::string, std::size_t> row_of;
    for (const auto& line : read_lines(a.predictions)) {
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        if (f.size() != 6) throw ParseError("bad predictions line: " + line);
        auto [it, inserted] = row_of.try_emplace(f[0], ranked.size());
        if (inserted) {
            RankedMention m;
            m.mention_id = f[0];
            const auto g = gold.find(f[0]);
            if (g == gold.end()) {
                throw std::invalid_argument("prediction for unknown mention '" + f[0] + "'");
            }
            m.gold_entity_id = g->second;
            ranked.push_back(std::move(m));
        }
        ranked[it->second].ranked_entity_ids.push_back(f[1]);
    }
    if (ranked.empty()) throw std::invalid_argument("no predictions to evaluate");

    std::vector<RankedMention> ambiguous;
    for (const auto& m : ranked) {
        const Entity* e = kb.find(m.gold_entity_id);
        if (!e) throw std::invalid_argument("gold references unknown entity '" + m.gold_entity_id + "'");
        if (kb.ids_by_name(e->name).size() > 1) ambiguous.push_back(m);
    }

    std::string report;
    report += "mentions\t" + std::to_string(ranked.size()) + "\n";
    report += "ambiguous-mentions\t" + std::to_string(ambiguous.size()) + "\n";
    report += format_precision_at_k_report(a.method_name, ranked, a.ks);
    if (!ambiguous.empty()) {
        report += format_precision_at_k_report(a.method_name + "-ambiguous", ambiguous, a.ks);
    }
    OutputGuard guard;
    write_file(guard.track(a.out), report);
    guard.commit();
    std::cout << report;
}

void run_eval_classification(const EvalArgs& a) {
    if (a.scored.empty()) throw std::invalid_argument("classification eval needs --scored");
    std::vector<std::pair<int, int>> predictions;
    for (const auto& line : read_lines(a.scored)) {
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        if (f.size() != 6) throw ParseError("bad scored-pairs line: " + line);
        const double d_w = parse_double(f[4], "d_w");
        const long long truth = parse_int(f[5], "label");
        if (truth != 0 && truth != 1) throw ParseError("label must be 0 or 1: " + line);
        predictions.emplace_back(d_w < a.threshold ? 1 : 0, static_cast<int>(truth));
    }
    const ScaledConfusion c = scaled_confusion(predictions);
    const PrfMetrics m = prf_metrics(c);
    std::string report = "pairs\t" + std::to_string(predictions.size()) + "\n" +
                         "threshold\t" + format_double(a.threshold) + "\n" +
                         format_metrics_report(a.method_name, c, m);
    OutputGuard guard;
    write_file(guard.track(a.out), report);
    guard.commit();
    std::cout << report;
}

// ---------------------------------------------------------------------------
// label

struct LabelArgs {
    std::string kb, mentions, out;
    std::size_t window = 10;
};

void run_label(const LabelArgs& a) {
    fs::create_directories(a.out);
    OutputGuard guard;
    const KnowledgeBase kb = load_kb(a.kb);
    const auto mentions = load_mentions(a.mentions, a.window);
    const WeakLabelResult result = weak_label_pairs(mentions, kb);

    save_pairs(result.labeled, guard.track(fs::path(a.out) / "weak_pairs.tsv"));
    save_pairs(result.review_queue, guard.track(fs::path(a.out) / "review_queue.tsv"));

    std::size_t auto_pos = 0, auto_neg = 0;
    for (const auto& p : result.labeled) {
        if (p.provenance == Provenance::auto_positive) ++auto_pos;
        else ++auto_neg;
    }
    std::string summary = "auto-positive\t" + std::to_string(auto_pos) + "\n" +
                          "auto-negative\t" + std::to_string(auto_neg) + "\n" +
                          "review-queue\t" + std::to_string(result.review_queue.size()) + "\n" +
                          "discarded\t" + std::to_string(result.discarded) + "\n";
    write_file(guard.track(fs::path(a.out) / "weak_summary.tsv"), summary);
    guard.commit();
    std::cout << summary;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jel: entity linking toolkit"};
    app.require_subcommand(1);
    app.set_config("--config");

    auto synth_args = std::make_shared<SynthArgs>();
    auto* synth = app.add_subcommand("synth", "generate a synthetic KB, mentions and pairs");
    synth->add_option("--out", synth_args->out, "output directory")->required();
    synth->add_option("--entities", synth_args->spec.entities, "entity count");
    synth->add_option("--industries", synth_args->spec.industries, "industry count");
    synth->add_option("--ambiguity", synth_args->spec.ambiguity_rate,
                      "fraction of names duplicated across industries");
    synth->add_option("--mentions", synth_args->spec.mentions, "mention count");
    synth->add_option("--description-words", synth_args->spec.description_words,
                      "words per entity description");
    synth->add_option("--context-words", synth_args->spec.context_words,
                      "context words per mention side");
    synth->add_option("--word-dim", synth_args->spec.word_dim, "word vector dimension");
    synth->add_option("--seed", synth_args->spec.seed, "rng seed");

    auto ingest_args = std::make_shared<IngestArgs>();
    auto* ingest = app.add_subcommand("ingest", "validate a KB and build vocab + tf-idf");
    ingest->add_option("--kb", ingest_args->kb, "entities file")->required();
    ingest->add_option("--out", ingest_args->out, "output directory")->required();

    auto embed_args = std::make_shared<TrainEmbedArgs>();
    auto* embed = app.add_subcommand("train-embed", "train entity embedding vectors");
    embed->add_option("--kb", embed_args->kb, "entities file")->required();
    embed->add_option("--words", embed_args->words, "word vectors file")->required();
    embed->add_option("--tfidf", embed_args->tfidf, "tf-idf model file")->required();
    embed->add_option("--out", embed_args->out, "output directory")->required();
    embed->add_option("--alpha", embed_args->cfg.margin, "triplet margin");
    embed->add_option("--positives", embed_args->cfg.positives_per_entity, "positives per entity");
    embed->add_option("--negatives", embed_args->cfg.negatives_per_entity, "negatives per entity");
    embed->add_option("--epochs", embed_args->cfg.epochs, "training epochs");
    embed->add_option("--lr", embed_args->cfg.learning_rate, "learning rate");
    embed->add_option("--seed", embed_args->cfg.seed, "rng seed");
    embed->add_flag("--resample-negatives", embed_args->cfg.resample_negatives_per_epoch,
                    "draw fresh negatives every epoch");

    auto tl_args = std::make_shared<TrainLinkArgs>();
    auto* tl = app.add_subcommand("train-link", "train the wide & deep matcher");
    tl->add_option("--kb", tl_args->kb, "entities file")->required();
    tl->add_option("--pairs", tl_args->pairs, "labeled pairs file")->required();
    tl->add_option("--words", tl_args->words, "word vectors file")->required();
    tl->add_option("--entity-vecs", tl_args->entity_vecs, "entity vectors file")->required();
    tl->add_option("--vocab", tl_args->vocab, "character vocabulary file")->required();
    tl->add_option("--out", tl_args->out, "output directory")->required();
    tl->add_option("--lambda-syx", tl_args->cfg.lambda_syx, "character distance weight");
    tl->add_option("--lambda-smc", tl_args->cfg.lambda_smc, "semantic distance weight");
    tl->add_option("--margin", tl_args->cfg.margin, "contrastive margin");
    tl->add_option("--window", tl_args->cfg.window, "context tokens per side");
    tl->add_option("--h-wide", tl_args->cfg.h_wide, "character arm width");
    tl->add_option("--h-lstm", tl_args->cfg.h_lstm, "lstm hidden size");
    tl->add_option("--epochs", tl_args->cfg.epochs, "training epochs");
    tl->add_option("--lr", tl_args->cfg.learning_rate, "learning rate");
    tl->add_option("--batch", tl_args->cfg.batch_size, "minibatch size");
    tl->add_option("--seed", tl_args->cfg.seed, "rng seed");
    tl->add_flag("--balance", tl_args->balance, "downsample negatives before splitting");

    auto link_args = std::make_shared<LinkArgs>();
    auto* link = app.add_subcommand("link", "rank candidates or score labeled pairs");
    link->add_option("--kb", link_args->kb, "entities file")->required();
    link->add_option("--out", link_args->out, "output file")->required();
    link->add_option("--method", link_args->method,
                     "jel, bigram, trigram, jaccard-ctx, cosine-ctx or lr");
    link->add_option("--mentions", link_args->mentions, "mentions file (ranking mode)");
    link->add_option("--score-pairs", link_args->score_pairs,
                     "labeled pairs file (pair scoring mode)");
    link->add_option("--checkpoint", link_args->checkpoint, "linker checkpoint");
    link->add_option("--vocab", link_args->vocab, "character vocabulary file");
    link->add_option("--words", link_args->words, "word vectors file");
    link->add_option("--entity-vecs", link_args->entity_vecs, "entity vectors file");
    link->add_option("--pairs", link_args->pairs, "labeled pairs for the lr baseline");
    link->add_option("--tfidf", link_args->tfidf, "tf-idf model for the lr baseline");
    link->add_option("--splits", link_args->splits, "splits file from train-link");
    link->add_option("--split", link_args->split, "split name to keep (train/valid/test)");
    link->add_option("--block-threshold", link_args->block_threshold,
                     "minimum shared bigrams to survive blocking");
    link->add_option("--top-k", link_args->top_k, "ranked candidates kept per mention");
    link->add_option("--window", link_args->window, "context window for non-jel methods");

    auto eval_args = std::make_shared<EvalArgs>();
    auto* eval = app.add_subcommand("eval", "evaluate predictions");
    eval->add_option("--mode", eval_args->mode, "ranking or classification");
    eval->add_option("--predictions", eval_args->predictions, "ranked predictions file");
    eval->add_option("--gold", eval_args->gold, "gold links file");
    eval->add_option("--kb", eval_args->kb, "entities file");
    eval->add_option("--scored", eval_args->scored, "scored pairs file");
    eval->add_option("--method-name", eval_args->method_name, "method name echoed in the report");
    eval->add_option("--ks", eval_args->ks, "precision@k cutoffs");
    eval->add_option("--threshold", eval_args->threshold, "distance below which a pair is a link");
    eval->add_option("--out", eval_args->out, "report file")->required();

    auto label_args = std::make_shared<LabelArgs>();
    auto* label = app.add_subcommand("label", "weak-label mention-entity pairs");
    label->add_option("--kb", label_args->kb, "entities file")->required();
    label->add_option("--mentions", label_args->mentions, "mentions file")->required();
    label->add_option("--out", label_args->out, "output directory")->required();
    label->add_option("--window", label_args->window, "context tokens per side");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (synth->parsed()) run_synth(*synth_args);
        else if (ingest->parsed()) run_ingest(*ingest_args);
        else if (embed->parsed()) run_train_embed(*embed_args);
        else if (tl->parsed()) run_train_link(*tl_args);
        else if (link->parsed()) run_link(*link_args);
        else if (eval->parsed()) {
            if (eval_args->mode == "ranking") run_eval_ranking(*eval_args);
            else if (eval_args->mode == "classification") run_eval_classification(*eval_args);
            else throw std::invalid_argument("unknown eval mode: " + eval_args->mode);
        } else if (label->parsed()) {
            run_label(*label_args);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
