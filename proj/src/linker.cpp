#include "jel/linker.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "jel/textio.hpp"

namespace jel {

namespace {

constexpr const char* kWideW = "wide.w";
constexpr const char* kWideB = "wide.b";
constexpr const char* kAttnLeft = "attn.left";
constexpr const char* kAttnRight = "attn.right";
constexpr const char* kFcW = "fc.w";
constexpr const char* kFcB = "fc.b";

ad::NodeId wide_arm(ad::Tape& tape, LinkerModel& model, const CharFeatureVector& features) {
    return tape.row_sum(model.wide.w, model.wide.b, features.indices);
}

/// LSTM pass + attention pooling over one window. Tokens are fed in the
/// given order; an empty window pools to the zero vector.
ad::NodeId encode_side(ad::Tape& tape, ad::LstmParams& lstm, ad::Param& attn,
                       const std::vector<std::string>& tokens, bool reversed,
                       const EmbeddingTable& words) {
    const std::size_t h = lstm.hidden_dim();
    if (tokens.empty()) return tape.constant(Vec(h, 0.0));
    std::vector<ad::NodeId> hidden;
    hidden.reserve(tokens.size());
    ad::NodeId state = ad::kNoNode;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[reversed ? tokens.size() - 1 - i : i];
        const Vec* wv = words.lookup(tok);
        const ad::NodeId x =
            wv ? tape.constant(*wv) : tape.constant(Vec(lstm.input_dim(), 0.0));
        state = tape.lstm_step(lstm, x, state);
        hidden.push_back(tape.slice(state, 0, h));
    }
    return tape.attention_pool(attn, hidden);
}

ad::NodeId encode_on_tape(ad::Tape& tape, LinkerModel& model, const MentionContext& ctx,
                          const EmbeddingTable& words) {
    if (ctx.left_tokens.empty() && ctx.right_tokens.empty()) {
        throw std::invalid_argument("encode_mention: mention '" + ctx.id +
                                    "' has no usable context tokens");
    }
    const ad::NodeId g_left =
        encode_side(tape, model.deep.lstm_left, model.deep.attn_left, ctx.left_tokens,
                    /*reversed=*/false, words);
    const ad::NodeId g_right =
        encode_side(tape, model.deep.lstm_right, model.deep.attn_right, ctx.right_tokens,
                    /*reversed=*/true, words);
    return tape.linear(model.deep.fc_w, model.deep.fc_b, tape.concat(g_left, g_right));
}

Vec zero_or_copy(const Vec* v, std::size_t dim) { return v ? *v : Vec(dim, 0.0); }

}  // namespace

LinkerModel LinkerModel::create(const LinkerConfig& cfg, std::size_t vocab_size,
                                std::size_t word_dim) {
    if (cfg.lambda_syx < 0.0 || cfg.lambda_smc < 0.0 ||
        (cfg.lambda_syx == 0.0 && cfg.lambda_smc == 0.0)) {
        throw std::invalid_argument("linker config: lambdas must be >= 0 and not both 0");
    }
    if (cfg.margin <= 0.0) throw std::invalid_argument("linker config: margin must be > 0");
    if (vocab_size == 0) throw std::invalid_argument("linker config: empty character vocabulary");
    if (word_dim == 0) throw std::invalid_argument("linker config: word dimension must be > 0");

    LinkerModel m;
    m.cfg = cfg;
    m.vocab_size = vocab_size;
    m.word_dim = word_dim;
    m.wide.w = ad::Param(kWideW, vocab_size, cfg.h_wide);
    m.wide.b = ad::Param(kWideB, cfg.h_wide, 1);
    m.deep.lstm_left = ad::LstmParams("left", word_dim, cfg.h_lstm);
    m.deep.lstm_right = ad::LstmParams("right", word_dim, cfg.h_lstm);
    m.deep.attn_left = ad::Param(kAttnLeft, cfg.h_lstm, 1);
    m.deep.attn_right = ad::Param(kAttnRight, cfg.h_lstm, 1);
    m.deep.fc_w = ad::Param(kFcW, word_dim, 2 * cfg.h_lstm);
    m.deep.fc_b = ad::Param(kFcB, word_dim, 1);

    std::mt19937_64 rng(cfg.seed);
    // A name activates a few dozen character features, so the wide rows are
    // scaled as if fan-in were that activation count rather than the vocab.
    ad::init_uniform(m.wide.w, 32, rng);
    ad::init_uniform(m.wide.b, cfg.h_wide, rng);
    m.deep.lstm_left.init(rng);
    m.deep.lstm_right.init(rng);
    ad::init_uniform(m.deep.attn_left, cfg.h_lstm, rng);
    ad::init_uniform(m.deep.attn_right, cfg.h_lstm, rng);
    ad::init_uniform(m.deep.fc_w, 2 * cfg.h_lstm, rng);
    ad::init_uniform(m.deep.fc_b, 2 * cfg.h_lstm, rng);
    return m;
}

std::vector<ad::Param*> LinkerModel::params() {
    std::vector<ad::Param*> out = {&wide.w, &wide.b};
    for (auto* p : deep.lstm_left.params()) out.push_back(p);
    for (auto* p : deep.lstm_right.params()) out.push_back(p);
    out.push_back(&deep.attn_left);
    out.push_back(&deep.attn_right);
    out.push_back(&deep.fc_w);
    out.push_back(&deep.fc_b);
    return out;
}

double wide_distance(LinkerModel& model, const CharFeatureVector& a, const CharFeatureVector& b) {
    ad::Tape tape;
    const ad::NodeId d = tape.euclidean_distance(wide_arm(tape, model, a), wide_arm(tape, model, b));
    return tape.scalar(d);
}

Vec encode_mention(LinkerModel& model, const MentionContext& ctx, const EmbeddingTable& words) {
    ad::Tape tape;
    return tape.value(encode_on_tape(tape, model, ctx, words));
}

double semantic_distance(std::span<const double> v_m, std::span<const double> v_e) {
    if (v_m.size() != v_e.size()) {
        throw std::invalid_argument("semantic_distance: dimension mismatch");
    }
    return euclidean_distance(v_m, v_e);
}

double combined_distance(double d_syx, double d_smc, const LinkerConfig& cfg) {
    return cfg.lambda_syx * d_syx + cfg.lambda_smc * d_smc;
}

double contrastive_loss(int y, double d_w, double margin) {
    if (y != 0 && y != 1) throw std::invalid_argument("contrastive_loss: label must be 0 or 1");
    if (y == 1) return 0.5 * d_w * d_w;
    const double slack = std::max(0.0, margin - d_w);
    return 0.5 * slack * slack;
}

PairScore score_pair(LinkerModel& model, const MentionContext& ctx, const Entity& entity,
                     const CharVocab& vocab, const EmbeddingTable& words,
                     const EmbeddingTable& entity_vecs) {
    PairScore s;
    const CharFeatureVector t_m = featurize_chars(ctx.surface, vocab);
    const CharFeatureVector t_e = featurize_chars(entity.name, vocab);
    s.d_syx = wide_distance(model, t_m, t_e);
    const Vec v_m = encode_mention(model, ctx, words);
    const Vec v_e = zero_or_copy(entity_vecs.lookup(entity.id), model.word_dim);
    s.d_smc = semantic_distance(v_m, v_e);
    s.d_w = combined_distance(s.d_syx, s.d_smc, model.cfg);
    return s;
}

LinkTrainResult train_linker(LinkerModel& model, const std::vector<LabeledPair>& pairs,
                             const KnowledgeBase& kb, const CharVocab& vocab,
                             const EmbeddingTable& words, const EmbeddingTable& entity_vecs) {
    if (pairs.empty()) throw std::invalid_argument("train_linker: no pairs");

    struct Prepared {
        const MentionContext* ctx;
        CharFeatureVector t_m;
        CharFeatureVector t_e;
        Vec v_e;
        int label;
    };
    std::vector<Prepared> prep;
    prep.reserve(pairs.size());
    for (const auto& pair : pairs) {
        if (!pair.label.has_value()) {
            throw std::invalid_argument("train_linker: unlabeled pair for mention '" +
                                        pair.mention.id + "'");
        }
        const Entity* e = kb.find(pair.entity_id);
        if (!e) {
            throw std::invalid_argument("train_linker: unknown entity id '" + pair.entity_id + "'");
        }
        Prepared p;
        p.ctx = &pair.mention;
        p.t_m = featurize_chars(pair.mention.surface, vocab);
        p.t_e = featurize_chars(e->name, vocab);
        p.v_e = zero_or_copy(entity_vecs.lookup(pair.entity_id), model.word_dim);
        p.label = *pair.label;
        prep.push_back(std::move(p));
    }

    const auto param_list = model.params();
    std::mt19937_64 rng(model.cfg.seed);
    std::vector<std::size_t> order(prep.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    LinkTrainResult result;
    const std::size_t batch = std::max<std::size_t>(1, model.cfg.batch_size);
    for (std::size_t epoch = 0; epoch < model.cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t end = std::min(order.size(), start + batch);
            ad::Tape tape;
            ad::NodeId total = ad::kNoNode;
            for (std::size_t k = start; k < end; ++k) {
                const Prepared& p = prep[order[k]];
                const ad::NodeId d_syx =
                    tape.euclidean_distance(wide_arm(tape, model, p.t_m),
                                            wide_arm(tape, model, p.t_e));
                const ad::NodeId v_m = encode_on_tape(tape, model, *p.ctx, words);
                const ad::NodeId d_smc = tape.euclidean_distance(v_m, tape.constant(p.v_e));
                const ad::NodeId d_w = tape.add(tape.scale(d_syx, model.cfg.lambda_syx),
                                                tape.scale(d_smc, model.cfg.lambda_smc));
                ad::NodeId loss;
                if (p.label == 1) {
                    loss = tape.scale(tape.square(d_w), 0.5);
                } else {
                    const ad::NodeId slack =
                        tape.relu(tape.add_scalar(tape.scale(d_w, -1.0), model.cfg.margin));
                    loss = tape.scale(tape.square(slack), 0.5);
                }
                epoch_loss += tape.scalar(loss);
                total = total == ad::kNoNode ? loss : tape.add(total, loss);
            }
            const ad::NodeId mean =
                tape.scale(total, 1.0 / static_cast<double>(end - start));
            for (ad::Param* p : param_list) p->zero_grad();
            tape.backward(mean);
            for (ad::Param* p : param_list) {
                axpy(-model.cfg.learning_rate, p->grad.data, p->value.data);
            }
        }
        result.epoch_mean_loss.push_back(epoch_loss / static_cast<double>(prep.size()));
    }
    return result;
}

std::vector<RankedCandidate> rank_candidates(LinkerModel& model, const MentionContext& ctx,
                                             const std::vector<const Entity*>& candidates,
                                             const CharVocab& vocab, const EmbeddingTable& words,
                                             const EmbeddingTable& entity_vecs) {
    if (candidates.empty()) throw std::invalid_argument("rank_candidates: no candidates");
    const CharFeatureVector t_m = featurize_chars(ctx.surface, vocab);
    const Vec v_m = encode_mention(model, ctx, words);
    std::vector<RankedCandidate> out;
    out.reserve(candidates.size());
    for (const Entity* e : candidates) {
        RankedCandidate r;
        r.entity_id = e->id;
        r.d_syx = wide_distance(model, t_m, featurize_chars(e->name, vocab));
        const Vec v_e = zero_or_copy(entity_vecs.lookup(e->id), model.word_dim);
        r.d_smc = semantic_distance(v_m, v_e);
        r.d_w = combined_distance(r.d_syx, r.d_smc, model.cfg);
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
        if (a.d_w != b.d_w) return a.d_w < b.d_w;
        return a.entity_id < b.entity_id;
    });
    return out;
}

void save_linker(LinkerModel& model, const std::filesystem::path& path) {
    std::vector<std::string> header = {
        "config lambda_syx " + format_double(model.cfg.lambda_syx),
        "config lambda_smc " + format_double(model.cfg.lambda_smc),
        "config margin " + format_double(model.cfg.margin),
        "config window " + std::to_string(model.cfg.window),
        "config h_wide " + std::to_string(model.cfg.h_wide),
        "config h_lstm " + std::to_string(model.cfg.h_lstm),
        "config epochs " + std::to_string(model.cfg.epochs),
        "config learning_rate " + format_double(model.cfg.learning_rate),
        "config batch_size " + std::to_string(model.cfg.batch_size),
        "config seed " + std::to_string(model.cfg.seed),
        "shape vocab_size " + std::to_string(model.vocab_size),
        "shape word_dim " + std::to_string(model.word_dim),
    };
    const auto params = model.params();
    std::vector<const ad::Param*> view(params.begin(), params.end());
    ad::save_tensors(path, view, header);
}

LinkerModel load_linker(const std::filesystem::path& path) {
    const ad::TensorFile file = ad::load_tensors(path);
    LinkerConfig cfg;
    std::size_t vocab_size = 0, word_dim = 0;
    for (const auto& line : file.header_lines) {
        const auto fields = split_spaces(line);
        if (fields.size() != 3) throw ParseError("bad checkpoint header line: " + line);
        const std::string& key = fields[1];
        const std::string& val = fields[2];
        if (fields[0] == "config") {
            if (key == "lambda_syx") cfg.lambda_syx = parse_double(val, "lambda_syx");
            else if (key == "lambda_smc") cfg.lambda_smc = parse_double(val, "lambda_smc");
            else if (key == "margin") cfg.margin = parse_double(val, "margin");
            else if (key == "window") cfg.window = parse_int(val, "window");
            else if (key == "h_wide") cfg.h_wide = parse_int(val, "h_wide");
            else if (key == "h_lstm") cfg.h_lstm = parse_int(val, "h_lstm");
            else if (key == "epochs") cfg.epochs = parse_int(val, "epochs");
            else if (key == "learning_rate") cfg.learning_rate = parse_double(val, "learning_rate");
            else if (key == "batch_size") cfg.batch_size = parse_int(val, "batch_size");
            else if (key == "seed") cfg.seed = parse_int(val, "seed");
            else throw ParseError("unknown checkpoint config key: " + key);
        } else if (fields[0] == "shape") {
            if (key == "vocab_size") vocab_size = parse_int(val, "vocab_size");
            else if (key == "word_dim") word_dim = parse_int(val, "word_dim");
            else throw ParseError("unknown checkpoint shape key: " + key);
        } else {
            throw ParseError("bad checkpoint header line: " + line);
        }
    }
    LinkerModel model = LinkerModel::create(cfg, vocab_size, word_dim);
    const auto params = model.params();
    ad::load_into(file, params);
    return model;
}

}  // namespace jel
