#include "jel/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jel/textio.hpp"

namespace jel::ad {

void init_uniform(Param& p, std::size_t fan_in, std::mt19937_64& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(fan_in, 1)));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& v : p.value.data) v = dist(rng);
    p.zero_grad();
}

LstmParams::LstmParams(const std::string& prefix, std::size_t input_dim, std::size_t hidden_dim)
    : w_input(prefix + ".w_input", 4 * hidden_dim, input_dim),
      w_hidden(prefix + ".w_hidden", 4 * hidden_dim, hidden_dim),
      bias(prefix + ".bias", 4 * hidden_dim, 1) {}

void LstmParams::init(std::mt19937_64& rng) {
    init_uniform(w_input, input_dim(), rng);
    init_uniform(w_hidden, hidden_dim(), rng);
    init_uniform(bias, hidden_dim(), rng);
}

std::vector<Param*> LstmParams::params() { return {&w_input, &w_hidden, &bias}; }

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_same_size(const Vec& a, const Vec& b, const char* op) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(op) + ": size mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                    ")");
    }
}

}  // namespace

NodeId Tape::push(Vec value, std::function<void()> back) {
    nodes_.push_back(Node{std::move(value), {}, std::move(back)});
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Tape::constant(Vec v) { return push(std::move(v), {}); }

NodeId Tape::constant(std::span<const double> v) { return push(Vec(v.begin(), v.end()), {}); }

NodeId Tape::scalar_constant(double x) { return push(Vec{x}, {}); }

NodeId Tape::leaf(Param& p) {
    if (p.value.cols != 1) throw std::invalid_argument("leaf: param must be a vector: " + p.name);
    Vec v = p.value.data;
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(v), [this, id, &p] {
        const Vec& g = nodes_[id].grad;
        for (std::size_t i = 0; i < g.size(); ++i) p.grad.data[i] += g[i];
    });
}

NodeId Tape::linear(Param& w, Param& b, NodeId x) {
    const Vec& xv = nodes_[x].value;
    const std::size_t out = w.value.rows, in = w.value.cols;
    if (xv.size() != in) throw std::invalid_argument("linear: input size mismatch for " + w.name);
    if (b.value.rows != out) throw std::invalid_argument("linear: bias size mismatch for " + b.name);
    Vec y(out);
    for (std::size_t i = 0; i < out; ++i) {
        y[i] = b.value.data[i] + dot(w.value.row(i), xv);
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(y), [this, id, &w, &b, x, out, in] {
        const Vec& gy = nodes_[id].grad;
        const Vec& xv = nodes_[x].value;
        Vec& gx = nodes_[x].grad;
        for (std::size_t i = 0; i < out; ++i) {
            const double gi = gy[i];
            b.grad.data[i] += gi;
            double* wrow = w.grad.data.data() + i * in;
            const double* vrow = w.value.data.data() + i * in;
            for (std::size_t j = 0; j < in; ++j) {
                wrow[j] += gi * xv[j];
                gx[j] += gi * vrow[j];
            }
        }
    });
}

NodeId Tape::linear_sparse(Param& w, Param& b, std::span<const std::uint32_t> active_cols) {
    const std::size_t out = w.value.rows, in = w.value.cols;
    if (b.value.rows != out) throw std::invalid_argument("linear_sparse: bias size mismatch");
    Vec y(b.value.data);
    for (std::uint32_t j : active_cols) {
        if (j >= in) throw std::out_of_range("linear_sparse: column index out of range");
        for (std::size_t i = 0; i < out; ++i) y[i] += w.value.at(i, j);
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    std::vector<std::uint32_t> cols(active_cols.begin(), active_cols.end());
    return push(std::move(y), [this, id, &w, &b, cols = std::move(cols), out] {
        const Vec& gy = nodes_[id].grad;
        for (std::size_t i = 0; i < out; ++i) b.grad.data[i] += gy[i];
        for (std::uint32_t j : cols) {
            for (std::size_t i = 0; i < out; ++i) w.grad.at(i, j) += gy[i];
        }
    });
}

NodeId Tape::row_sum(Param& w, Param& b, std::span<const std::uint32_t> active_rows) {
    const std::size_t out = w.value.cols;
    if (b.value.rows != out) throw std::invalid_argument("row_sum: bias size mismatch");
    Vec y(b.value.data);
    for (std::uint32_t r : active_rows) {
        if (r >= w.value.rows) throw std::out_of_range("row_sum: row index out of range");
        const double* row = w.value.data.data() + r * out;
        for (std::size_t i = 0; i < out; ++i) y[i] += row[i];
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    std::vector<std::uint32_t> rows(active_rows.begin(), active_rows.end());
    return push(std::move(y), [this, id, &w, &b, rows = std::move(rows), out] {
        const Vec& gy = nodes_[id].grad;
        for (std::size_t i = 0; i < out; ++i) b.grad.data[i] += gy[i];
        for (std::uint32_t r : rows) {
            double* grow = w.grad.data.data() + r * out;
            for (std::size_t i = 0; i < out; ++i) grow[i] += gy[i];
        }
    });
}

NodeId Tape::lstm_step(LstmParams& p, NodeId x, NodeId hc_prev) {
    const std::size_t H = p.hidden_dim();
    const std::size_t X = p.input_dim();
    const Vec& xv = nodes_[x].value;
    if (xv.size() != X) throw std::invalid_argument("lstm_step: input size mismatch");
    const Vec zero(H, 0.0);
    std::span<const double> h_prev(zero), c_prev(zero);
    if (hc_prev != kNoNode) {
        const Vec& prev = nodes_[hc_prev].value;
        if (prev.size() != 2 * H) throw std::invalid_argument("lstm_step: bad prev state size");
        h_prev = {prev.data(), H};
        c_prev = {prev.data() + H, H};
    }

    // Fused pre-activations z = W x + U h_prev + bias, gate order i,f,g,o.
    Vec z(4 * H);
    for (std::size_t i = 0; i < 4 * H; ++i) {
        z[i] = p.bias.value.data[i] + dot(p.w_input.value.row(i), xv) +
               dot(p.w_hidden.value.row(i), h_prev);
    }
    Vec gi(H), gf(H), gg(H), go(H), tc(H);
    Vec hc(2 * H);
    for (std::size_t k = 0; k < H; ++k) {
        gi[k] = sigmoid(z[k]);
        gf[k] = sigmoid(z[H + k]);
        gg[k] = std::tanh(z[2 * H + k]);
        go[k] = sigmoid(z[3 * H + k]);
        const double c = gf[k] * c_prev[k] + gi[k] * gg[k];
        tc[k] = std::tanh(c);
        hc[H + k] = c;
        hc[k] = go[k] * tc[k];
    }

    NodeId id = static_cast<NodeId>(nodes_.size());
    struct Saved {
        Vec gi, gf, gg, go, tc;
    };
    Saved saved{std::move(gi), std::move(gf), std::move(gg), std::move(go), std::move(tc)};
    return push(std::move(hc), [this, id, &p, x, hc_prev, H, X, s = std::move(saved)] {
        const Vec& g = nodes_[id].grad;
        const Vec& xv = nodes_[x].value;
        const Vec zero(H, 0.0);
        std::span<const double> h_prev(zero), c_prev(zero);
        if (hc_prev != kNoNode) {
            const Vec& prev = nodes_[hc_prev].value;
            h_prev = {prev.data(), H};
            c_prev = {prev.data() + H, H};
        }
        Vec dz(4 * H);
        Vec dc_prev(H);
        for (std::size_t k = 0; k < H; ++k) {
            const double gh = g[k];
            // Cell grad: direct contribution plus the one through h = o.tanh(c).
            const double gc = g[H + k] + gh * s.go[k] * (1.0 - s.tc[k] * s.tc[k]);
            const double d_i = gc * s.gg[k];
            const double d_f = gc * c_prev[k];
            const double d_g = gc * s.gi[k];
            const double d_o = gh * s.tc[k];
            dc_prev[k] = gc * s.gf[k];
            dz[k] = d_i * s.gi[k] * (1.0 - s.gi[k]);
            dz[H + k] = d_f * s.gf[k] * (1.0 - s.gf[k]);
            dz[2 * H + k] = d_g * (1.0 - s.gg[k] * s.gg[k]);
            dz[3 * H + k] = d_o * s.go[k] * (1.0 - s.go[k]);
        }
        Vec& gx = nodes_[x].grad;
        for (std::size_t i = 0; i < 4 * H; ++i) {
            const double d = dz[i];
            p.bias.grad.data[i] += d;
            double* wi = p.w_input.grad.data.data() + i * X;
            const double* wiv = p.w_input.value.data.data() + i * X;
            for (std::size_t j = 0; j < X; ++j) {
                wi[j] += d * xv[j];
                gx[j] += d * wiv[j];
            }
            double* wh = p.w_hidden.grad.data.data() + i * H;
            for (std::size_t j = 0; j < H; ++j) wh[j] += d * h_prev[j];
        }
        if (hc_prev != kNoNode) {
            Vec& gprev = nodes_[hc_prev].grad;
            for (std::size_t i = 0; i < 4 * H; ++i) {
                const double d = dz[i];
                const double* whv = p.w_hidden.value.data.data() + i * H;
                for (std::size_t j = 0; j < H; ++j) gprev[j] += d * whv[j];
            }
            for (std::size_t k = 0; k < H; ++k) gprev[H + k] += dc_prev[k];
        }
    });
}

NodeId Tape::slice(NodeId src, std::size_t offset, std::size_t len) {
    const Vec& sv = nodes_[src].value;
    if (offset + len > sv.size()) throw std::out_of_range("slice: range out of bounds");
    Vec y(sv.begin() + offset, sv.begin() + offset + len);
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(y), [this, id, src, offset, len] {
        const Vec& gy = nodes_[id].grad;
        Vec& gs = nodes_[src].grad;
        for (std::size_t i = 0; i < len; ++i) gs[offset + i] += gy[i];
    });
}

NodeId Tape::concat(NodeId a, NodeId b) {
    const Vec& av = nodes_[a].value;
    const Vec& bv = nodes_[b].value;
    Vec y;
    y.reserve(av.size() + bv.size());
    y.insert(y.end(), av.begin(), av.end());
    y.insert(y.end(), bv.begin(), bv.end());
    NodeId id = static_cast<NodeId>(nodes_.size());
    const std::size_t na = av.size();
    return push(std::move(y), [this, id, a, b, na] {
        const Vec& gy = nodes_[id].grad;
        Vec& ga = nodes_[a].grad;
        Vec& gb = nodes_[b].grad;
        for (std::size_t i = 0; i < na; ++i) ga[i] += gy[i];
        for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += gy[na + i];
    });
}

NodeId Tape::attention_pool(Param& w_alpha, std::span<const NodeId> xs) {
    if (xs.empty()) throw std::invalid_argument("attention_pool: empty input list");
    const std::size_t dim = nodes_[xs.front()].value.size();
    if (w_alpha.value.rows != dim || w_alpha.value.cols != 1) {
        throw std::invalid_argument("attention_pool: weight/input dim mismatch for " + w_alpha.name);
    }
    const std::size_t n = xs.size();
    Vec scores(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec& xk = nodes_[xs[k]].value;
        if (xk.size() != dim) throw std::invalid_argument("attention_pool: ragged inputs");
        scores[k] = dot(std::span<const double>(w_alpha.value.data), xk);
    }
    const double mx = *std::max_element(scores.begin(), scores.end());
    Vec weights(n);
    double denom = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        weights[k] = std::exp(scores[k] - mx);
        denom += weights[k];
    }
    for (double& a : weights) a /= denom;
    last_attention_ = weights;

    Vec y(dim, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        axpy(weights[k], nodes_[xs[k]].value, y);
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    std::vector<NodeId> inputs(xs.begin(), xs.end());
    return push(std::move(y),
                [this, id, &w_alpha, inputs = std::move(inputs), weights = std::move(weights), dim] {
                    const Vec& gy = nodes_[id].grad;
                    const std::size_t n = inputs.size();
                    // d/da_k then through softmax back to scores and inputs.
                    Vec da(n);
                    double mixed = 0.0;
                    for (std::size_t k = 0; k < n; ++k) {
                        da[k] = dot(gy, nodes_[inputs[k]].value);
                        mixed += weights[k] * da[k];
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        const double dscore = weights[k] * (da[k] - mixed);
                        Vec& gx = nodes_[inputs[k]].grad;
                        const Vec& xk = nodes_[inputs[k]].value;
                        for (std::size_t i = 0; i < dim; ++i) {
                            gx[i] += weights[k] * gy[i] + dscore * w_alpha.value.data[i];
                            w_alpha.grad.data[i] += dscore * xk[i];
                        }
                    }
                });
}

NodeId Tape::euclidean_distance(NodeId u, NodeId v) {
    const Vec& uv = nodes_[u].value;
    const Vec& vv = nodes_[v].value;
    check_same_size(uv, vv, "euclidean_distance");
    const double d = jel::euclidean_distance(uv, vv);
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(Vec{d}, [this, id, u, v, d] {
        if (d < 1e-12) return;  // subgradient 0 at the apex
        const double g = nodes_[id].grad[0] / d;
        const Vec& uv = nodes_[u].value;
        const Vec& vv = nodes_[v].value;
        Vec& gu = nodes_[u].grad;
        Vec& gv = nodes_[v].grad;
        for (std::size_t i = 0; i < uv.size(); ++i) {
            const double t = g * (uv[i] - vv[i]);
            gu[i] += t;
            gv[i] -= t;
        }
    });
}

NodeId Tape::squared_distance(NodeId u, NodeId v) {
    const Vec& uv = nodes_[u].value;
    const Vec& vv = nodes_[v].value;
    check_same_size(uv, vv, "squared_distance");
    const double s = jel::squared_distance(uv, vv);
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(Vec{s}, [this, id, u, v] {
        const double g = nodes_[id].grad[0];
        const Vec& uv = nodes_[u].value;
        const Vec& vv = nodes_[v].value;
        Vec& gu = nodes_[u].grad;
        Vec& gv = nodes_[v].grad;
        for (std::size_t i = 0; i < uv.size(); ++i) {
            const double t = 2.0 * g * (uv[i] - vv[i]);
            gu[i] += t;
            gv[i] -= t;
        }
    });
}

NodeId Tape::add(NodeId a, NodeId b) {
    const Vec& av = nodes_[a].value;
    const Vec& bv = nodes_[b].value;
    check_same_size(av, bv, "add");
    Vec y(av.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = av[i] + bv[i];
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(y), [this, id, a, b] {
        const Vec& gy = nodes_[id].grad;
        Vec& ga = nodes_[a].grad;
        Vec& gb = nodes_[b].grad;
        for (std::size_t i = 0; i < gy.size(); ++i) {
            ga[i] += gy[i];
            gb[i] += gy[i];
        }
    });
}

NodeId Tape::sub(NodeId a, NodeId b) {
    const Vec& av = nodes_[a].value;
    const Vec& bv = nodes_[b].value;
    check_same_size(av, bv, "sub");
    Vec y(av.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = av[i] - bv[i];
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(y), [this, id, a, b] {
        const Vec& gy = nodes_[id].grad;
        Vec& ga = nodes_[a].grad;
        Vec& gb = nodes_[b].grad;
        for (std::size_t i = 0; i < gy.size(); ++i) {
            ga[i] += gy[i];
            gb[i] -= gy[i];
        }
    });
}

NodeId Tape::scale(NodeId a, double k) {
    Vec y = nodes_[a].value;
    for (double& v : y) v *= k;
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(y), [this, id, a, k] {
        const Vec& gy = nodes_[id].grad;
        Vec& ga = nodes_[a].grad;
        for (std::size_t i = 0; i < gy.size(); ++i) ga[i] += k * gy[i];
    });
}

NodeId Tape::add_scalar(NodeId a, double k) {
    Vec y = nodes_[a].value;
    for (double& v : y) v += k;
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(y), [this, id, a] {
        const Vec& gy = nodes_[id].grad;
        Vec& ga = nodes_[a].grad;
        for (std::size_t i = 0; i < gy.size(); ++i) ga[i] += gy[i];
    });
}

NodeId Tape::relu(NodeId a) {
    Vec y = nodes_[a].value;
    for (double& v : y) v = v > 0.0 ? v : 0.0;
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(y), [this, id, a] {
        const Vec& gy = nodes_[id].grad;
        const Vec& av = nodes_[a].value;
        Vec& ga = nodes_[a].grad;
        for (std::size_t i = 0; i < gy.size(); ++i) {
            if (av[i] > 0.0) ga[i] += gy[i];
        }
    });
}

NodeId Tape::square(NodeId a) {
    Vec y = nodes_[a].value;
    for (double& v : y) v *= v;
    NodeId id = static_cast<NodeId>(nodes_.size());
    return push(std::move(y), [this, id, a] {
        const Vec& gy = nodes_[id].grad;
        const Vec& av = nodes_[a].value;
        Vec& ga = nodes_[a].grad;
        for (std::size_t i = 0; i < gy.size(); ++i) ga[i] += 2.0 * av[i] * gy[i];
    });
}

void Tape::backward(NodeId root, double seed) {
    if (nodes_[root].value.size() != 1) {
        throw std::invalid_argument("backward: root must be scalar-valued");
    }
    for (NodeId i = 0; i <= root; ++i) {
        nodes_[i].grad.assign(nodes_[i].value.size(), 0.0);
    }
    nodes_[root].grad[0] = seed;
    for (NodeId i = root + 1; i-- > 0;) {
        if (nodes_[i].back) nodes_[i].back();
    }
}

void Tape::reset() { nodes_.clear(); }

// ---------------------------------------------------------------------------

GradCheckReport grad_check(const std::function<double(bool with_grad)>& loss,
                           std::span<Param* const> params, double tolerance, double fd_step) {
    GradCheckReport report;
    for (Param* p : params) p->zero_grad();
    loss(true);
    // Snapshot analytic grads; the numeric sweep reuses the params.
    std::vector<Vec> analytic;
    analytic.reserve(params.size());
    for (Param* p : params) analytic.push_back(p->grad.data);

    for (std::size_t pi = 0; pi < params.size(); ++pi) {
        Param& p = *params[pi];
        for (std::size_t i = 0; i < p.value.size(); ++i) {
            const double saved = p.value.data[i];
            p.value.data[i] = saved + fd_step;
            const double up = loss(false);
            p.value.data[i] = saved - fd_step;
            const double down = loss(false);
            p.value.data[i] = saved;
            const double numeric = (up - down) / (2.0 * fd_step);
            const double a = analytic[pi][i];
            const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1.0});
            ++report.checked;
            if (rel > report.max_rel_error) {
                report.max_rel_error = rel;
                report.worst_param = p.name + "[" + std::to_string(i) + "]";
            }
        }
    }
    report.pass = report.max_rel_error <= tolerance;
    return report;
}

// ---------------------------------------------------------------------------

void save_tensors(const std::filesystem::path& path, std::span<const Param* const> params,
                  const std::vector<std::string>& header_lines) {
    std::string out = "jel-tensors 1\n";
    for (const auto& h : header_lines) out += h + "\n";
    out += "tensors " + std::to_string(params.size()) + "\n";
    for (const Param* p : params) {
        if (p->name.find_first_of(" \t\n") != std::string::npos) {
            throw std::invalid_argument("tensor name contains whitespace: " + p->name);
        }
        out += "tensor " + p->name + " " + std::to_string(p->value.rows) + " " +
               std::to_string(p->value.cols) + "\n";
        for (std::size_t r = 0; r < p->value.rows; ++r) {
            for (std::size_t c = 0; c < p->value.cols; ++c) {
                if (c) out += ' ';
                out += format_double(p->value.at(r, c));
            }
            out += '\n';
        }
    }
    write_file(path, out);
}

TensorFile load_tensors(const std::filesystem::path& path) {
    auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "jel-tensors 1") {
        throw ParseError("not a jel-tensors file: " + path.string());
    }
    TensorFile file;
    std::size_t i = 1;
    while (i < lines.size() && lines[i].rfind("tensors ", 0) != 0) {
        file.header_lines.push_back(lines[i]);
        ++i;
    }
    if (i == lines.size()) throw ParseError("missing tensors count: " + path.string());
    const auto count = static_cast<std::size_t>(parse_int(lines[i].substr(8), "tensor count"));
    ++i;
    for (std::size_t t = 0; t < count; ++t) {
        if (i >= lines.size()) throw ParseError("truncated tensor file: " + path.string());
        auto fields = split_spaces(lines[i]);
        if (fields.size() != 4 || fields[0] != "tensor") {
            throw ParseError("bad tensor header at line " + std::to_string(i + 1));
        }
        const auto rows = static_cast<std::size_t>(parse_int(fields[2], "rows"));
        const auto cols = static_cast<std::size_t>(parse_int(fields[3], "cols"));
        Param p(fields[1], rows, cols);
        ++i;
        for (std::size_t r = 0; r < rows; ++r, ++i) {
            if (i >= lines.size()) throw ParseError("truncated tensor payload: " + p.name);
            auto nums = split_spaces(lines[i]);
            if (nums.size() != cols) {
                throw ParseError("tensor " + p.name + ": expected " + std::to_string(cols) +
                                 " values at line " + std::to_string(i + 1));
            }
            for (std::size_t c = 0; c < cols; ++c) {
                p.value.at(r, c) = parse_double(nums[c], p.name);
            }
        }
        file.tensors.push_back(std::move(p));
    }
    return file;
}

void load_into(const TensorFile& file, std::span<Param* const> params) {
    for (Param* p : params) {
        const Param* found = nullptr;
        for (const Param& t : file.tensors) {
            if (t.name == p->name) {
                found = &t;
                break;
            }
        }
        if (!found) throw ParseError("checkpoint is missing tensor: " + p->name);
        if (found->value.rows != p->value.rows || found->value.cols != p->value.cols) {
            throw ParseError("checkpoint shape mismatch for " + p->name);
        }
        p->value = found->value;
        p->zero_grad();
    }
}

}  // namespace jel::ad
