#pragma once
// Reverse-mode differentiable compute core for the matcher and the
// embedding trainer. A Tape records vector-valued nodes during a forward
// pass; backward() walks the record in reverse and accumulates gradients
// into the Param leaves that ops referenced. Everything is 64-bit.
//
// The op set is exactly what the models need: dense/sparse linear layers,
// a standard three-gate LSTM step, softmax attention pooling, Euclidean
// and squared distances, and elementwise glue for composing losses.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "jel/dense.hpp"

namespace jel::ad {

struct Tensor {
    std::size_t rows = 0;
    std::size_t cols = 1;
    Vec data;  // row-major, rows*cols

    Tensor() = default;
    Tensor(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    static Tensor vector(std::size_t n) { return Tensor(n, 1); }

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
    std::size_t size() const { return data.size(); }
    void fill(double v) { std::fill(data.begin(), data.end(), v); }
};

/// Named trainable tensor; grad always mirrors value's shape.
struct Param {
    std::string name;
    Tensor value;
    Tensor grad;

    Param() = default;
    Param(std::string n, std::size_t rows, std::size_t cols)
        : name(std::move(n)), value(rows, cols), grad(rows, cols) {}

    void zero_grad() { grad.fill(0.0); }
    std::size_t rows() const { return value.rows; }
    std::size_t cols() const { return value.cols; }
};

// Uniform init in [-1/sqrt(fan_in), +1/sqrt(fan_in)].
void init_uniform(Param& p, std::size_t fan_in, std::mt19937_64& rng);

/// Weights of one LSTM direction. Gate order inside the fused tensors is
/// input, forget, candidate, output:
///   i = sigmoid(Wi x + Ui h + bi)      f = sigmoid(Wf x + Uf h + bf)
///   g = tanh  (Wg x + Ug h + bg)      o = sigmoid(Wo x + Uo h + bo)
///   c' = f.c + i.g                    h' = o.tanh(c')
struct LstmParams {
    Param w_input;   // (4H, X)
    Param w_hidden;  // (4H, H)
    Param bias;      // (4H, 1)

    LstmParams() = default;
    LstmParams(const std::string& prefix, std::size_t input_dim, std::size_t hidden_dim);

    std::size_t hidden_dim() const { return w_hidden.value.cols; }
    std::size_t input_dim() const { return w_input.value.cols; }
    void init(std::mt19937_64& rng);
    std::vector<Param*> params();
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

class Tape {
public:
    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    /// Non-trainable input vector.
    NodeId constant(Vec v);
    NodeId constant(std::span<const double> v);
    NodeId scalar_constant(double x);

    /// Trainable leaf; p must be vector-shaped. Backward adds into p.grad.
    NodeId leaf(Param& p);

    /// y = W x + b, W:(out,in), x:(in).
    NodeId linear(Param& w, Param& b, NodeId x);

    /// Sparse-input linear layer: x is an implicit binary vector with ones at
    /// `active_cols`, so y_i = b_i + sum_{j in active} W(i,j).
    NodeId linear_sparse(Param& w, Param& b, std::span<const std::uint32_t> active_cols);

    /// Row-layout twin of linear_sparse for (tokens x out) weight storage:
    /// y = b + sum_{r in active} W.row(r).
    NodeId row_sum(Param& w, Param& b, std::span<const std::uint32_t> active_rows);

    /// One LSTM step; returns the packed state [h; c] (2H). Pass kNoNode for
    /// the first step (zero initial state).
    NodeId lstm_step(LstmParams& p, NodeId x, NodeId hc_prev);

    NodeId slice(NodeId src, std::size_t offset, std::size_t len);
    NodeId concat(NodeId a, NodeId b);

    /// Softmax attention pooling over equally sized vectors:
    /// scores_k = <w_alpha, x_k>, a = softmax(scores), out = sum a_k x_k.
    /// Softmax is computed with max subtraction. The attention weights of the
    /// most recent call are readable via last_attention_weights().
    NodeId attention_pool(Param& w_alpha, std::span<const NodeId> xs);

    /// sqrt(sum (u-v)^2) as a scalar node. At distance 0 the (sub)gradient
    /// used is 0.
    NodeId euclidean_distance(NodeId u, NodeId v);
    /// sum (u-v)^2 as a scalar node.
    NodeId squared_distance(NodeId u, NodeId v);

    NodeId add(NodeId a, NodeId b);
    NodeId sub(NodeId a, NodeId b);
    NodeId scale(NodeId a, double k);
    NodeId add_scalar(NodeId a, double k);
    NodeId relu(NodeId a);
    NodeId square(NodeId a);

    const Vec& value(NodeId id) const { return nodes_[id].value; }
    double scalar(NodeId id) const { return nodes_[id].value[0]; }
    const Vec& last_attention_weights() const { return last_attention_; }

    /// Seeds d(root)/d(root) = seed and accumulates into every Param that
    /// participated. root must be scalar-valued.
    void backward(NodeId root, double seed = 1.0);

    /// Drops all recorded nodes; Params keep their accumulated grads.
    void reset();

    std::size_t node_count() const { return nodes_.size(); }

private:
    struct Node {
        Vec value;
        Vec grad;
        std::function<void()> back;  // empty for constants/leaf-less nodes
    };

    NodeId push(Vec value, std::function<void()> back);
    Vec& grad_of(NodeId id) { return nodes_[id].grad; }

    std::vector<Node> nodes_;
    Vec last_attention_;
};

// ---------------------------------------------------------------------------
// Gradient verification

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::string worst_param;
    std::size_t checked = 0;
    bool pass = false;
};

/// Central-difference check of every component of every listed param.
/// `loss(with_grad)` must rebuild its computation from current param values;
/// when with_grad is true it must also run backward so grads land in params.
GradCheckReport grad_check(const std::function<double(bool with_grad)>& loss,
                           std::span<Param* const> params, double tolerance,
                           double fd_step = 1e-4);

// ---------------------------------------------------------------------------
// Checkpoint format: "jel-tensors 1" header, then per tensor one
// "tensor <name> <rows> <cols>" line followed by `rows` lines of `cols`
// numbers. Doubles round-trip bit-exactly.

void save_tensors(const std::filesystem::path& path, std::span<const Param* const> params,
                  const std::vector<std::string>& header_lines = {});

struct TensorFile {
    std::vector<std::string> header_lines;  // lines between magic and tensors
    std::vector<Param> tensors;
};

TensorFile load_tensors(const std::filesystem::path& path);

/// Copies values from `file` into the listed params, matching by name;
/// throws if a param is missing or a shape disagrees.
void load_into(const TensorFile& file, std::span<Param* const> params);

}  // namespace jel::ad
