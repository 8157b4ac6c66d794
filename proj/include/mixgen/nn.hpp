#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mixgen/common.hpp"

namespace mixgen::nn {

using Matrix = Eigen::MatrixXd;

/// Named trainable tensor with its gradient buffer (same shape once touched).
struct Tensor {
  std::string name;
  Matrix value;
  Matrix grad;

  void zero_grad() { grad.setZero(value.rows(), value.cols()); }
};

class Tape;

/// Handle to a node on a tape.
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  const Matrix& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
};

/// Reverse-mode recorder. Nodes are appended in evaluation order, so a plain
/// reverse walk is a valid reverse topological order.
class Tape {
 public:
  using Backward = std::function<void(Tape&, const Matrix& out_grad)>;

  Var constant(Matrix value);
  /// Leaf bound to `t`; one node per tensor per tape. Gradients reach
  /// `t.grad` only when `trainable`.
  Var param(Tensor& t, bool trainable = true);
  Var push(Matrix value, bool requires_grad, Backward backward);

  const Matrix& value(int id) const { return nodes_[static_cast<std::size_t>(id)].value; }
  bool requires_grad(int id) const { return nodes_[static_cast<std::size_t>(id)].requires_grad; }
  /// Adds `delta` into node `id`'s gradient when it participates.
  void accumulate(int id, const Matrix& delta);

  /// Seeds d(loss)/d(loss) = 1 on a 1x1 node and sweeps backwards.
  void backward(const Var& loss);
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    Backward backward;
  };
  std::vector<Node> nodes_;
  std::unordered_map<const Tensor*, int> bound_;
};

// Primitive operations. Shapes are checked; mismatches throw Input errors.
Var matmul(const Var& a, const Var& b);
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
/// a (r x c) + row (1 x c) broadcast over rows.
Var add_row(const Var& a, const Var& row);
Var scale(const Var& a, double s);
Var relu(const Var& a);
Var hadamard(const Var& a, const Var& b);
Var concat_cols(const std::vector<Var>& parts);
Var concat_rows(const std::vector<Var>& parts);
Var gather_rows(const Var& a, const std::vector<int>& rows);
/// Row means of consecutive segments: output row s is the mean of rows
/// [offsets[s], offsets[s+1]).
Var segment_mean(const Var& a, const std::vector<int>& offsets);
Var mean_rows(const Var& a);
Var broadcast_rows(const Var& row, Eigen::Index count);
Var select_col(const Var& a, Eigen::Index col);
Var softmax_rows(const Var& a);
Var sum(const Var& a);
Var mean(const Var& a);
/// Scatters P = n(n-1)/2 pair values (i<j order) into a symmetric n x n matrix
/// with zero diagonal.
Var pairs_to_symmetric(const Var& pairs, int n);
/// blockdiag(blocks) * h without forming the block-diagonal matrix. Block k
/// is square and acts on the next blocks[k].rows() rows of h.
Var block_diag_matmul(const std::vector<Var>& blocks, const Var& h);

/// h' = act(h W_self + (A h) W_nbr + bias)
Var graph_conv(const Var& h, const Var& adjacency, const Var& w_self, const Var& w_nbr,
               const Var& bias, bool activate);
/// Same layer with A given as diagonal blocks (a batch of disjoint graphs).
Var graph_conv(const Var& h, const std::vector<Var>& adjacency_blocks, const Var& w_self,
               const Var& w_nbr, const Var& bias, bool activate);

/// (1/S) sum (y - yhat)^2 over a column of predictions.
Var mse_loss(const Var& pred, const Eigen::VectorXd& target);
/// (1/(S^2 - S)) sum_{i != j} max(0, 1 - sign(y_i - y_j)(yhat_i - yhat_j)),
/// with sign(0) = 0. Needs S >= 2.
Var ranking_loss(const Var& pred, const Eigen::VectorXd& target);

/// Standard Gumbel(0, 1) noise matrix.
Matrix gumbel_noise(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Row-wise softmax((logits + noise) / tau). Hard mode emits the row argmax as
/// a one-hot on the forward pass and routes gradients through the soft
/// sample (straight-through).
Var gumbel_softmax(const Var& logits, double tau, const Matrix& noise, bool hard);
Var gumbel_softmax(const Var& logits, double tau, Rng& rng, bool hard);

// ---------------------------------------------------------------------------
// Layers

struct Linear {
  Tensor weight;  // in x out
  Tensor bias;    // 1 x out

  Linear() = default;
  Linear(const std::string& name, int in, int out, Rng& rng);
  Var forward(Tape& tape, const Var& x, bool trainable = true);
  std::vector<Tensor*> tensors() { return {&weight, &bias}; }
};

/// Affine + ReLU stack with a linear final layer.
struct Mlp {
  std::vector<Linear> layers;

  Mlp() = default;
  Mlp(const std::string& name, const std::vector<int>& widths, Rng& rng);
  Var forward(Tape& tape, const Var& x, bool trainable = true);
  std::vector<Tensor*> tensors();
};

struct GraphConvLayer {
  Tensor w_self;  // in x out
  Tensor w_nbr;   // in x out
  Tensor bias;    // 1 x out

  GraphConvLayer() = default;
  GraphConvLayer(const std::string& name, int in, int out, Rng& rng);
  Var forward(Tape& tape, const Var& h, const Var& adjacency, bool activate,
              bool trainable = true);
  Var forward(Tape& tape, const Var& h, const std::vector<Var>& adjacency_blocks,
              bool activate, bool trainable = true);
  std::vector<Tensor*> tensors() { return {&w_self, &w_nbr, &bias}; }
};

/// Glorot-uniform initialized matrix.
Matrix glorot(int in, int out, Rng& rng);

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam over a fixed tensor list.
class Adam {
 public:
  Adam(std::vector<Tensor*> params, AdamOptions options);
  /// Applies one update from the tensors' current gradients. Throws Numeric on
  /// non-finite gradients before touching any value.
  void step();
  void zero_grad();
  long steps() const { return step_; }
  const AdamOptions& options() const { return options_; }

 private:
  std::vector<Tensor*> params_;
  AdamOptions options_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  long step_ = 0;
};

/// Sequential adam_step for a single tensor with explicit state; exposed for
/// unit tests of the update rule.
struct AdamState {
  Matrix m;
  Matrix v;
  long step = 0;
};
void adam_step(Tensor& param, AdamState& state, const AdamOptions& options);

}  // namespace mixgen::nn
