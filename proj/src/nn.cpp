#include "mixgen/nn.hpp"

#include <cmath>
#include <limits>

namespace mixgen::nn {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::Input, what);
}

Tape& tape_of(const Var& a) {
  require(a.tape != nullptr && a.id >= 0, "variable is not attached to a tape");
  return *a.tape;
}

Tape& common_tape(const Var& a, const Var& b) {
  Tape& t = tape_of(a);
  require(&t == &tape_of(b), "operands live on different tapes");
  return t;
}

bool any_grad(const Tape& t, std::initializer_list<int> ids) {
  for (int id : ids)
    if (t.requires_grad(id)) return true;
  return false;
}

}  // namespace

const Matrix& Var::value() const { return tape_of(*this).value(id); }

// ---------------------------------------------------------------------------
// Tape

Var Tape::constant(Matrix value) { return push(std::move(value), false, nullptr); }

Var Tape::param(Tensor& t, bool trainable) {
  if (auto it = bound_.find(&t); it != bound_.end()) return {this, it->second};
  Backward flush;
  if (trainable) {
    Tensor* target = &t;
    flush = [target](Tape&, const Matrix& g) {
      if (target->grad.rows() != g.rows() || target->grad.cols() != g.cols())
        target->grad = g;
      else
        target->grad += g;
    };
  }
  Var v = push(t.value, trainable, std::move(flush));
  bound_.emplace(&t, v.id);
  return v;
}

Var Tape::push(Matrix value, bool requires_grad, Backward backward) {
  nodes_.push_back({std::move(value), Matrix(), requires_grad, std::move(backward)});
  return {this, static_cast<int>(nodes_.size()) - 1};
}

void Tape::accumulate(int id, const Matrix& delta) {
  Node& node = nodes_[static_cast<std::size_t>(id)];
  if (!node.requires_grad) return;
  if (node.grad.size() == 0)
    node.grad = delta;
  else
    node.grad += delta;
}

void Tape::backward(const Var& loss) {
  require(loss.tape == this, "loss is not on this tape");
  require(value(loss.id).size() == 1, "backward needs a scalar loss");
  if (!requires_grad(loss.id)) return;
  accumulate(loss.id, Matrix::Ones(1, 1));
  for (int id = loss.id; id >= 0; --id) {
    Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.grad.size() == 0 || !node.backward) continue;
    const Matrix g = std::move(node.grad);
    node.grad = Matrix();
    node.backward(*this, g);
  }
}

// ---------------------------------------------------------------------------
// Operations

Var matmul(const Var& a, const Var& b) {
  Tape& t = common_tape(a, b);
  require(a.cols() == b.rows(), "matmul: inner dimensions differ");
  const int ia = a.id, ib = b.id;
  return t.push(a.value() * b.value(), any_grad(t, {ia, ib}),
                [ia, ib](Tape& tp, const Matrix& g) {
                  if (tp.requires_grad(ia)) tp.accumulate(ia, g * tp.value(ib).transpose());
                  if (tp.requires_grad(ib)) tp.accumulate(ib, tp.value(ia).transpose() * g);
                });
}

Var add(const Var& a, const Var& b) {
  Tape& t = common_tape(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), "add: shape mismatch");
  const int ia = a.id, ib = b.id;
  return t.push(a.value() + b.value(), any_grad(t, {ia, ib}),
                [ia, ib](Tape& tp, const Matrix& g) {
                  tp.accumulate(ia, g);
                  tp.accumulate(ib, g);
                });
}

Var sub(const Var& a, const Var& b) {
  Tape& t = common_tape(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), "sub: shape mismatch");
  const int ia = a.id, ib = b.id;
  return t.push(a.value() - b.value(), any_grad(t, {ia, ib}),
                [ia, ib](Tape& tp, const Matrix& g) {
                  tp.accumulate(ia, g);
                  if (tp.requires_grad(ib)) tp.accumulate(ib, -g);
                });
}

Var add_row(const Var& a, const Var& row) {
  Tape& t = common_tape(a, row);
  require(row.rows() == 1 && row.cols() == a.cols(), "add_row: row shape mismatch");
  const int ia = a.id, ir = row.id;
  Matrix out = a.value().rowwise() + row.value().row(0);
  return t.push(std::move(out), any_grad(t, {ia, ir}), [ia, ir](Tape& tp, const Matrix& g) {
    tp.accumulate(ia, g);
    if (tp.requires_grad(ir)) tp.accumulate(ir, g.colwise().sum());
  });
}

Var scale(const Var& a, double s) {
  Tape& t = tape_of(a);
  const int ia = a.id;
  return t.push(a.value() * s, t.requires_grad(ia),
                [ia, s](Tape& tp, const Matrix& g) { tp.accumulate(ia, g * s); });
}

Var relu(const Var& a) {
  Tape& t = tape_of(a);
  const int ia = a.id;
  return t.push(a.value().cwiseMax(0.0), t.requires_grad(ia), [ia](Tape& tp, const Matrix& g) {
    tp.accumulate(ia, (tp.value(ia).array() > 0.0).select(g, 0.0));
  });
}

Var hadamard(const Var& a, const Var& b) {
  Tape& t = common_tape(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), "hadamard: shape mismatch");
  const int ia = a.id, ib = b.id;
  return t.push(a.value().cwiseProduct(b.value()), any_grad(t, {ia, ib}),
                [ia, ib](Tape& tp, const Matrix& g) {
                  if (tp.requires_grad(ia)) tp.accumulate(ia, g.cwiseProduct(tp.value(ib)));
                  if (tp.requires_grad(ib)) tp.accumulate(ib, g.cwiseProduct(tp.value(ia)));
                });
}

Var concat_cols(const std::vector<Var>& parts) {
  require(!parts.empty(), "concat_cols: no inputs");
  Tape& t = tape_of(parts.front());
  const Eigen::Index rows = parts.front().rows();
  Eigen::Index cols = 0;
  bool grad = false;
  std::vector<int> ids;
  std::vector<Eigen::Index> widths;
  for (const Var& p : parts) {
    require(&tape_of(p) == &t, "concat_cols: operands live on different tapes");
    require(p.rows() == rows, "concat_cols: row counts differ");
    cols += p.cols();
    grad = grad || t.requires_grad(p.id);
    ids.push_back(p.id);
    widths.push_back(p.cols());
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const Var& p : parts) {
    out.middleCols(at, p.cols()) = p.value();
    at += p.cols();
  }
  return t.push(std::move(out), grad, [ids, widths](Tape& tp, const Matrix& g) {
    Eigen::Index off = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (tp.requires_grad(ids[k])) tp.accumulate(ids[k], g.middleCols(off, widths[k]));
      off += widths[k];
    }
  });
}

Var concat_rows(const std::vector<Var>& parts) {
  require(!parts.empty(), "concat_rows: no inputs");
  Tape& t = tape_of(parts.front());
  const Eigen::Index cols = parts.front().cols();
  Eigen::Index rows = 0;
  bool grad = false;
  std::vector<int> ids;
  std::vector<Eigen::Index> heights;
  for (const Var& p : parts) {
    require(&tape_of(p) == &t, "concat_rows: operands live on different tapes");
    require(p.cols() == cols, "concat_rows: column counts differ");
    rows += p.rows();
    grad = grad || t.requires_grad(p.id);
    ids.push_back(p.id);
    heights.push_back(p.rows());
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const Var& p : parts) {
    out.middleRows(at, p.rows()) = p.value();
    at += p.rows();
  }
  return t.push(std::move(out), grad, [ids, heights](Tape& tp, const Matrix& g) {
    Eigen::Index off = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (tp.requires_grad(ids[k])) tp.accumulate(ids[k], g.middleRows(off, heights[k]));
      off += heights[k];
    }
  });
}

Var gather_rows(const Var& a, const std::vector<int>& rows) {
  Tape& t = tape_of(a);
  const Matrix& v = a.value();
  Matrix out(static_cast<Eigen::Index>(rows.size()), v.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    require(rows[k] >= 0 && rows[k] < v.rows(), "gather_rows: index out of range");
    out.row(static_cast<Eigen::Index>(k)) = v.row(rows[k]);
  }
  const int ia = a.id;
  const Eigen::Index src_rows = v.rows();
  return t.push(std::move(out), t.requires_grad(ia),
                [ia, rows, src_rows](Tape& tp, const Matrix& g) {
                  Matrix d = Matrix::Zero(src_rows, g.cols());
                  for (std::size_t k = 0; k < rows.size(); ++k)
                    d.row(rows[k]) += g.row(static_cast<Eigen::Index>(k));
                  tp.accumulate(ia, d);
                });
}

Var segment_mean(const Var& a, const std::vector<int>& offsets) {
  Tape& t = tape_of(a);
  require(offsets.size() >= 2 && offsets.front() == 0 && offsets.back() == a.rows(),
          "segment_mean: offsets must run from 0 to the row count");
  const Eigen::Index segs = static_cast<Eigen::Index>(offsets.size()) - 1;
  Matrix out(segs, a.cols());
  for (Eigen::Index s = 0; s < segs; ++s) {
    const int lo = offsets[s], hi = offsets[s + 1];
    require(hi > lo, "segment_mean: empty segment");
    out.row(s) = a.value().middleRows(lo, hi - lo).colwise().mean();
  }
  const int ia = a.id;
  const Eigen::Index rows = a.rows();
  return t.push(std::move(out), t.requires_grad(ia),
                [ia, offsets, rows](Tape& tp, const Matrix& g) {
                  Matrix d(rows, g.cols());
                  for (std::size_t s = 0; s + 1 < offsets.size(); ++s) {
                    const int lo = offsets[s], hi = offsets[s + 1];
                    d.middleRows(lo, hi - lo).rowwise() =
                        g.row(static_cast<Eigen::Index>(s)) / double(hi - lo);
                  }
                  tp.accumulate(ia, d);
                });
}

Var mean_rows(const Var& a) {
  return segment_mean(a, {0, static_cast<int>(a.rows())});
}

Var broadcast_rows(const Var& row, Eigen::Index count) {
  Tape& t = tape_of(row);
  require(row.rows() == 1, "broadcast_rows: expected a single row");
  const int ir = row.id;
  return t.push(row.value().replicate(count, 1), t.requires_grad(ir),
                [ir](Tape& tp, const Matrix& g) { tp.accumulate(ir, g.colwise().sum()); });
}

Var select_col(const Var& a, Eigen::Index col) {
  Tape& t = tape_of(a);
  require(col >= 0 && col < a.cols(), "select_col: column out of range");
  const int ia = a.id;
  const Eigen::Index cols = a.cols();
  return t.push(a.value().col(col), t.requires_grad(ia),
                [ia, col, cols](Tape& tp, const Matrix& g) {
                  Matrix d = Matrix::Zero(g.rows(), cols);
                  d.col(col) = g;
                  tp.accumulate(ia, d);
                });
}

namespace {

Matrix softmax_value(const Matrix& x) {
  Matrix y = x.colwise() - x.rowwise().maxCoeff();
  y = y.array().exp();
  return y.array().colwise() / y.rowwise().sum().array();
}

}  // namespace

Var softmax_rows(const Var& a) {
  Tape& t = tape_of(a);
  const int ia = a.id;
  // The output node's id is the next slot; its value is read back in backward.
  const int io = static_cast<int>(t.size());
  return t.push(softmax_value(a.value()), t.requires_grad(ia), [ia, io](Tape& tp, const Matrix& g) {
    const Matrix& y = tp.value(io);
    const Eigen::VectorXd dot = g.cwiseProduct(y).rowwise().sum();
    tp.accumulate(ia, y.cwiseProduct(g.colwise() - dot));
  });
}

Var sum(const Var& a) {
  Tape& t = tape_of(a);
  const int ia = a.id;
  const Eigen::Index r = a.rows(), c = a.cols();
  return t.push(Matrix::Constant(1, 1, a.value().sum()), t.requires_grad(ia),
                [ia, r, c](Tape& tp, const Matrix& g) {
                  tp.accumulate(ia, Matrix::Constant(r, c, g(0, 0)));
                });
}

Var mean(const Var& a) {
  require(a.value().size() > 0, "mean: empty input");
  return scale(sum(a), 1.0 / static_cast<double>(a.value().size()));
}

Var pairs_to_symmetric(const Var& pairs, int n) {
  Tape& t = tape_of(pairs);
  require(pairs.cols() == 1 && pairs.rows() == static_cast<Eigen::Index>(n) * (n - 1) / 2,
          "pairs_to_symmetric: expected an n(n-1)/2 column");
  const Matrix& v = pairs.value();
  Matrix out = Matrix::Zero(n, n);
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) out(i, j) = out(j, i) = v(k, 0);
  const int ip = pairs.id;
  return t.push(std::move(out), t.requires_grad(ip), [ip, n](Tape& tp, const Matrix& g) {
    Matrix d(static_cast<Eigen::Index>(n) * (n - 1) / 2, 1);
    Eigen::Index k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k) d(k, 0) = g(i, j) + g(j, i);
    tp.accumulate(ip, d);
  });
}

Var block_diag_matmul(const std::vector<Var>& blocks, const Var& h) {
  Tape& t = tape_of(h);
  std::vector<int> ids;
  std::vector<Eigen::Index> starts;
  Eigen::Index at = 0;
  bool grad = t.requires_grad(h.id);
  for (const Var& b : blocks) {
    require(&tape_of(b) == &t, "block_diag_matmul: operands live on different tapes");
    require(b.rows() == b.cols(), "block_diag_matmul: blocks must be square");
    ids.push_back(b.id);
    starts.push_back(at);
    at += b.rows();
    grad = grad || t.requires_grad(b.id);
  }
  require(at == h.rows(), "block_diag_matmul: block sizes do not cover h");
  Matrix out(h.rows(), h.cols());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Eigen::Index m = blocks[k].rows();
    out.middleRows(starts[k], m).noalias() =
        blocks[k].value() * h.value().middleRows(starts[k], m);
  }
  const int ih = h.id;
  return t.push(std::move(out), grad, [ids, starts, ih](Tape& tp, const Matrix& g) {
    const Matrix& hv = tp.value(ih);
    Matrix dh;
    const bool want_h = tp.requires_grad(ih);
    if (want_h) dh.resize(hv.rows(), hv.cols());
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const Matrix& a = tp.value(ids[k]);
      const Eigen::Index m = a.rows();
      if (want_h) dh.middleRows(starts[k], m).noalias() = a.transpose() * g.middleRows(starts[k], m);
      if (tp.requires_grad(ids[k]))
        tp.accumulate(ids[k], g.middleRows(starts[k], m) * hv.middleRows(starts[k], m).transpose());
    }
    if (want_h) tp.accumulate(ih, dh);
  });
}

namespace {

Var conv_combine(const Var& h, const Var& agg, const Var& w_self, const Var& w_nbr,
                 const Var& bias, bool activate) {
  require(w_self.rows() == h.cols() && w_nbr.rows() == h.cols(),
          "graph_conv: weight rows must equal the feature width");
  require(w_self.cols() == w_nbr.cols(), "graph_conv: weight widths differ");
  Var out = add_row(add(matmul(h, w_self), matmul(agg, w_nbr)), bias);
  return activate ? relu(out) : out;
}

}  // namespace

Var graph_conv(const Var& h, const Var& adjacency, const Var& w_self, const Var& w_nbr,
               const Var& bias, bool activate) {
  require(adjacency.rows() == h.rows() && adjacency.cols() == h.rows(),
          "graph_conv: adjacency must be square over the nodes");
  return conv_combine(h, matmul(adjacency, h), w_self, w_nbr, bias, activate);
}

Var graph_conv(const Var& h, const std::vector<Var>& adjacency_blocks, const Var& w_self,
               const Var& w_nbr, const Var& bias, bool activate) {
  return conv_combine(h, block_diag_matmul(adjacency_blocks, h), w_self, w_nbr, bias,
                      activate);
}

// ---------------------------------------------------------------------------
// Losses

Var mse_loss(const Var& pred, const Eigen::VectorXd& target) {
  Tape& t = tape_of(pred);
  require(pred.cols() == 1 && pred.rows() == target.size() && target.size() > 0,
          "mse_loss: prediction and target lengths differ");
  const Eigen::VectorXd diff = pred.value().col(0) - target;
  const double s = static_cast<double>(target.size());
  const int ip = pred.id;
  return t.push(Matrix::Constant(1, 1, diff.squaredNorm() / s), t.requires_grad(ip),
                [ip, diff, s](Tape& tp, const Matrix& g) {
                  tp.accumulate(ip, (2.0 * g(0, 0) / s) * diff);
                });
}

Var ranking_loss(const Var& pred, const Eigen::VectorXd& target) {
  Tape& t = tape_of(pred);
  require(pred.cols() == 1 && pred.rows() == target.size(),
          "ranking_loss: prediction and target lengths differ");
  const Eigen::Index s = target.size();
  if (s < 2) throw Error(ErrorKind::Input, "ranking loss needs at least two samples");
  const Eigen::VectorXd yhat = pred.value().col(0);
  const double norm = static_cast<double>(s * s - s);
  double total = 0.0;
  Eigen::VectorXd d = Eigen::VectorXd::Zero(s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j) {
      if (i == j) continue;
      const double diff = target(i) - target(j);
      const double sg = (diff > 0.0) - (diff < 0.0);
      const double hinge = 1.0 - sg * (yhat(i) - yhat(j));
      if (hinge > 0.0) {
        total += hinge;
        d(i) -= sg;
        d(j) += sg;
      }
    }
  d /= norm;
  const int ip = pred.id;
  return t.push(Matrix::Constant(1, 1, total / norm), t.requires_grad(ip),
                [ip, d](Tape& tp, const Matrix& g) { tp.accumulate(ip, g(0, 0) * d); });
}

// ---------------------------------------------------------------------------
// Gumbel-Softmax

Matrix gumbel_noise(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double u = uniform01(rng);
      while (u <= 0.0) u = uniform01(rng);
      g(i, j) = -std::log(-std::log(u));
    }
  return g;
}

Var gumbel_softmax(const Var& logits, double tau, const Matrix& noise, bool hard) {
  if (!(tau > 0.0)) throw Error(ErrorKind::Input, "Gumbel-Softmax temperature must be > 0");
  Tape& t = tape_of(logits);
  require(noise.rows() == logits.rows() && noise.cols() == logits.cols(),
          "gumbel_softmax: noise shape mismatch");
  Var soft = softmax_rows(scale(add(logits, t.constant(noise)), 1.0 / tau));
  if (!hard) return soft;
  Matrix one_hot = Matrix::Zero(soft.rows(), soft.cols());
  for (Eigen::Index i = 0; i < soft.rows(); ++i) {
    Eigen::Index arg = 0;
    soft.value().row(i).maxCoeff(&arg);
    one_hot(i, arg) = 1.0;
  }
  const int is = soft.id;
  return t.push(std::move(one_hot), t.requires_grad(is),
                [is](Tape& tp, const Matrix& g) { tp.accumulate(is, g); });
}

Var gumbel_softmax(const Var& logits, double tau, Rng& rng, bool hard) {
  return gumbel_softmax(logits, tau, gumbel_noise(logits.rows(), logits.cols(), rng), hard);
}

// ---------------------------------------------------------------------------
// Layers

Matrix glorot(int in, int out, Rng& rng) {
  const double a = std::sqrt(6.0 / (in + out));
  Matrix w(in, out);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = uniform(rng, -a, a);
  return w;
}

Linear::Linear(const std::string& name, int in, int out, Rng& rng)
    : weight{name + ".weight", glorot(in, out, rng), Matrix()},
      bias{name + ".bias", Matrix::Zero(1, out), Matrix()} {}

Var Linear::forward(Tape& tape, const Var& x, bool trainable) {
  return add_row(matmul(x, tape.param(weight, trainable)), tape.param(bias, trainable));
}

Mlp::Mlp(const std::string& name, const std::vector<int>& widths, Rng& rng) {
  require(widths.size() >= 2, "Mlp needs at least input and output widths");
  for (std::size_t k = 0; k + 1 < widths.size(); ++k)
    layers.emplace_back(name + "." + std::to_string(k), widths[k], widths[k + 1], rng);
}

Var Mlp::forward(Tape& tape, const Var& x, bool trainable) {
  Var h = x;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    h = layers[k].forward(tape, h, trainable);
    if (k + 1 < layers.size()) h = relu(h);
  }
  return h;
}

std::vector<Tensor*> Mlp::tensors() {
  std::vector<Tensor*> out;
  for (Linear& l : layers)
    for (Tensor* t : l.tensors()) out.push_back(t);
  return out;
}

GraphConvLayer::GraphConvLayer(const std::string& name, int in, int out, Rng& rng)
    : w_self{name + ".w_self", glorot(in, out, rng), Matrix()},
      w_nbr{name + ".w_nbr", glorot(in, out, rng), Matrix()},
      bias{name + ".bias", Matrix::Zero(1, out), Matrix()} {}

Var GraphConvLayer::forward(Tape& tape, const Var& h, const Var& adjacency, bool activate,
                            bool trainable) {
  return graph_conv(h, adjacency, tape.param(w_self, trainable), tape.param(w_nbr, trainable),
                    tape.param(bias, trainable), activate);
}

Var GraphConvLayer::forward(Tape& tape, const Var& h, const std::vector<Var>& adjacency_blocks,
                            bool activate, bool trainable) {
  return graph_conv(h, adjacency_blocks, tape.param(w_self, trainable),
                    tape.param(w_nbr, trainable), tape.param(bias, trainable), activate);
}

// ---------------------------------------------------------------------------
// Adam

void adam_step(Tensor& param, AdamState& state, const AdamOptions& options) {
  if (param.grad.size() == 0) param.zero_grad();
  if (!param.grad.allFinite())
    throw Error(ErrorKind::Numeric, "non-finite gradient for " + param.name);
  if (state.m.size() == 0) {
    state.m = Matrix::Zero(param.value.rows(), param.value.cols());
    state.v = state.m;
  }
  ++state.step;
  state.m = options.beta1 * state.m + (1.0 - options.beta1) * param.grad;
  state.v = options.beta2 * state.v + (1.0 - options.beta2) * param.grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(options.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(options.beta2, static_cast<double>(state.step));
  param.value.array() -=
      options.lr * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + options.eps);
}

Adam::Adam(std::vector<Tensor*> params, AdamOptions options)
    : params_(std::move(params)), options_(options) {
  for (Tensor* p : params_) {
    m_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
  }
}

void Adam::step() {
  for (Tensor* p : params_) {
    if (p->grad.size() == 0) p->zero_grad();
    if (!p->grad.allFinite()) throw Error(ErrorKind::Numeric, "non-finite gradient for " + p->name);
  }
  ++step_;
  const double c1 = 1.0 - std::pow(options_.beta1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(options_.beta2, static_cast<double>(step_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Tensor& p = *params_[k];
    m_[k] = options_.beta1 * m_[k] + (1.0 - options_.beta1) * p.grad;
    v_[k] = options_.beta2 * v_[k] + (1.0 - options_.beta2) * p.grad.cwiseAbs2();
    p.value.array() -=
        options_.lr * (m_[k].array() / c1) / ((v_[k].array() / c2).sqrt() + options_.eps);
  }
}

void Adam::zero_grad() {
  for (Tensor* p : params_) p->zero_grad();
}

}  // namespace mixgen::nn
