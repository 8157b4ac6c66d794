#include "mixgen/mgnet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace mixgen {

using nn::Matrix;
using nn::Tape;
using nn::Var;
using json = nlohmann::json;

namespace {

std::vector<int> head_widths(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> w{in};
  w.insert(w.end(), hidden.begin(), hidden.end());
  w.push_back(out);
  return w;
}

void append(std::vector<nn::Tensor*>& out, std::vector<nn::Tensor*> more) {
  out.insert(out.end(), more.begin(), more.end());
}

void check_features(const NetworkConfig& config, const Var& features) {
  if (features.cols() != config.feature_width)
    throw Error(ErrorKind::Input, "node feature width " + std::to_string(features.cols()) +
                                      " does not match the model's " +
                                      std::to_string(config.feature_width));
}

std::vector<Matrix> snapshot(const std::vector<nn::Tensor*>& tensors) {
  std::vector<Matrix> out;
  for (const nn::Tensor* t : tensors) out.push_back(t->value);
  return out;
}

}  // namespace

GraphInput constant_input(Tape& tape, const EncodedGraph& graph) {
  return {tape.constant(graph.features), tape.constant(graph.adjacency())};
}

Matrix depth_rows(const std::vector<int>& depths, int dim) {
  Matrix out(static_cast<Eigen::Index>(depths.size()), dim);
  for (std::size_t k = 0; k < depths.size(); ++k)
    out.row(static_cast<Eigen::Index>(k)) = depth_embedding(depths[k], dim).transpose();
  return out;
}

// ---------------------------------------------------------------------------
// Estimator

CostEstimator::CostEstimator(const NetworkConfig& cfg, std::uint64_t seed) : config(cfg) {
  Rng rng(derive_seed(seed, 0xe5));
  problem1 = {"estimator.problem1", cfg.feature_width, cfg.hidden, rng};
  problem2 = {"estimator.problem2", cfg.hidden, cfg.hidden, rng};
  mixer1 = {"estimator.mixer1", cfg.feature_width, cfg.hidden, rng};
  mixer2 = {"estimator.mixer2", cfg.hidden, cfg.hidden, rng};
  head = {"estimator.head", head_widths(2 * cfg.hidden + cfg.depth_dim, cfg.head, 1), rng};
}

std::vector<nn::Tensor*> CostEstimator::tensors() {
  std::vector<nn::Tensor*> out;
  append(out, problem1.tensors());
  append(out, problem2.tensors());
  append(out, mixer1.tensors());
  append(out, mixer2.tensors());
  append(out, head.tensors());
  return out;
}

Var estimator_forward(Tape& tape, CostEstimator& model, const GraphInput& problem,
                      const std::vector<GraphInput>& mixers, const Matrix& depths,
                      bool trainable) {
  const auto batch = static_cast<Eigen::Index>(mixers.size());
  if (batch == 0) throw Error(ErrorKind::Input, "estimator needs at least one mixer");
  if (depths.rows() != batch || depths.cols() != model.config.depth_dim)
    throw Error(ErrorKind::Input, "depth embedding rows must match the mixer batch");
  check_features(model.config, problem.features);

  Var hc = model.problem1.forward(tape, problem.features, problem.adjacency, true, trainable);
  hc = model.problem2.forward(tape, hc, problem.adjacency, false, trainable);
  const Var xc = nn::mean_rows(hc);

  std::vector<Var> feats, blocks;
  std::vector<int> offsets{0};
  for (const GraphInput& m : mixers) {
    check_features(model.config, m.features);
    feats.push_back(m.features);
    blocks.push_back(m.adjacency);
    offsets.push_back(offsets.back() + static_cast<int>(m.features.rows()));
  }
  Var hm = feats.size() == 1 ? feats.front() : nn::concat_rows(feats);
  hm = model.mixer1.forward(tape, hm, blocks, true, trainable);
  hm = model.mixer2.forward(tape, hm, blocks, false, trainable);
  const Var xm = nn::segment_mean(hm, offsets);

  const Var x = nn::concat_cols({nn::broadcast_rows(xc, batch), xm, tape.constant(depths)});
  return model.head.forward(tape, x, trainable);
}

std::vector<double> estimate_costs(CostEstimator& model, const EncodedGraph& problem,
                                   const std::vector<MixerSpec>& mixers,
                                   const std::vector<int>& depths) {
  if (mixers.size() != depths.size())
    throw Error(ErrorKind::Input, "one depth per mixer is required");
  Tape tape;
  std::vector<GraphInput> inputs;
  for (const MixerSpec& m : mixers) inputs.push_back(constant_input(tape, encode_mixer(m)));
  const Var y = estimator_forward(tape, model, constant_input(tape, problem), inputs,
                                  depth_rows(depths, model.config.depth_dim), false);
  const Matrix& v = y.value();
  return {v.data(), v.data() + v.size()};
}

double estimate_cost(CostEstimator& model, const EncodedGraph& problem, const MixerSpec& mixer,
                     int p) {
  return estimate_costs(model, problem, {mixer}, {p}).front();
}

TrainReport train_estimator(CostEstimator& model, const std::vector<EstimatorBatch>& data,
                            const EstimatorTrainOptions& options) {
  if (data.empty()) throw Error(ErrorKind::Input, "estimator dataset is empty");
  if (options.epochs < 1) throw Error(ErrorKind::Input, "epochs must be >= 1");
  TrainReport report;
  bool warned = false;
  for (const EstimatorBatch& b : data) {
    if (b.size() == 0 || b.depths.size() != b.size() ||
        static_cast<std::size_t>(b.labels.size()) != b.size())
      throw Error(ErrorKind::Input, "malformed estimator batch");
    if (b.size() < 2 && options.lambda_r != 0.0 && !warned) {
      report.warnings.push_back(
          "batch with fewer than two samples: ranking term skipped, training on MSE only");
      warned = true;
    }
  }

  // Encodings do not change across epochs.
  std::vector<std::vector<EncodedGraph>> mixer_graphs(data.size());
  std::vector<Matrix> depth_mats(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (const MixerSpec& m : data[i].mixers) mixer_graphs[i].push_back(encode_mixer(m));
    depth_mats[i] = depth_rows(data[i].depths, model.config.depth_dim);
  }

  nn::Adam adam(model.tensors(), {options.lr});
  Rng rng(derive_seed(options.seed, 0x7e));
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[uniform_index(rng, k)]);
    double total = 0.0;
    for (std::size_t idx : order) {
      const EstimatorBatch& b = data[idx];
      Tape tape;
      std::vector<GraphInput> inputs;
      for (const EncodedGraph& g : mixer_graphs[idx]) inputs.push_back(constant_input(tape, g));
      const Var pred =
          estimator_forward(tape, model, constant_input(tape, b.problem), inputs, depth_mats[idx]);
      Var loss = nn::scale(nn::mse_loss(pred, b.labels), options.lambda_e);
      if (b.size() >= 2 && options.lambda_r != 0.0)
        loss = nn::add(loss, nn::scale(nn::ranking_loss(pred, b.labels), options.lambda_r));
      const double value = loss.value()(0, 0);
      if (!std::isfinite(value))
        throw Error(ErrorKind::Numeric,
                    "estimator loss became non-finite at epoch " + std::to_string(epoch));
      total += value;
      adam.zero_grad();
      tape.backward(loss);
      adam.step();
    }
    report.loss_trace.push_back(total / static_cast<double>(data.size()));
    if (options.on_epoch) options.on_epoch(epoch, report.loss_trace.back());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Generator

MixerGenerator::MixerGenerator(const NetworkConfig& cfg, std::uint64_t seed) : config(cfg) {
  Rng rng(derive_seed(seed, 0x9e));
  type1 = {"generator.type1", cfg.feature_width, cfg.hidden, rng};
  type2 = {"generator.type2", cfg.hidden, cfg.hidden, rng};
  link1 = {"generator.link1", cfg.feature_width, cfg.hidden, rng};
  link2 = {"generator.link2", cfg.hidden, cfg.hidden, rng};
  type_head = {"generator.type_head", head_widths(cfg.hidden + cfg.depth_dim, cfg.head, 2), rng};
  link_head = {"generator.link_head", head_widths(cfg.hidden + cfg.depth_dim, cfg.head, 2), rng};
}

std::vector<nn::Tensor*> MixerGenerator::tensors() {
  std::vector<nn::Tensor*> out;
  append(out, type1.tensors());
  append(out, type2.tensors());
  append(out, link1.tensors());
  append(out, link2.tensors());
  append(out, type_head.tensors());
  append(out, link_head.tensors());
  return out;
}

GeneratorLogits generator_logits(Tape& tape, MixerGenerator& model, const EncodedGraph& problem,
                                 int p, bool trainable) {
  const int n = static_cast<int>(problem.output_nodes.size());
  if (n < 2) throw Error(ErrorKind::Input, "generator needs a problem graph with >= 2 qubits");
  const GraphInput in = constant_input(tape, problem);
  check_features(model.config, in.features);
  const Var xp = tape.constant(depth_rows({p}, model.config.depth_dim).replicate(n, 1));

  Var ht = model.type1.forward(tape, in.features, in.adjacency, true, trainable);
  ht = model.type2.forward(tape, ht, in.adjacency, false, trainable);
  ht = nn::concat_cols({nn::gather_rows(ht, problem.output_nodes), xp});

  Var hl = model.link1.forward(tape, in.features, in.adjacency, true, trainable);
  hl = model.link2.forward(tape, hl, in.adjacency, false, trainable);
  hl = nn::gather_rows(hl, problem.output_nodes);
  std::vector<int> left, right;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      left.push_back(i);
      right.push_back(j);
    }
  // Depth joins after the product; squaring the embedding would wash it out.
  const Var pairs = nn::concat_cols(
      {nn::hadamard(nn::gather_rows(hl, left), nn::gather_rows(hl, right)),
       tape.constant(depth_rows({p}, model.config.depth_dim).replicate(n * (n - 1) / 2, 1))});

  return {model.type_head.forward(tape, ht, trainable),
          model.link_head.forward(tape, pairs, trainable), n};
}

SoftMixer soften(Tape& tape, const GeneratorLogits& logits, double tau, Rng* rng) {
  const auto noise = [&](const Var& v) {
    return rng ? nn::gumbel_noise(v.rows(), v.cols(), *rng) : Matrix::Zero(v.rows(), v.cols());
  };
  SoftMixer s;
  s.type_probs = nn::gumbel_softmax(logits.types, tau, noise(logits.types), false);
  s.link_probs =
      nn::select_col(nn::gumbel_softmax(logits.links, tau, noise(logits.links), false), 1);
  const int n = logits.num_qubits;
  Matrix role = Matrix::Zero(n, feature::kType);
  role.col(feature::kRole + 3).setOnes();
  const int tail = kNodeFeatureWidth - feature::kType - 2;
  s.graph.features = nn::concat_cols(
      {tape.constant(role), s.type_probs, tape.constant(Matrix::Zero(n, tail))});
  s.graph.adjacency = nn::pairs_to_symmetric(s.link_probs, n);
  return s;
}

MixerSpec generate_mixer(MixerGenerator& model, const EncodedGraph& problem, int p, Rng* rng) {
  Tape tape;
  const GeneratorLogits logits = generator_logits(tape, model, problem, p, false);
  Matrix types = logits.types.value();
  Matrix links = logits.links.value();
  if (rng) {
    types += nn::gumbel_noise(types.rows(), types.cols(), *rng);
    links += nn::gumbel_noise(links.rows(), links.cols(), *rng);
  }
  const int n = logits.num_qubits;
  MixerSpec spec;
  for (int q = 0; q < n; ++q)
    spec.types.push_back(types(q, 1) > types(q, 0) ? PauliType::Y : PauliType::X);
  Eigen::MatrixXi ind = Eigen::MatrixXi::Zero(n, n);
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) ind(i, j) = ind(j, i) = links(k, 1) > links(k, 0);
  spec.groups = groups_from_edges(ind);
  return spec;
}

namespace {

// Mean predicted cost over the given depths; one tape per instance.
Var generator_objective(Tape& tape, MixerGenerator& generator, CostEstimator& estimator,
                        const EncodedGraph& problem, const std::vector<int>& depths, double tau,
                        Rng* rng, bool trainable) {
  std::vector<GraphInput> mixers;
  for (int p : depths) {
    const GeneratorLogits logits = generator_logits(tape, generator, problem, p, trainable);
    mixers.push_back(soften(tape, logits, tau, rng).graph);
  }
  const Var pred = estimator_forward(tape, estimator, constant_input(tape, problem), mixers,
                                     depth_rows(depths, estimator.config.depth_dim), false);
  return nn::mean(pred);
}

}  // namespace

TrainReport train_generator(MixerGenerator& generator, CostEstimator& estimator,
                            const std::vector<EncodedGraph>& instances,
                            const std::vector<int>& depths, const GeneratorTrainOptions& options) {
  if (instances.empty() || depths.empty())
    throw Error(ErrorKind::Input, "generator training needs instances and depths");
  if (options.epochs < 1) throw Error(ErrorKind::Input, "epochs must be >= 1");
  const std::vector<nn::Tensor*> frozen = estimator.tensors();
  const std::vector<Matrix> before = snapshot(frozen);

  TrainReport report;
  nn::Adam adam(generator.tensors(), {options.lr});
  Rng rng(derive_seed(options.seed, 0x6e));
  std::vector<std::size_t> order(instances.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[uniform_index(rng, k)]);
    for (std::size_t idx : order) {
      Tape tape;
      const Var loss = generator_objective(tape, generator, estimator, instances[idx], depths,
                                           options.tau, &rng, true);
      if (!std::isfinite(loss.value()(0, 0)))
        throw Error(ErrorKind::Numeric,
                    "generator loss became non-finite at epoch " + std::to_string(epoch));
      adam.zero_grad();
      tape.backward(loss);
      adam.step();
    }
    // Noise-free objective after the epoch, so the trace is not Gumbel-noisy.
    double total = 0.0;
    for (const EncodedGraph& g : instances) {
      Tape tape;
      total += generator_objective(tape, generator, estimator, g, depths, options.tau, nullptr,
                                   false)
                   .value()(0, 0);
    }
    report.loss_trace.push_back(total / static_cast<double>(instances.size()));
    if (options.on_epoch) options.on_epoch(epoch, report.loss_trace.back());
  }

  const std::vector<Matrix> after = snapshot(frozen);
  for (std::size_t k = 0; k < frozen.size(); ++k)
    if (before[k].size() != after[k].size() || before[k] != after[k])
      throw Error(ErrorKind::Invariant,
                  "estimator tensor " + frozen[k]->name + " changed during generator training");
  return report;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

constexpr const char* kFormat = "mixgen-checkpoint";
constexpr int kVersion = 1;

json config_json(const NetworkConfig& c) {
  return {{"feature_width", c.feature_width},
          {"hidden", c.hidden},
          {"depth_dim", c.depth_dim},
          {"head", c.head}};
}

NetworkConfig config_from_json(const json& j) {
  NetworkConfig c;
  c.feature_width = j.at("feature_width").get<int>();
  c.hidden = j.at("hidden").get<int>();
  c.depth_dim = j.at("depth_dim").get<int>();
  c.head = j.at("head").get<std::vector<int>>();
  return c;
}

json read_checkpoint(const std::string& path, const std::string& kind) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, "cannot open checkpoint " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, "checkpoint " + path + " is not valid JSON: " + e.what());
  }
  if (j.value("format", "") != kFormat || j.value("version", 0) != kVersion)
    throw Error(ErrorKind::Input, "checkpoint " + path + " has an unknown format or version");
  if (j.value("kind", "") != kind)
    throw Error(ErrorKind::Input, "checkpoint " + path + " holds a " + j.value("kind", "?") +
                                      ", expected " + kind);
  return j;
}

void load_tensors(const json& j, const std::vector<nn::Tensor*>& tensors,
                  const std::string& path) {
  const json& list = j.at("tensors");
  if (list.size() != tensors.size())
    throw Error(ErrorKind::Input, "checkpoint " + path + " tensor count does not match the model");
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    const json& t = list[k];
    nn::Tensor& dst = *tensors[k];
    const auto rows = t.at("shape")[0].get<Eigen::Index>();
    const auto cols = t.at("shape")[1].get<Eigen::Index>();
    if (t.at("name").get<std::string>() != dst.name || rows != dst.value.rows() ||
        cols != dst.value.cols())
      throw Error(ErrorKind::Input,
                  "checkpoint " + path + " shape manifest mismatch at tensor " + dst.name);
    const auto data = t.at("data").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
      throw Error(ErrorKind::Input, "checkpoint " + path + " tensor " + dst.name + " is truncated");
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) dst.value(r, c) = data[r * cols + c];
  }
}

}  // namespace

void save_checkpoint(const std::string& path, const std::string& kind, const NetworkConfig& config,
                     const std::vector<nn::Tensor*>& tensors) {
  json list = json::array();
  for (const nn::Tensor* t : tensors) {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(t->value.size()));
    for (Eigen::Index r = 0; r < t->value.rows(); ++r)
      for (Eigen::Index c = 0; c < t->value.cols(); ++c) data.push_back(t->value(r, c));
    list.push_back({{"name", t->name},
                    {"shape", {t->value.rows(), t->value.cols()}},
                    {"data", std::move(data)}});
  }
  const json j = {{"format", kFormat},
                  {"version", kVersion},
                  {"kind", kind},
                  {"config", config_json(config)},
                  {"tensors", std::move(list)}};
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Input, "cannot write checkpoint " + path);
  out << j.dump() << '\n';
}

void save_checkpoint(const std::string& path, CostEstimator& model) {
  save_checkpoint(path, "estimator", model.config, model.tensors());
}

void save_checkpoint(const std::string& path, MixerGenerator& model) {
  save_checkpoint(path, "generator", model.config, model.tensors());
}

CostEstimator load_estimator(const std::string& path) {
  const json j = read_checkpoint(path, "estimator");
  CostEstimator model(config_from_json(j.at("config")), 0);
  load_tensors(j, model.tensors(), path);
  return model;
}

MixerGenerator load_generator(const std::string& path) {
  const json j = read_checkpoint(path, "generator");
  MixerGenerator model(config_from_json(j.at("config")), 0);
  load_tensors(j, model.tensors(), path);
  return model;
}

}  // namespace mixgen
