#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixgen/common.hpp"
#include "mixgen/mixer.hpp"
#include "mixgen/nn.hpp"

namespace mixgen {

struct NetworkConfig {
  int feature_width = kNodeFeatureWidth;
  int hidden = 128;
  int depth_dim = 128;
  std::vector<int> head = {256, 64};
};

/// Graph handed to a network: node features plus message-passing matrix,
/// both possibly differentiable.
struct GraphInput {
  nn::Var features;
  nn::Var adjacency;
};

GraphInput constant_input(nn::Tape& tape, const EncodedGraph& graph);
/// Depth embeddings stacked as rows.
nn::Matrix depth_rows(const std::vector<int>& depths, int dim);

/// Three-branch cost estimator: problem GNN, mixer GNN and depth embedding
/// are concatenated into an MLP head that predicts the minimum loss.
struct CostEstimator {
  NetworkConfig config;
  nn::GraphConvLayer problem1, problem2;
  nn::GraphConvLayer mixer1, mixer2;
  nn::Mlp head;

  CostEstimator(const NetworkConfig& config, std::uint64_t seed);
  std::vector<nn::Tensor*> tensors();
};

/// Predictions (B x 1) for one problem graph against B mixer graphs at the
/// given depths (B rows of depth embedding). Mixer graphs are batched as
/// disjoint blocks.
nn::Var estimator_forward(nn::Tape& tape, CostEstimator& model, const GraphInput& problem,
                          const std::vector<GraphInput>& mixers, const nn::Matrix& depths,
                          bool trainable = true);

/// Convenience: predicted cost of (instance encoding, mixer, p).
double estimate_cost(CostEstimator& model, const EncodedGraph& problem, const MixerSpec& mixer,
                     int p);
std::vector<double> estimate_costs(CostEstimator& model, const EncodedGraph& problem,
                                   const std::vector<MixerSpec>& mixers,
                                   const std::vector<int>& depths);

/// Records that share one problem instance; the ranking loss is taken within
/// a batch.
struct EstimatorBatch {
  EncodedGraph problem;
  std::vector<MixerSpec> mixers;
  std::vector<int> depths;
  Eigen::VectorXd labels;

  std::size_t size() const { return mixers.size(); }
};

struct EstimatorTrainOptions {
  int epochs = 250;
  double lr = 1e-4;
  double lambda_e = 1.0;
  double lambda_r = 1.0;
  std::uint64_t seed = 0;
  /// Called after every epoch with (epoch, mean loss).
  std::function<void(int, double)> on_epoch;
};

struct TrainReport {
  std::vector<double> loss_trace;  // mean training loss per epoch
  std::vector<std::string> warnings;
};

TrainReport train_estimator(CostEstimator& model, const std::vector<EstimatorBatch>& data,
                            const EstimatorTrainOptions& options);

// ---------------------------------------------------------------------------

/// Two-head generator over the problem graph: per-qubit operator type and
/// pairwise shared-parameter indicators.
struct MixerGenerator {
  NetworkConfig config;
  nn::GraphConvLayer type1, type2;
  nn::GraphConvLayer link1, link2;
  nn::Mlp type_head;
  nn::Mlp link_head;

  MixerGenerator(const NetworkConfig& config, std::uint64_t seed);
  std::vector<nn::Tensor*> tensors();
};

struct GeneratorLogits {
  nn::Var types;  // n x 2, columns (X, Y)
  nn::Var links;  // n(n-1)/2 x 2, columns (separate, shared), pairs i<j
  int num_qubits = 0;
};

GeneratorLogits generator_logits(nn::Tape& tape, MixerGenerator& model,
                                 const EncodedGraph& problem, int p, bool trainable = true);

/// Relaxed mixer: type probabilities and shared-parameter probabilities,
/// already shaped as an estimator-ready graph.
struct SoftMixer {
  nn::Var type_probs;  // n x 2
  nn::Var link_probs;  // n(n-1)/2 x 1
  GraphInput graph;
};

/// Gumbel-Softmax relaxation of the logits. A null rng means zero noise.
SoftMixer soften(nn::Tape& tape, const GeneratorLogits& logits, double tau, Rng* rng);

/// Hard decision: argmax of (logits + optional Gumbel noise), links closed
/// transitively into a canonical grouping.
MixerSpec generate_mixer(MixerGenerator& model, const EncodedGraph& problem, int p,
                         Rng* rng = nullptr);

struct GeneratorTrainOptions {
  int epochs = 50;
  double lr = 1e-4;
  double tau = 1.0;
  std::uint64_t seed = 0;
  std::function<void(int, double)> on_epoch;
};

/// Minimizes the frozen estimator's predicted cost of generated mixers over
/// every (instance, depth) pair. Throws Invariant if the estimator changed.
TrainReport train_generator(MixerGenerator& generator, CostEstimator& estimator,
                            const std::vector<EncodedGraph>& instances,
                            const std::vector<int>& depths, const GeneratorTrainOptions& options);

// ---------------------------------------------------------------------------
// Checkpoints: JSON with format tag, version, kind, config and named tensors.

void save_checkpoint(const std::string& path, const std::string& kind, const NetworkConfig& config,
                     const std::vector<nn::Tensor*>& tensors);
void save_checkpoint(const std::string& path, CostEstimator& model);
void save_checkpoint(const std::string& path, MixerGenerator& model);
/// Rejects a kind mismatch or any tensor whose name or shape differs.
CostEstimator load_estimator(const std::string& path);
MixerGenerator load_generator(const std::string& path);

}  // namespace mixgen
