#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mixgen/common.hpp"
#include "mixgen/graph.hpp"
#include "mixgen/pauli.hpp"
#include "mixgen/simulator.hpp"

namespace mixgen {

enum class ProblemKind { MaxCut, TFIM };
const char* to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(std::string_view s);

/// Max-Cut: edge weights are w_ij. TFIM: ring graph whose edge weights are the
/// couplings J_ij, plus the shared field h.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::MaxCut;
  WeightedGraph graph;
  double h = 0.0;

  int num_qubits() const { return graph.n; }
  void validate() const;
};

ProblemInstance make_tfim_ring(const std::vector<double>& couplings, double h);

/// 0.5 * sum w_ij Z_i Z_j
PauliSum maxcut_hamiltonian(const WeightedGraph& graph);
/// -sum J_ij Z_i Z_j - h sum X_i; parallel ring edges (n = 2) merge.
PauliSum tfim_hamiltonian(const ProblemInstance& instance);
PauliSum cost_hamiltonian(const ProblemInstance& instance);

inline constexpr int kMaxBruteForceVertices = 22;

struct MaxCutOptimum {
  double value = 0.0;
  /// Optimal assignments with vertex 0 fixed to side 0, bit v = side of v.
  std::vector<std::uint32_t> argmax;
};

double cut_value(const WeightedGraph& graph, std::uint64_t assignment);
MaxCutOptimum brute_force_maxcut(const WeightedGraph& graph);

inline constexpr int kMaxLanczosQubits = 16;
inline constexpr int kMaxDenseQubits = 10;

/// Smallest eigenvalue: direct minimum for diagonal sums, Lanczos otherwise.
double ground_energy(const PauliSum& hamiltonian);
double ground_energy_dense(const PauliSum& hamiltonian);
double ground_energy_lanczos(const PauliSum& hamiltonian);

/// Optimal objective of the instance: C_max for Max-Cut, E_0 for TFIM.
double optimal_value(const ProblemInstance& instance);

/// Max-Cut: (W/2 - <H_C>) / C_max. TFIM: <H> / E_0. Throws Consistency when
/// the ratio exceeds 1 + 1e-6.
double approximation_ratio(const ProblemInstance& instance,
                           double achieved_expectation, double optimum);
double approximation_ratio(const ProblemInstance& instance,
                           double achieved_expectation);

struct Solution {
  std::vector<int> sides;  // 0/1 per vertex
  double value = 0.0;
  double ratio = 0.0;
  bool warning = false;
};

/// Single-pass greedy over vertices in index order.
Solution greedy_maxcut(const WeightedGraph& graph);

struct GwOptions {
  int rounds = 1;
  int max_iters = 5000;
  double step = 0.1;
  double tol = 1e-10;
};

/// Burer-Monteiro low-rank SDP relaxation with random-hyperplane rounding.
Solution gw_maxcut(const WeightedGraph& graph, Rng& rng,
                   const GwOptions& options = {});

/// MixerSpec for multi-angle QAOA: all-X, one group per qubit.
MixerSpec ma_qaoa_spec(int n);

struct AdaptOptions {
  int max_depth = 10;
  double grad_threshold = 1e-3;
  double alpha_init = 0.01;
  OptimizeOptions optimizer;
  std::uint64_t seed = 0;
};

struct AdaptResult {
  CircuitSpec circuit;
  OptimizeReport report;
  std::vector<int> selected;  // pool indices, one per layer
};

/// Default pool: {sum X_i} then each X_i then each Y_i.
std::vector<PauliSum> adapt_default_pool(int n);

/// Commutator score 2 |Im <H phi | A phi>| with phi = e^{-i alpha H} psi.
double adapt_score(const PauliSum& cost, const PauliSum& op,
                   const StateVector& psi, double alpha);

/// Layer-wise greedy mixer selection. Pool entries must be sums of
/// single-qubit X/Y terms with one shared coefficient.
AdaptResult adapt_qaoa(const ProblemInstance& instance,
                       const std::vector<PauliSum>& pool,
                       const AdaptOptions& options = {});

}  // namespace mixgen
