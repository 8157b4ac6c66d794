#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mixgen/common.hpp"
#include "mixgen/mixer.hpp"
#include "mixgen/pauli.hpp"

namespace mixgen {

inline constexpr int kMaxSimQubits = 20;
inline constexpr double kNormTolerance = 1e-9;

/// Dense 2^N amplitude vector.
class StateVector {
 public:
  StateVector() = default;
  StateVector(int num_qubits, Eigen::VectorXcd amplitudes);

  static StateVector basis(int num_qubits, std::size_t index);
  /// |+>^N
  static StateVector plus(int num_qubits);

  int num_qubits() const { return n_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = kNormTolerance) const;

 private:
  int n_ = 0;
  Eigen::VectorXcd amps_;
};

/// One mixer gate e^{-i beta P} on `qubit`, angle taken from `group`.
struct MixerGate {
  int qubit = 0;
  PauliType type = PauliType::X;
  int group = 0;
};

/// Mixer for one layer: commuting single-qubit gates with K groups. A
/// MixerSpec expands to a layer that covers every qubit; ADAPT-style layers
/// may touch a subset.
struct MixerLayer {
  std::vector<MixerGate> gates;
  int group_count = 0;

  static MixerLayer from_spec(const MixerSpec& spec);
};

/// How e^{-i alpha H_C} is applied.
enum class CostPath { Diagonal, DenseEigen, Krylov };

/// Layered QAOA program. Immutable after construction; precomputed cost
/// data (diagonal energies or eigendecomposition) is shared between copies.
class CircuitSpec {
 public:
  CircuitSpec(PauliSum cost, MixerSpec mixer, int depth);
  /// Per-layer mixers (size == depth).
  CircuitSpec(PauliSum cost, std::vector<MixerLayer> layers, int num_qubits);

  int num_qubits() const { return n_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  const PauliSum& cost() const { return cost_; }
  const std::optional<MixerSpec>& mixer() const { return mixer_; }
  const MixerLayer& layer(int k) const { return layers_[k]; }
  bool diagonal() const { return path_ == CostPath::Diagonal; }
  CostPath cost_path() const { return path_; }
  /// Forces the Krylov path even when a dense one would be chosen.
  CircuitSpec with_cost_path(CostPath path) const;

  /// p * (1 + K) for a uniform mixer; sum over layers otherwise.
  std::size_t parameter_count() const;
  /// Offset of layer k's cost angle in the flat parameter vector; the K mixer
  /// angles of that layer follow it.
  std::size_t layer_offset(int k) const { return offsets_[k]; }

  // State kernels.
  void apply_cost(Eigen::VectorXcd& psi, double alpha) const;
  /// Same evolution on two states, sharing the phase or basis work.
  void apply_cost(Eigen::VectorXcd& a, Eigen::VectorXcd& b, double alpha) const;
  void apply_cost_hamiltonian(const Eigen::VectorXcd& in,
                              Eigen::VectorXcd& out) const;

 private:
  struct CostCache;
  void init();

  int n_ = 0;
  PauliSum cost_;
  std::optional<MixerSpec> mixer_;
  std::vector<MixerLayer> layers_;
  std::vector<std::size_t> offsets_;
  CostPath path_ = CostPath::Diagonal;
  std::shared_ptr<const CostCache> cache_;
};

/// Flat parameter vector: per layer [alpha_k, beta_{k,0}, ..., beta_{k,K-1}].
using ParameterVector = Eigen::VectorXd;

/// e^{-i alpha H} |psi>. Diagonal costs use per-basis phases; otherwise a
/// Lanczos exponential (dense eigendecomposition when n <= 10).
StateVector apply_cost_evolution(const StateVector& state, double alpha,
                                 const PauliSum& cost);

/// Applies e^{-i beta_j P_i} to every qubit i of group j.
StateVector apply_mixer_layer(const StateVector& state,
                              std::span<const double> betas,
                              const MixerSpec& mixer);
void apply_mixer_inplace(Eigen::VectorXcd& psi, const MixerLayer& layer,
                         std::span<const double> betas, int num_qubits);

StateVector evolve(const CircuitSpec& circuit, const ParameterVector& params,
                   const StateVector& psi0);
inline StateVector evolve(const CircuitSpec& circuit,
                          const ParameterVector& params) {
  return evolve(circuit, params, StateVector::plus(circuit.num_qubits()));
}

double expectation(const StateVector& state, const PauliSum& hamiltonian);

struct ValueAndGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// <H_C> and its exact gradient via a reverse (adjoint) sweep.
ValueAndGradient value_and_gradient(const CircuitSpec& circuit,
                                    const ParameterVector& params,
                                    const StateVector& psi0);
Eigen::VectorXd gradient(const CircuitSpec& circuit,
                         const ParameterVector& params,
                         const StateVector& psi0);

/// Two-point shift rule, valid when every gate is generated by a single Pauli
/// string: d<H>/dtheta = c [E(theta + s/2c) - E(theta - s/2c)] / sin s.
Eigen::VectorXd parameter_shift_gradient(const CircuitSpec& circuit,
                                         const ParameterVector& params,
                                         const StateVector& psi0,
                                         double shift);

struct OptimizeOptions {
  int epochs = 40;
  double lr = 0.15;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double init_range = 0.39269908169872414;  // pi / 8
};

struct OptimizeReport {
  ParameterVector final_params;
  double final_loss = 0.0;
  ParameterVector best_params;
  double best_loss = 0.0;
  std::vector<double> loss_trace;
  std::vector<double> grad_norm_trace;
};

/// Thrown when the loss turns non-finite; carries the trace so far.
class OptimizeError : public Error {
 public:
  OptimizeError(const std::string& what, OptimizeReport partial)
      : Error(ErrorKind::Numeric, what), partial_(std::move(partial)) {}
  const OptimizeReport& partial() const { return partial_; }

 private:
  OptimizeReport partial_;
};

ParameterVector random_parameters(const CircuitSpec& circuit, Rng& rng,
                                  double range);

/// Adam minimization of <H_C> from |+>^N, starting at `init`.
OptimizeReport optimize(const CircuitSpec& circuit, const ParameterVector& init,
                        const OptimizeOptions& options = {});
/// Same, with initial angles drawn U[-range, range] from `seed`.
OptimizeReport optimize(const CircuitSpec& circuit, std::uint64_t seed,
                        const OptimizeOptions& options = {});

/// Computational-basis measurement; bit q is qubit q's outcome.
std::vector<int> sample_bitstring(const StateVector& state, Rng& rng);

}  // namespace mixgen
