#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

#include "mixgen/common.hpp"

namespace mixgen {

struct WeightedGraph;
struct ProblemInstance;

enum class PauliType : unsigned char { X, Y };

char to_char(PauliType t);
PauliType pauli_type_from_char(char c);

/// Restricted growth string: g[0] == 0 and g[k] <= max(g[0..k-1]) + 1.
using Rgs = std::vector<int>;

bool is_canonical_rgs(const Rgs& rgs);
/// Relabels an arbitrary group labelling into canonical RGS order.
Rgs canonicalize(const std::vector<int>& labels);
std::string format_rgs(const Rgs& rgs);
/// Parses `0-1-2-0-3-3`. Non-canonical strings are rejected.
Rgs parse_rgs(std::string_view text);

/// Single-qubit mixer: operator type per qubit plus a parameter grouping.
struct MixerSpec {
  std::vector<PauliType> types;
  Rgs groups;

  int num_qubits() const { return static_cast<int>(types.size()); }
  int group_count() const;
  std::vector<std::vector<int>> group_members() const;
  /// Throws Input when types/groups lengths differ or the RGS is not
  /// canonical.
  void validate() const;

  bool operator==(const MixerSpec&) const = default;
};

/// `XYXYXX/0-1-2-0-3-3`
std::string format_mixer(const MixerSpec& spec);
MixerSpec parse_mixer(std::string_view text);

inline constexpr int kMaxPoolQubits = 12;

/// Every canonical RGS of length n (Bell(n) of them), lexicographic order.
std::vector<Rgs> grouping_pool(int n);

MixerSpec fg_spec(int n, PauliType type = PauliType::X);
MixerSpec ng_spec(int n, PauliType type = PauliType::X);
/// Groups are the vertex orbits of the weight-preserving automorphisms.
MixerSpec pg_spec(const WeightedGraph& graph);

/// Connected components of the 1-entries of a symmetric indicator matrix, as
/// a canonical RGS.
Rgs groups_from_edges(const Eigen::MatrixXi& indicators);

// ---------------------------------------------------------------------------
// Graph encodings consumed by the estimator and generator networks.

enum class NodeRole : unsigned char { Input, Gate, Output, Operator };

inline constexpr int kNodeFeatureWidth = 16;

struct EncodedGraph {
  /// One row per node, kNodeFeatureWidth columns.
  Eigen::MatrixXd features;
  std::vector<NodeRole> roles;
  struct Arc {
    int from = 0;
    int to = 0;
    double weight = 1.0;
  };
  std::vector<Arc> arcs;
  bool directed = true;
  /// Row indices of output nodes, in qubit order (problem encodings only).
  std::vector<int> output_nodes;

  int node_count() const { return static_cast<int>(roles.size()); }
  /// Message-passing matrix A with A(i, j) the weight of j -> i; arcs are
  /// symmetrized so information flows both ways along wires.
  Eigen::MatrixXd adjacency() const;
  bool is_acyclic() const;
};

// Feature layout shared by both encodings (columns):
//   0..3   role one-hot (input, gate, output, operator)
//   4..5   operator type one-hot (X, Y) for operator nodes
//   6..9   gate kind one-hot (ZZ, Z, X, other) for gate nodes
//   10     gate coefficient
//   11     gate arity (qubits touched)
//   12..15 reserved (zero)
namespace feature {
inline constexpr int kRole = 0;
inline constexpr int kType = 4;
inline constexpr int kGateKind = 6;
inline constexpr int kCoeff = 10;
inline constexpr int kArity = 11;
}  // namespace feature

/// DAG of the cost unitary: qubit input nodes, one gate node per cost term,
/// qubit output nodes. Arcs follow each qubit wire; mutually commuting gates
/// form one layer and connect in parallel.
EncodedGraph encode_problem(const ProblemInstance& instance);

/// Complete graph on operator nodes; arc weight 1 iff both endpoints share a
/// parameter group.
EncodedGraph encode_mixer(const MixerSpec& spec);

/// Sinusoidal depth embedding; d_p must be even.
Eigen::VectorXd depth_embedding(double p, int dim);

}  // namespace mixgen
