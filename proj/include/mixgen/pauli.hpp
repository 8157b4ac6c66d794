#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mixgen/common.hpp"

namespace mixgen {

struct WeightedGraph;

/// Symplectic encoding of a Pauli string: bit q of `x`/`z` set means an X/Z
/// factor on qubit q (both set is Y). Qubit 0 is the leftmost letter and the
/// most significant bit of a computational-basis index.
struct PauliKey {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  auto operator<=>(const PauliKey&) const = default;
  bool is_identity() const { return x == 0 && z == 0; }
  bool is_diagonal() const { return x == 0; }
  int weight() const;
};

inline constexpr int kMaxQubits = 63;

class PauliTerm {
 public:
  PauliTerm() = default;
  PauliTerm(int num_qubits, PauliKey key, cplx coeff = 1.0);

  /// Parses letters over {I,X,Y,Z}; length sets the qubit count.
  static PauliTerm from_letters(std::string_view letters, cplx coeff = 1.0);
  /// Single-qubit letter on qubit q of an n-qubit register.
  static PauliTerm single(int num_qubits, int qubit, char letter,
                          cplx coeff = 1.0);
  static PauliTerm zz(int num_qubits, int a, int b, cplx coeff = 1.0);

  int num_qubits() const { return n_; }
  const PauliKey& key() const { return key_; }
  cplx coeff() const { return coeff_; }
  void set_coeff(cplx c) { coeff_ = c; }
  char letter(int qubit) const;
  std::string letters() const;

 private:
  int n_ = 0;
  PauliKey key_;
  cplx coeff_ = 1.0;
};

/// Product of two Pauli strings: a single string times a phase in {±1, ±i}.
PauliTerm operator*(const PauliTerm& a, const PauliTerm& b);

/// [a, b] = ab - ba. Returns nullopt when the strings commute.
std::optional<PauliTerm> commutator(const PauliTerm& a, const PauliTerm& b);

/// Linear combination of Pauli strings with distinct letters; terms whose
/// coefficient magnitude falls below `kDropTolerance` are erased.
class PauliSum {
 public:
  static constexpr double kDropTolerance = 1e-14;
  using Map = std::map<PauliKey, cplx>;

  PauliSum() = default;
  explicit PauliSum(int num_qubits) : n_(num_qubits) {}
  PauliSum(const PauliTerm& term);  // NOLINT(implicit)

  int num_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }
  std::vector<PauliTerm> term_list() const;

  void add(const PauliTerm& term);
  void add(const PauliKey& key, cplx coeff);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(cplx s);

  bool is_hermitian(double tol = 1e-12) const;
  bool is_diagonal() const;
  /// Max coefficient magnitude; zero for the empty sum.
  double max_abs_coeff() const;

  /// y = H x on a dense state (length 2^n).
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const;
  /// Diagonal of an I/Z-only sum as real energies per basis index.
  Eigen::VectorXd diagonal() const;
  Eigen::SparseMatrix<cplx> to_sparse() const;
  Eigen::MatrixXcd to_dense() const;

 private:
  int n_ = 0;
  Map terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator*(cplx s, PauliSum a);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Text form: one `<coeff_re> <coeff_im> <letters>` per line; `#` comments
/// and blank lines are skipped.
PauliSum parse_pauli_sum(std::string_view text);
std::string format_pauli_sum(const PauliSum& sum);

// ---------------------------------------------------------------------------
// Ansatz designs and Lie closure

enum class DesignLabel { FG, PG, NG, Custom };
const char* to_string(DesignLabel label);

struct AnsatzDesign {
  std::vector<PauliSum> generators;
  DesignLabel label = DesignLabel::Custom;

  int num_qubits() const;
};

/// Real basis (Hermitian representatives H, algebra element iH) of the Lie
/// algebra generated by `generators`. Throws CapacityError past `max_dim`.
std::vector<PauliSum> lie_closure(const std::vector<PauliSum>& generators,
                                  std::size_t max_dim);

std::size_t dla_dimension(const AnsatzDesign& design, std::size_t max_dim);

/// Dimension of the smallest subspace containing `psi0` and invariant under
/// every generator of `design`.
std::size_t effective_dimension(const AnsatzDesign& design,
                                const Eigen::VectorXcd& psi0,
                                double tol = 1e-10);

/// Orthonormal basis of that subspace (columns); exposed for diagnostics such
/// as checking whether a ground state lies inside it.
Eigen::MatrixXcd invariant_subspace(const AnsatzDesign& design,
                                    const Eigen::VectorXcd& psi0,
                                    double tol = 1e-10);

// ---------------------------------------------------------------------------
// Permutation symmetry

struct OrbitPartition {
  std::vector<std::vector<int>> vertex_orbits;
  /// Edge orbits as indices into the graph's edge list.
  std::vector<std::vector<int>> edge_orbits;

  bool all_singleton() const;
};

inline constexpr int kMaxAutomorphismVertices = 10;

/// Orbits of the weight-preserving automorphism group, by exhaustive
/// backtracking over vertex permutations.
OrbitPartition automorphism_orbits(const WeightedGraph& graph,
                                   double weight_tol = 1e-12);

/// Sum of X over all qubits.
PauliSum transverse_x(int num_qubits);

AnsatzDesign fg_design(const PauliSum& cost);
AnsatzDesign ng_design(const PauliSum& cost);
/// Orbit-summed generators of a Max-Cut cost: one X sum per vertex orbit,
/// one weighted ZZ sum per edge orbit.
AnsatzDesign pg_design(const WeightedGraph& graph);

}  // namespace mixgen
