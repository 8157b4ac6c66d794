#include "mixgen/problems.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "mixgen/linalg.hpp"

namespace mixgen {

const char* to_string(ProblemKind kind) {
  return kind == ProblemKind::MaxCut ? "maxcut" : "tfim";
}

ProblemKind problem_kind_from_string(std::string_view s) {
  if (s == "maxcut" || s == "MaxCut") return ProblemKind::MaxCut;
  if (s == "tfim" || s == "TFIM") return ProblemKind::TFIM;
  throw Error(ErrorKind::Usage, "unknown task '" + std::string(s) + "' (maxcut|tfim)");
}

void ProblemInstance::validate() const {
  graph.validate();
  if (kind == ProblemKind::TFIM) {
    const int n = graph.n;
    const std::size_t expected = n == 2 ? 1 : static_cast<std::size_t>(n);
    bool ring = graph.edges.size() == expected;
    for (const Edge& e : graph.edges) {
      const int d = std::abs(e.u - e.v);
      ring = ring && (d == 1 || d == n - 1);
    }
    if (!ring) throw Error(ErrorKind::Input, "TFIM instances must be rings");
    if (!std::isfinite(h)) throw Error(ErrorKind::Input, "non-finite field strength");
  }
}

ProblemInstance make_tfim_ring(const std::vector<double>& couplings, double h) {
  // n = 2 accepts one or two couplings; two parallel ring edges merge.
  const int n = couplings.size() == 1 ? 2 : static_cast<int>(couplings.size());
  if (n < 2) throw Error(ErrorKind::Input, "TFIM ring needs at least 2 sites");
  ProblemInstance inst;
  inst.kind = ProblemKind::TFIM;
  inst.h = h;
  inst.graph.n = n;
  if (n == 2) {
    double j = 0.0;
    for (double c : couplings) j += c;
    inst.graph.edges.push_back({0, 1, j});
  } else {
    for (int i = 0; i < n; ++i)
      inst.graph.edges.push_back({i, (i + 1) % n, couplings[static_cast<std::size_t>(i)]});
  }
  inst.validate();
  return inst;
}

PauliSum maxcut_hamiltonian(const WeightedGraph& graph) {
  graph.validate();
  PauliSum h(graph.n);
  for (const Edge& e : graph.edges) h.add(PauliTerm::zz(graph.n, e.u, e.v, 0.5 * e.w));
  return h;
}

PauliSum tfim_hamiltonian(const ProblemInstance& instance) {
  instance.validate();
  const int n = instance.num_qubits();
  PauliSum h(n);
  for (const Edge& e : instance.graph.edges) h.add(PauliTerm::zz(n, e.u, e.v, -e.w));
  for (int q = 0; q < n; ++q) h.add(PauliTerm::single(n, q, 'X', -instance.h));
  return h;
}

PauliSum cost_hamiltonian(const ProblemInstance& instance) {
  return instance.kind == ProblemKind::MaxCut ? maxcut_hamiltonian(instance.graph)
                                              : tfim_hamiltonian(instance);
}

double cut_value(const WeightedGraph& graph, std::uint64_t assignment) {
  double cut = 0.0;
  for (const Edge& e : graph.edges)
    if (((assignment >> e.u) ^ (assignment >> e.v)) & 1u) cut += e.w;
  return cut;
}

MaxCutOptimum brute_force_maxcut(const WeightedGraph& graph) {
  graph.validate();
  if (graph.n > kMaxBruteForceVertices)
    throw CapacityError("brute-force Max-Cut supports at most " +
                            std::to_string(kMaxBruteForceVertices) + " vertices",
                        0);
  MaxCutOptimum out;
  out.value = -std::numeric_limits<double>::infinity();
  // Vertex 0 stays on side 0, so each partition is scanned once.
  const std::uint64_t count = 1ULL << (graph.n - 1);
  std::vector<double> values(count);
  for (std::uint64_t a = 0; a < count; ++a) {
    values[a] = cut_value(graph, a << 1);
    out.value = std::max(out.value, values[a]);
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(out.value));
  for (std::uint64_t a = 0; a < count; ++a)
    if (values[a] >= out.value - tol) out.argmax.push_back(static_cast<std::uint32_t>(a << 1));
  return out;
}

double ground_energy_dense(const PauliSum& hamiltonian) {
  if (hamiltonian.num_qubits() > kMaxDenseQubits)
    throw CapacityError("dense diagonalization supports at most " +
                            std::to_string(kMaxDenseQubits) + " qubits",
                        0);
  if (!hamiltonian.is_hermitian())
    throw Error(ErrorKind::Input, "ground_energy needs a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian.to_dense(),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double ground_energy_lanczos(const PauliSum& hamiltonian) {
  if (hamiltonian.num_qubits() > kMaxLanczosQubits)
    throw CapacityError("Lanczos ground state supports at most " +
                            std::to_string(kMaxLanczosQubits) + " qubits",
                        0);
  if (!hamiltonian.is_hermitian())
    throw Error(ErrorKind::Input, "ground_energy needs a Hermitian operator");
  const Eigen::SparseMatrix<cplx> sparse = hamiltonian.to_sparse();
  const auto gs = linalg::lanczos_ground_state(
      [&sparse](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
        out.noalias() = sparse * in;
      },
      sparse.rows(), 1e-11);
  return gs.energy;
}

double ground_energy(const PauliSum& hamiltonian) {
  if (hamiltonian.is_diagonal()) {
    if (hamiltonian.num_qubits() > kMaxBruteForceVertices)
      throw CapacityError("diagonal scan too large", 0);
    if (hamiltonian.empty()) return 0.0;
    return hamiltonian.diagonal().minCoeff();
  }
  return ground_energy_lanczos(hamiltonian);
}

double optimal_value(const ProblemInstance& instance) {
  if (instance.kind == ProblemKind::MaxCut) return brute_force_maxcut(instance.graph).value;
  return ground_energy(tfim_hamiltonian(instance));
}

double approximation_ratio(const ProblemInstance& instance, double achieved,
                           double optimum) {
  double r = 0.0;
  if (instance.kind == ProblemKind::MaxCut) {
    if (optimum <= 0.0) throw Error(ErrorKind::Input, "Max-Cut optimum must be positive");
    r = (0.5 * instance.graph.total_weight() - achieved) / optimum;
  } else {
    if (optimum >= 0.0) throw Error(ErrorKind::Input, "TFIM ground energy must be negative");
    r = achieved / optimum;
  }
  if (r > 1.0 + 1e-6)
    throw Error(ErrorKind::Consistency,
                "approximation ratio " + std::to_string(r) + " exceeds 1");
  return r;
}

double approximation_ratio(const ProblemInstance& instance, double achieved) {
  return approximation_ratio(instance, achieved, optimal_value(instance));
}

namespace {

Solution finish(const WeightedGraph& graph, std::vector<int> sides) {
  Solution s;
  std::uint64_t a = 0;
  for (int v = 0; v < graph.n; ++v)
    if (sides[v]) a |= 1ULL << v;
  s.value = cut_value(graph, a);
  s.sides = std::move(sides);
  if (graph.n <= kMaxBruteForceVertices) {
    const double best = brute_force_maxcut(graph).value;
    s.ratio = best > 0.0 ? s.value / best : 1.0;
  } else {
    s.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace

Solution greedy_maxcut(const WeightedGraph& graph) {
  graph.validate();
  std::vector<std::vector<std::pair<int, double>>> adj(graph.n);
  for (const Edge& e : graph.edges) {
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }
  std::vector<int> sides(graph.n, 0);  // everything starts outside S
  for (int v = 0; v < graph.n; ++v) {
    double delta = 0.0;
    for (const auto& [u, w] : adj[v]) delta += sides[u] != sides[v] ? -w : w;
    if (delta > 0.0) sides[v] ^= 1;
  }
  return finish(graph, std::move(sides));
}

Solution gw_maxcut(const WeightedGraph& graph, Rng& rng, const GwOptions& options) {
  graph.validate();
  if (options.rounds < 1) throw Error(ErrorKind::Input, "rounds must be >= 1");
  const int n = graph.n;
  const int rank = std::max(1, static_cast<int>(std::ceil(std::sqrt(2.0 * n))));
  Eigen::MatrixXd v(n, rank);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < rank; ++k) v(i, k) = standard_normal(rng);
    v.row(i).normalize();
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : graph.edges) w(e.u, e.v) = w(e.v, e.u) = e.w;
  const double max_degree = std::max(1e-12, w.cwiseAbs().rowwise().sum().maxCoeff());
  const double eta = options.step / max_degree * 3.0;

  // Minimize sum_ij w_ij <v_i, v_j> over unit rows.
  auto objective = [&](const Eigen::MatrixXd& x) {
    return 0.5 * (x * x.transpose()).cwiseProduct(w).sum();
  };
  double f = objective(v);
  bool converged = false;
  for (int it = 0; it < options.max_iters; ++it) {
    const Eigen::MatrixXd g = w * v;
    v -= eta * g;
    for (int i = 0; i < n; ++i) {
      const double norm = v.row(i).norm();
      if (norm > 0.0) v.row(i) /= norm;
    }
    const double f_new = objective(v);
    if (std::abs(f - f_new) < options.tol * std::max(1.0, std::abs(f))) {
      f = f_new;
      converged = true;
      break;
    }
    f = f_new;
  }

  std::vector<int> best_sides(n, 0);
  double best_cut = -1.0;
  for (int r = 0; r < options.rounds; ++r) {
    Eigen::VectorXd dir(rank);
    for (int k = 0; k < rank; ++k) dir(k) = standard_normal(rng);
    std::vector<int> sides(n);
    std::uint64_t a = 0;
    for (int i = 0; i < n; ++i) {
      sides[i] = v.row(i).dot(dir) >= 0.0 ? 1 : 0;
      if (sides[i]) a |= 1ULL << i;
    }
    const double cut = cut_value(graph, a);
    if (cut > best_cut) {
      best_cut = cut;
      best_sides = std::move(sides);
    }
  }
  Solution s = finish(graph, std::move(best_sides));
  s.warning = !converged;
  return s;
}

MixerSpec ma_qaoa_spec(int n) { return ng_spec(n, PauliType::X); }

std::vector<PauliSum> adapt_default_pool(int n) {
  std::vector<PauliSum> pool;
  pool.push_back(transverse_x(n));
  for (int q = 0; q < n; ++q) pool.emplace_back(PauliTerm::single(n, q, 'X'));
  for (int q = 0; q < n; ++q) pool.emplace_back(PauliTerm::single(n, q, 'Y'));
  return pool;
}

double adapt_score(const PauliSum& cost, const PauliSum& op, const StateVector& psi,
                   double alpha) {
  const StateVector phi = apply_cost_evolution(psi, alpha, cost);
  const Eigen::VectorXcd h_phi = cost.apply(phi.amplitudes());
  const Eigen::VectorXcd a_phi = op.apply(phi.amplitudes());
  return 2.0 * std::abs(h_phi.dot(a_phi).imag());
}

namespace {

MixerLayer layer_from_operator(const PauliSum& op) {
  MixerLayer layer;
  layer.group_count = 1;
  for (const PauliTerm& t : op.term_list()) {
    if (t.key().weight() != 1 || std::abs(t.coeff() - cplx(1.0)) > 1e-12)
      throw Error(ErrorKind::Unsupported,
                  "ADAPT pool entries must be unit-coefficient single-qubit X/Y sums");
    for (int q = 0; q < t.num_qubits(); ++q) {
      const char c = t.letter(q);
      if (c == 'I') continue;
      if (c == 'Z')
        throw Error(ErrorKind::Unsupported, "ADAPT pool entries must use X or Y");
      layer.gates.push_back({q, pauli_type_from_char(c), 0});
    }
  }
  return layer;
}

}  // namespace

AdaptResult adapt_qaoa(const ProblemInstance& instance, const std::vector<PauliSum>& pool,
                       const AdaptOptions& options) {
  if (pool.empty()) throw Error(ErrorKind::Input, "ADAPT-QAOA needs a non-empty pool");
  for (const auto& op : pool)
    if (!op.is_hermitian()) throw Error(ErrorKind::Input, "pool operators must be Hermitian");
  std::vector<MixerLayer> pool_layers;
  for (const auto& op : pool) pool_layers.push_back(layer_from_operator(op));

  const PauliSum cost = cost_hamiltonian(instance);
  const int n = instance.num_qubits();
  std::vector<MixerLayer> layers;
  std::vector<int> selected;
  ParameterVector params;
  std::optional<OptimizeReport> report;
  std::optional<CircuitSpec> circuit;
  StateVector psi = StateVector::plus(n);

  for (int depth = 1; depth <= options.max_depth; ++depth) {
    int best = 0;
    double best_score = -1.0;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const double s = adapt_score(cost, pool[j], psi, options.alpha_init);
      if (s > best_score + 1e-14) {
        best_score = s;
        best = static_cast<int>(j);
      }
    }
    if (best_score < options.grad_threshold && !layers.empty()) break;
    layers.push_back(pool_layers[static_cast<std::size_t>(best)]);
    selected.push_back(best);

    ParameterVector next(params.size() + 2);
    next.head(params.size()) = params;
    next[params.size()] = options.alpha_init;
    next[params.size() + 1] = 0.0;
    circuit.emplace(cost, layers, n);
    OptimizeOptions opt = options.optimizer;
    report = optimize(*circuit, next, opt);
    params = report->best_params;
    psi = evolve(*circuit, params, StateVector::plus(n));
  }
  return {*circuit, *report, selected};
}

}  // namespace mixgen
