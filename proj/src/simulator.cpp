#include "mixgen/simulator.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include <cmath>

#include "mixgen/linalg.hpp"

namespace mixgen {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kDenseCostQubits = 10;

void require_hermitian(const PauliSum& h, const char* what) {
  if (!h.is_hermitian())
    throw Error(ErrorKind::Input, std::string(what) + " must be Hermitian");
}

std::uint64_t stride_of(int qubit, int n) { return 1ULL << (n - 1 - qubit); }

// Hot loops below use explicit real arithmetic: std::complex products go
// through a NaN-recovery path that is several times slower.

// One complex amplitude as a (re, im) lane pair.
typedef double Lane2 __attribute__((vector_size(16)));

template <bool IsX>
void rotate_pairs(Lane2* __restrict a, std::uint64_t dim, std::uint64_t stride, double c,
                  double s) {
  const Lane2 cv = {c, c};
  // X: -is * (re + i im) = s im - i s re, i.e. swap lanes and scale by (s, -s).
  const Lane2 sx = {s, -s};
  const Lane2 sv = {s, s};
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    Lane2* __restrict p0 = a + base;
    Lane2* __restrict p1 = p0 + stride;
    for (std::uint64_t i = 0; i < stride; ++i) {
      const Lane2 v0 = p0[i], v1 = p1[i];
      if constexpr (IsX) {
        const Lane2 w0 = {v0[1], v0[0]}, w1 = {v1[1], v1[0]};
        p0[i] = cv * v0 + sx * w1;
        p1[i] = cv * v1 + sx * w0;
      } else {
        p0[i] = cv * v0 - sv * v1;
        p1[i] = sv * v0 + cv * v1;
      }
    }
  }
}

void rotate_qubit(Eigen::VectorXcd& psi, int qubit, PauliType type, double beta,
                  int n) {
  const std::uint64_t stride = stride_of(qubit, n);
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  Lane2* a = reinterpret_cast<Lane2*>(psi.data());
  if (type == PauliType::X)
    rotate_pairs<true>(a, dim, stride, std::cos(beta), std::sin(beta));
  else
    rotate_pairs<false>(a, dim, stride, std::cos(beta), std::sin(beta));
}

// <lhs| P_q |rhs>
cplx pauli_matrix_element(const Eigen::VectorXcd& lhs, const Eigen::VectorXcd& rhs,
                          int qubit, PauliType type, int n) {
  const std::uint64_t stride = stride_of(qubit, n);
  const std::uint64_t dim = static_cast<std::uint64_t>(rhs.size());
  const double* l = reinterpret_cast<const double*>(lhs.data());
  const double* r = reinterpret_cast<const double*>(rhs.data());
  double re = 0.0, im = 0.0;
  for (std::uint64_t base = 0; base < dim; base += 2 * stride)
    for (std::uint64_t i = base; i < base + stride; ++i) {
      const std::uint64_t j = i + stride;
      // conj(l_i) r_j and conj(l_j) r_i
      const double ar = l[2 * i] * r[2 * j] + l[2 * i + 1] * r[2 * j + 1];
      const double ai = l[2 * i] * r[2 * j + 1] - l[2 * i + 1] * r[2 * j];
      const double br = l[2 * j] * r[2 * i] + l[2 * j + 1] * r[2 * i + 1];
      const double bi = l[2 * j] * r[2 * i + 1] - l[2 * j + 1] * r[2 * i];
      if (type == PauliType::X) {
        re += ar + br;
        im += ai + bi;
      } else {
        // Y = [[0, -i], [i, 0]]: -i a + i b
        re += ai - bi;
        im += br - ar;
      }
    }
  return {re, im};
}

/// psi_k *= exp(-i t d_k)
void apply_diagonal_phase(Eigen::VectorXcd& psi, const Eigen::VectorXd& d, double t) {
  double* a = reinterpret_cast<double*>(psi.data());
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    const double c = std::cos(t * d[k]), s = std::sin(t * d[k]);
    const double re = a[2 * k], im = a[2 * k + 1];
    a[2 * k] = c * re + s * im;
    a[2 * k + 1] = c * im - s * re;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

StateVector::StateVector(int num_qubits, Eigen::VectorXcd amplitudes)
    : n_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits < 1 || num_qubits > kMaxSimQubits)
    throw Error(ErrorKind::Capacity, "statevector qubit count out of range");
  if (amps_.size() != (Eigen::Index(1) << num_qubits))
    throw Error(ErrorKind::Dimension, "amplitude count does not match 2^n");
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(Eigen::Index(1) << num_qubits);
  if (index >= static_cast<std::size_t>(a.size()))
    throw Error(ErrorKind::Input, "basis index out of range");
  a[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(num_qubits, std::move(a));
}

StateVector StateVector::plus(int num_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  return StateVector(num_qubits,
                     Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim))));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(amps_.squaredNorm() - 1.0) <= tol;
}

MixerLayer MixerLayer::from_spec(const MixerSpec& spec) {
  spec.validate();
  MixerLayer layer;
  layer.group_count = spec.group_count();
  for (int q = 0; q < spec.num_qubits(); ++q)
    layer.gates.push_back({q, spec.types[q], spec.groups[q]});
  return layer;
}

// ---------------------------------------------------------------------------

struct CircuitSpec::CostCache {
  Eigen::VectorXd diag;
  Eigen::MatrixXcd eigvecs;
  Eigen::VectorXd eigvals;
  Eigen::SparseMatrix<cplx> sparse;
};

CircuitSpec::CircuitSpec(PauliSum cost, MixerSpec mixer, int depth)
    : n_(mixer.num_qubits()), cost_(std::move(cost)), mixer_(std::move(mixer)) {
  if (depth < 1) throw Error(ErrorKind::Input, "circuit depth must be >= 1");
  const MixerLayer layer = MixerLayer::from_spec(*mixer_);
  layers_.assign(static_cast<std::size_t>(depth), layer);
  init();
}

CircuitSpec::CircuitSpec(PauliSum cost, std::vector<MixerLayer> layers,
                         int num_qubits)
    : n_(num_qubits), cost_(std::move(cost)), layers_(std::move(layers)) {
  if (layers_.empty()) throw Error(ErrorKind::Input, "circuit depth must be >= 1");
  for (const MixerLayer& l : layers_)
    for (const MixerGate& g : l.gates)
      if (g.qubit < 0 || g.qubit >= n_ || g.group < 0 || g.group >= l.group_count)
        throw Error(ErrorKind::Input, "mixer gate out of range");
  init();
}

void CircuitSpec::init() {
  if (n_ < 1 || n_ > kMaxSimQubits)
    throw Error(ErrorKind::Capacity, "circuit qubit count out of range");
  if (cost_.num_qubits() == 0) cost_ = PauliSum(n_);
  if (cost_.num_qubits() != n_)
    throw Error(ErrorKind::Dimension, "cost and mixer act on different qubit counts");
  require_hermitian(cost_, "cost Hamiltonian");
  offsets_.clear();
  std::size_t off = 0;
  for (const MixerLayer& l : layers_) {
    offsets_.push_back(off);
    off += 1 + static_cast<std::size_t>(l.group_count);
  }
  offsets_.push_back(off);

  auto cache = std::make_shared<CostCache>();
  if (cost_.is_diagonal()) {
    path_ = CostPath::Diagonal;
    cache->diag = cost_.diagonal();
  } else {
    cache->sparse = cost_.to_sparse();
    if (n_ <= kDenseCostQubits) {
      path_ = CostPath::DenseEigen;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cost_.to_dense());
      if (es.info() != Eigen::Success)
        throw Error(ErrorKind::Numeric, "cost eigendecomposition failed");
      cache->eigvecs = es.eigenvectors();
      cache->eigvals = es.eigenvalues();
    } else {
      path_ = CostPath::Krylov;
    }
  }
  cache_ = std::move(cache);
}

CircuitSpec CircuitSpec::with_cost_path(CostPath path) const {
  CircuitSpec out = *this;
  if (path == path_) return out;
  if (path == CostPath::Diagonal && !cost_.is_diagonal())
    throw Error(ErrorKind::Input, "diagonal path needs an I/Z-only cost");
  auto cache = std::make_shared<CostCache>(*cache_);
  if (path == CostPath::DenseEigen && cache->eigvecs.size() == 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cost_.to_dense());
    cache->eigvecs = es.eigenvectors();
    cache->eigvals = es.eigenvalues();
  }
  if (cache->sparse.size() == 0) cache->sparse = cost_.to_sparse();
  out.cache_ = std::move(cache);
  out.path_ = path;
  return out;
}

std::size_t CircuitSpec::parameter_count() const { return offsets_.back(); }

void CircuitSpec::apply_cost(Eigen::VectorXcd& psi, double alpha) const {
  if (alpha == 0.0) return;
  switch (path_) {
    case CostPath::Diagonal: {
      apply_diagonal_phase(psi, cache_->diag, alpha);
      return;
    }
    case CostPath::DenseEigen: {
      Eigen::VectorXcd coeffs = cache_->eigvecs.adjoint() * psi;
      for (Eigen::Index i = 0; i < coeffs.size(); ++i)
        coeffs[i] *= std::polar(1.0, -alpha * cache_->eigvals[i]);
      psi.noalias() = cache_->eigvecs * coeffs;
      return;
    }
    case CostPath::Krylov: {
      const auto& sparse = cache_->sparse;
      linalg::LinearOperator op = [&sparse](const Eigen::VectorXcd& in,
                                            Eigen::VectorXcd& out) {
        out.noalias() = sparse * in;
      };
      psi = linalg::expmv_lanczos(op, alpha, psi);
      return;
    }
  }
}

void CircuitSpec::apply_cost(Eigen::VectorXcd& a, Eigen::VectorXcd& b, double alpha) const {
  if (alpha == 0.0) return;
  switch (path_) {
    case CostPath::Diagonal: {
      const Eigen::VectorXd& d = cache_->diag;
      double* x = reinterpret_cast<double*>(a.data());
      double* y = reinterpret_cast<double*>(b.data());
      for (Eigen::Index k = 0; k < d.size(); ++k) {
        const double c = std::cos(alpha * d[k]), s = std::sin(alpha * d[k]);
        const double xr = x[2 * k], xi = x[2 * k + 1], yr = y[2 * k], yi = y[2 * k + 1];
        x[2 * k] = c * xr + s * xi;
        x[2 * k + 1] = c * xi - s * xr;
        y[2 * k] = c * yr + s * yi;
        y[2 * k + 1] = c * yi - s * yr;
      }
      return;
    }
    case CostPath::DenseEigen: {
      Eigen::MatrixXcd both(a.size(), 2);
      both << a, b;
      Eigen::MatrixXcd coeffs = cache_->eigvecs.adjoint() * both;
      for (Eigen::Index i = 0; i < coeffs.rows(); ++i)
        coeffs.row(i) *= std::polar(1.0, -alpha * cache_->eigvals[i]);
      both.noalias() = cache_->eigvecs * coeffs;
      a = both.col(0);
      b = both.col(1);
      return;
    }
    case CostPath::Krylov:
      apply_cost(a, alpha);
      apply_cost(b, alpha);
      return;
  }
}

void CircuitSpec::apply_cost_hamiltonian(const Eigen::VectorXcd& in,
                                         Eigen::VectorXcd& out) const {
  if (path_ == CostPath::Diagonal)
    out = cache_->diag.cast<cplx>().cwiseProduct(in);
  else
    out.noalias() = cache_->sparse * in;
}

// ---------------------------------------------------------------------------

StateVector apply_cost_evolution(const StateVector& state, double alpha,
                                 const PauliSum& cost) {
  require_hermitian(cost, "cost Hamiltonian");
  if (cost.num_qubits() != state.num_qubits())
    throw Error(ErrorKind::Dimension, "cost and state act on different qubit counts");
  Eigen::VectorXcd psi = state.amplitudes();
  if (cost.is_diagonal()) {
    apply_diagonal_phase(psi, cost.diagonal(), alpha);
  } else if (state.num_qubits() <= kDenseCostQubits) {
    psi = linalg::expm_hermitian(cost.to_dense(), alpha) * psi;
  } else {
    const Eigen::SparseMatrix<cplx> sparse = cost.to_sparse();
    psi = linalg::expmv_lanczos(
        [&sparse](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
          out.noalias() = sparse * in;
        },
        alpha, psi);
  }
  return StateVector(state.num_qubits(), std::move(psi));
}

void apply_mixer_inplace(Eigen::VectorXcd& psi, const MixerLayer& layer,
                         std::span<const double> betas, int num_qubits) {
  if (static_cast<int>(betas.size()) != layer.group_count)
    throw Error(ErrorKind::Input, "mixer angle count does not match group count");
  for (const MixerGate& g : layer.gates) {
    const double beta = betas[static_cast<std::size_t>(g.group)];
    if (beta != 0.0) rotate_qubit(psi, g.qubit, g.type, beta, num_qubits);
  }
}

StateVector apply_mixer_layer(const StateVector& state, std::span<const double> betas,
                              const MixerSpec& mixer) {
  if (mixer.num_qubits() != state.num_qubits())
    throw Error(ErrorKind::Input, "mixer and state act on different qubit counts");
  Eigen::VectorXcd psi = state.amplitudes();
  apply_mixer_inplace(psi, MixerLayer::from_spec(mixer), betas, state.num_qubits());
  return StateVector(state.num_qubits(), std::move(psi));
}

namespace {

void check_params(const CircuitSpec& circuit, const ParameterVector& params,
                  const StateVector& psi0) {
  if (static_cast<std::size_t>(params.size()) != circuit.parameter_count())
    throw Error(ErrorKind::Input, "parameter vector has length " +
                                      std::to_string(params.size()) + ", expected " +
                                      std::to_string(circuit.parameter_count()));
  if (psi0.num_qubits() != circuit.num_qubits())
    throw Error(ErrorKind::Dimension, "initial state qubit count mismatch");
  if (!psi0.is_normalized())
    throw Error(ErrorKind::Input, "initial state is not normalized");
}

std::span<const double> layer_betas(const CircuitSpec& c, const ParameterVector& p,
                                    int k) {
  return {p.data() + c.layer_offset(k) + 1,
          static_cast<std::size_t>(c.layer(k).group_count)};
}

Eigen::VectorXcd run(const CircuitSpec& circuit, const ParameterVector& params,
                     const Eigen::VectorXcd& psi0) {
  Eigen::VectorXcd psi = psi0;
  const int n = circuit.num_qubits();
  for (int k = 0; k < circuit.depth(); ++k) {
    circuit.apply_cost(psi, params[static_cast<Eigen::Index>(circuit.layer_offset(k))]);
    apply_mixer_inplace(psi, circuit.layer(k), layer_betas(circuit, params, k), n);
  }
  return psi;
}

double energy(const CircuitSpec& circuit, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd h;
  circuit.apply_cost_hamiltonian(psi, h);
  return psi.dot(h).real();
}

}  // namespace

StateVector evolve(const CircuitSpec& circuit, const ParameterVector& params,
                   const StateVector& psi0) {
  check_params(circuit, params, psi0);
  return StateVector(circuit.num_qubits(), run(circuit, params, psi0.amplitudes()));
}

double expectation(const StateVector& state, const PauliSum& hamiltonian) {
  require_hermitian(hamiltonian, "observable");
  if (hamiltonian.num_qubits() != state.num_qubits())
    throw Error(ErrorKind::Dimension, "observable and state act on different qubit counts");
  const Eigen::VectorXcd& psi = state.amplitudes();
  if (hamiltonian.is_diagonal()) {
    const Eigen::VectorXd d = hamiltonian.diagonal();
    return (psi.cwiseAbs2().array() * d.array()).sum();
  }
  return psi.dot(hamiltonian.apply(psi)).real();
}

ValueAndGradient value_and_gradient(const CircuitSpec& circuit,
                                    const ParameterVector& params,
                                    const StateVector& psi0) {
  check_params(circuit, params, psi0);
  const int n = circuit.num_qubits();
  Eigen::VectorXcd phi = run(circuit, params, psi0.amplitudes());
  Eigen::VectorXcd lambda;
  circuit.apply_cost_hamiltonian(phi, lambda);

  ValueAndGradient out;
  out.value = phi.dot(lambda).real();
  out.gradient = Eigen::VectorXd::Zero(params.size());
  Eigen::VectorXcd scratch;
  std::vector<double> neg;
  for (int k = circuit.depth() - 1; k >= 0; --k) {
    const MixerLayer& layer = circuit.layer(k);
    const std::size_t off = circuit.layer_offset(k);
    for (const MixerGate& g : layer.gates) {
      const cplx m = pauli_matrix_element(lambda, phi, g.qubit, g.type, n);
      out.gradient[static_cast<Eigen::Index>(off + 1 + g.group)] += 2.0 * m.imag();
    }
    const auto betas = layer_betas(circuit, params, k);
    neg.assign(betas.begin(), betas.end());
    for (double& b : neg) b = -b;
    apply_mixer_inplace(phi, layer, neg, n);
    apply_mixer_inplace(lambda, layer, neg, n);

    circuit.apply_cost_hamiltonian(phi, scratch);
    out.gradient[static_cast<Eigen::Index>(off)] += 2.0 * lambda.dot(scratch).imag();
    const double alpha = params[static_cast<Eigen::Index>(off)];
    circuit.apply_cost(phi, lambda, -alpha);
  }
  return out;
}

Eigen::VectorXd gradient(const CircuitSpec& circuit, const ParameterVector& params,
                         const StateVector& psi0) {
  return value_and_gradient(circuit, params, psi0).gradient;
}

Eigen::VectorXd parameter_shift_gradient(const CircuitSpec& circuit,
                                         const ParameterVector& params,
                                         const StateVector& psi0, double shift) {
  check_params(circuit, params, psi0);
  const double s_mod = std::remainder(shift, M_PI);
  if (std::abs(s_mod) < 1e-12)
    throw Error(ErrorKind::Input, "parameter shift must not be a multiple of pi");
  const PauliSum& cost = circuit.cost();
  if (!cost.is_diagonal() && cost.size() > 1)
    throw Error(ErrorKind::Unsupported,
                "parameter shift needs single-Pauli gates; the cost layer has "
                "non-commuting terms, use gradient() instead");
  const int n = circuit.num_qubits();
  const std::vector<PauliTerm> terms = cost.term_list();

  // Energy with one extra rotation inserted in layer k. Every gate of a layer
  // commutes with the others, so the extra factor can sit at the layer end.
  auto shifted = [&](int k, bool is_cost, int index, double delta) {
    Eigen::VectorXcd psi = psi0.amplitudes();
    for (int l = 0; l < circuit.depth(); ++l) {
      circuit.apply_cost(psi, params[static_cast<Eigen::Index>(circuit.layer_offset(l))]);
      if (l == k && is_cost) {
        PauliSum single(terms[static_cast<std::size_t>(index)]);
        CircuitSpec tmp(single, std::vector<MixerLayer>{MixerLayer{}}, n);
        tmp.apply_cost(psi, delta);
      }
      apply_mixer_inplace(psi, circuit.layer(l), layer_betas(circuit, params, l), n);
      if (l == k && !is_cost) {
        const MixerGate& g = circuit.layer(k).gates[static_cast<std::size_t>(index)];
        rotate_qubit(psi, g.qubit, g.type, delta, n);
      }
    }
    return energy(circuit, psi);
  };

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(params.size());
  // Gates are e^{-i phi P}; shifting phi by s/2 gives dE/dphi = [E+ - E-] / sin s.
  const double denom = std::sin(shift);
  for (int k = 0; k < circuit.depth(); ++k) {
    const std::size_t off = circuit.layer_offset(k);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const double c = terms[t].coeff().real();
      if (c == 0.0) continue;
      const double delta = shift / (2.0 * c);
      const int ti = static_cast<int>(t);
      grad[static_cast<Eigen::Index>(off)] +=
          c * (shifted(k, true, ti, delta) - shifted(k, true, ti, -delta)) / denom;
    }
    const MixerLayer& layer = circuit.layer(k);
    for (std::size_t gi = 0; gi < layer.gates.size(); ++gi) {
      const double delta = shift / 2.0;
      const int gidx = static_cast<int>(gi);
      grad[static_cast<Eigen::Index>(off + 1 + layer.gates[gi].group)] +=
          (shifted(k, false, gidx, delta) - shifted(k, false, gidx, -delta)) / denom;
    }
  }
  return grad;
}

// ---------------------------------------------------------------------------

ParameterVector random_parameters(const CircuitSpec& circuit, Rng& rng, double range) {
  ParameterVector p(static_cast<Eigen::Index>(circuit.parameter_count()));
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = uniform(rng, -range, range);
  return p;
}

OptimizeReport optimize(const CircuitSpec& circuit, const ParameterVector& init,
                        const OptimizeOptions& options) {
  if (options.epochs < 1) throw Error(ErrorKind::Input, "epochs must be >= 1");
  const StateVector psi0 = StateVector::plus(circuit.num_qubits());
  OptimizeReport report;
  ParameterVector theta = init;
  Eigen::VectorXd m = Eigen::VectorXd::Zero(theta.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(theta.size());
  report.best_loss = std::numeric_limits<double>::infinity();
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    const ValueAndGradient vg = value_and_gradient(circuit, theta, psi0);
    if (!std::isfinite(vg.value) || !vg.gradient.allFinite()) {
      report.final_params = theta;
      report.final_loss = vg.value;
      throw OptimizeError("non-finite loss at epoch " + std::to_string(epoch),
                          std::move(report));
    }
    report.loss_trace.push_back(vg.value);
    report.grad_norm_trace.push_back(vg.gradient.norm());
    if (vg.value < report.best_loss) {
      report.best_loss = vg.value;
      report.best_params = theta;
    }
    m = options.beta1 * m + (1.0 - options.beta1) * vg.gradient;
    v = options.beta2 * v + (1.0 - options.beta2) * vg.gradient.cwiseAbs2();
    const double bc1 = 1.0 - std::pow(options.beta1, epoch);
    const double bc2 = 1.0 - std::pow(options.beta2, epoch);
    theta.array() -= options.lr * (m.array() / bc1) /
                     ((v.array() / bc2).sqrt() + options.eps);
  }
  report.final_params = theta;
  report.final_loss = energy(circuit, run(circuit, theta, psi0.amplitudes()));
  if (!std::isfinite(report.final_loss))
    throw OptimizeError("non-finite final loss", std::move(report));
  if (report.final_loss < report.best_loss) {
    report.best_loss = report.final_loss;
    report.best_params = theta;
  }
  return report;
}

OptimizeReport optimize(const CircuitSpec& circuit, std::uint64_t seed,
                        const OptimizeOptions& options) {
  Rng rng(seed);
  return optimize(circuit, random_parameters(circuit, rng, options.init_range), options);
}

std::vector<int> sample_bitstring(const StateVector& state, Rng& rng) {
  const Eigen::VectorXcd& a = state.amplitudes();
  const double u = uniform01(rng) * a.squaredNorm();
  double acc = 0.0;
  Eigen::Index idx = a.size() - 1;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    acc += std::norm(a[i]);
    if (u < acc) {
      idx = i;
      break;
    }
  }
  const int n = state.num_qubits();
  std::vector<int> bits(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) bits[q] = static_cast<int>((idx >> (n - 1 - q)) & 1);
  return bits;
}

}  // namespace mixgen
