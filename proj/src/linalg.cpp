#include "mixgen/linalg.hpp"

#include <algorithm>
#include <vector>

namespace mixgen::linalg {

namespace {

constexpr cplx kI{0.0, 1.0};

struct LanczosBasis {
  Eigen::MatrixXcd v;          // dim x m orthonormal columns
  Eigen::VectorXd alpha;       // diagonal of T
  Eigen::VectorXd beta;        // off-diagonal of T (size m-1), beta(m-1) is the next one
  double next_beta = 0.0;
  int size = 0;
};

// m-step Lanczos from unit vector `start`, with full reorthogonalization.
LanczosBasis lanczos(const LinearOperator& op, const Eigen::VectorXcd& start,
                     int max_dim, double breakdown_tol) {
  const Eigen::Index dim = start.size();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(max_dim, dim));
  LanczosBasis b;
  b.v.resize(dim, m_max);
  b.alpha.resize(m_max);
  b.beta.resize(m_max);
  b.v.col(0) = start;
  Eigen::VectorXcd w(dim);
  int j = 0;
  for (; j < m_max; ++j) {
    op(b.v.col(j), w);
    const double a = b.v.col(j).dot(w).real();
    b.alpha(j) = a;
    project_out_twice(b.v.leftCols(j + 1), w);
    const double nb = w.norm();
    b.beta(j) = nb;
    if (nb < breakdown_tol || j + 1 == m_max) {
      ++j;
      break;
    }
    b.v.col(j + 1) = w / nb;
  }
  b.size = j;
  b.next_beta = b.beta(j - 1);
  return b;
}

}  // namespace

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& hamiltonian, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::Numeric, "eigendecomposition failed");
  const Eigen::VectorXcd phases =
      (-kI * t * es.eigenvalues().cast<cplx>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXcd expmv_lanczos(const LinearOperator& hamiltonian, double t,
                               const Eigen::VectorXcd& v,
                               const KrylovOptions& options) {
  Eigen::VectorXcd w = v;
  const double norm0 = v.norm();
  if (norm0 == 0.0 || t == 0.0) return w;

  double remaining = t;
  int substeps = 0;
  while (remaining != 0.0) {
    const double wn = w.norm();
    const LanczosBasis kb = lanczos(hamiltonian, w / wn, options.max_dim, 1e-14);
    const int m = kb.size;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = kb.alpha(i);
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = kb.beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const bool exact = kb.next_beta < 1e-14 || m == w.size();

    double step = remaining;
    Eigen::VectorXcd small;
    for (;;) {
      const Eigen::VectorXcd phases =
          (-kI * step * es.eigenvalues().cast<cplx>()).array().exp().matrix();
      small = es.eigenvectors().cast<cplx>() *
              (phases.asDiagonal() * es.eigenvectors().row(0).transpose().cast<cplx>());
      const double err = exact ? 0.0 : kb.next_beta * std::abs(small(m - 1));
      if (err <= options.tol * std::abs(step / t)) break;
      step *= 0.5;
      if (++substeps > options.max_substeps)
        throw Error(ErrorKind::Numeric, "Krylov exponential did not converge");
    }
    w = wn * (kb.v.leftCols(m) * small);
    remaining -= step;
    if (std::abs(remaining) < 1e-15 * std::abs(t)) remaining = 0.0;
    if (++substeps > options.max_substeps)
      throw Error(ErrorKind::Numeric, "Krylov exponential did not converge");
  }
  return w;
}

GroundState lanczos_ground_state(const LinearOperator& hamiltonian,
                                 Eigen::Index dim, double tol, int max_iter,
                                 std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXcd start(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    start(i) = cplx(standard_normal(rng), standard_normal(rng));
  start.normalize();

  const int m_max = static_cast<int>(std::min<Eigen::Index>(max_iter, dim));
  Eigen::MatrixXcd v(dim, m_max);
  std::vector<double> alpha, beta;
  v.col(0) = start;
  Eigen::VectorXcd w(dim);
  GroundState gs;
  for (int j = 0; j < m_max; ++j) {
    hamiltonian(v.col(j), w);
    alpha.push_back(v.col(j).dot(w).real());
    project_out_twice(v.leftCols(j + 1), w);
    const double nb = w.norm();
    beta.push_back(nb);

    const int m = j + 1;
    const bool check = (m % 5 == 0) || nb < 1e-14 || m == m_max;
    if (!check) {
      v.col(j + 1) = w / nb;
      continue;
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const double residual = nb * std::abs(es.eigenvectors()(m - 1, 0));
    if (residual < tol || nb < 1e-14 || m == static_cast<int>(dim)) {
      gs.energy = es.eigenvalues()(0);
      gs.vector = v.leftCols(m) * es.eigenvectors().col(0).cast<cplx>();
      gs.vector.normalize();
      gs.iterations = m;
      return gs;
    }
    if (m == m_max) break;
    v.col(j + 1) = w / nb;
  }
  throw Error(ErrorKind::Numeric, "Lanczos ground state did not converge");
}

}  // namespace mixgen::linalg
