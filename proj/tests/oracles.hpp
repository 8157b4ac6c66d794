// Independent dense reference implementations used as test oracles.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <complex>
#include <set>
#include <string>
#include <vector>

#include "mixgen/graph.hpp"
#include "mixgen/mixer.hpp"
#include "mixgen/pauli.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat letter_matrix(char c) {
  Mat m(2, 2);
  const cplx i(0, 1);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// Leftmost letter is the most significant tensor factor.
inline Mat pauli_matrix(const std::string& letters) {
  Mat m = Mat::Identity(1, 1);
  for (char c : letters) m = kron(m, letter_matrix(c));
  return m;
}

inline Mat dense(const mixgen::PauliSum& sum) {
  const int n = sum.num_qubits();
  Mat m = Mat::Zero(Eigen::Index(1) << n, Eigen::Index(1) << n);
  for (const mixgen::PauliTerm& t : sum.term_list()) m += t.coeff() * pauli_matrix(t.letters());
  return m;
}

inline Mat expm(const Mat& h, double t) {
  const Mat a = cplx(0, -t) * h;
  return a.exp();
}

inline Vec plus_state(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  return Vec::Constant(dim, 1.0 / std::sqrt(double(dim)));
}

/// Dense mixer generator of one group.
inline Mat group_generator(const mixgen::MixerSpec& spec, int group) {
  const int n = spec.num_qubits();
  Mat g = Mat::Zero(Eigen::Index(1) << n, Eigen::Index(1) << n);
  for (int q = 0; q < n; ++q) {
    if (spec.groups[q] != group) continue;
    std::string letters(static_cast<std::size_t>(n), 'I');
    letters[q] = mixgen::to_char(spec.types[q]);
    g += pauli_matrix(letters);
  }
  return g;
}

/// Product of dense layer unitaries applied to psi0.
inline Vec evolve(const mixgen::PauliSum& cost, const mixgen::MixerSpec& spec, int p,
                  const Eigen::VectorXd& params, const Vec& psi0) {
  const Mat h = dense(cost);
  const int k = spec.group_count();
  Vec psi = psi0;
  for (int layer = 0; layer < p; ++layer) {
    const Eigen::Index off = layer * (1 + k);
    psi = expm(h, params(off)) * psi;
    for (int j = 0; j < k; ++j) psi = expm(group_generator(spec, j), params(off + 1 + j)) * psi;
  }
  return psi;
}

/// Rank of the smallest subspace containing psi0 invariant under each matrix.
inline int invariant_rank(const std::vector<Mat>& gens, const Vec& psi0, double tol = 1e-8) {
  Mat span = psi0;
  int rank = 1;
  for (;;) {
    Mat grown = span;
    for (const Mat& g : gens) {
      Mat next = g * span;
      Mat both(grown.rows(), grown.cols() + next.cols());
      both << grown, next;
      grown = both;
    }
    Eigen::JacobiSVD<Mat> svd(grown, Eigen::ComputeThinU);
    const Eigen::VectorXd s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > tol * s(0)) ++r;
    span = svd.matrixU().leftCols(r);
    if (r == rank) return r;
    rank = r;
  }
}

/// Number of set partitions of [n] by brute-force canonicalization of all
/// n^n labelings.
inline std::size_t partition_count(int n) {
  std::set<std::vector<int>> seen;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<int> canon(labels.size());
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (map[labels[i]] < 0) map[labels[i]] = next++;
      canon[i] = map[labels[i]];
    }
    seen.insert(canon);
    int pos = 0;
    while (pos < n && ++labels[pos] == n) labels[pos++] = 0;
    if (pos == n) break;
  }
  return seen.size();
}

/// Bell numbers by the Bell triangle.
inline std::vector<std::size_t> bell_numbers(int up_to) {
  std::vector<std::size_t> bell{1};
  std::vector<std::size_t> row{1};
  for (int i = 1; i <= up_to; ++i) {
    std::vector<std::size_t> next{row.back()};
    for (std::size_t v : row) next.push_back(next.back() + v);
    bell.push_back(next.front());
    row = next;
  }
  return bell;
}

/// Vertex orbits by checking every permutation for weight preservation.
inline std::vector<std::vector<int>> brute_force_orbits(const mixgen::WeightedGraph& g) {
  const auto w = g.weight_matrix();
  std::vector<int> perm(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) perm[i] = i;
  std::vector<std::set<int>> orbit(static_cast<std::size_t>(g.n));
  do {
    bool ok = true;
    for (int i = 0; i < g.n && ok; ++i)
      for (int j = 0; j < g.n && ok; ++j) ok = std::abs(w[i][j] - w[perm[i]][perm[j]]) < 1e-12;
    if (ok)
      for (int i = 0; i < g.n; ++i) orbit[i].insert(perm[i]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::vector<int>> unique;
  for (const auto& o : orbit) unique.insert(std::vector<int>(o.begin(), o.end()));
  return {unique.begin(), unique.end()};
}

/// Max cut by enumerating all 2^n assignments.
inline double max_cut(const mixgen::WeightedGraph& g) {
  double best = 0.0;
  for (std::uint64_t z = 0; z < (std::uint64_t(1) << g.n); ++z) {
    double c = 0.0;
    for (const auto& e : g.edges)
      if (((z >> e.u) ^ (z >> e.v)) & 1) c += e.w;
    best = std::max(best, c);
  }
  return best;
}

}  // namespace oracle
