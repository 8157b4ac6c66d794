#include "mixgen/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "mixgen/graph.hpp"
#include "mixgen/linalg.hpp"

namespace mixgen {

namespace {

constexpr cplx kI{0.0, 1.0};

// Letter index: 0=I 1=X 2=Y 3=Z.
int letter_index(const PauliKey& k, int q) {
  const bool x = (k.x >> q) & 1u;
  const bool z = (k.z >> q) & 1u;
  if (x && z) return 2;
  if (x) return 1;
  if (z) return 3;
  return 0;
}

// Phase of sigma_a * sigma_b for non-identity a, b.
cplx single_phase(int a, int b) {
  if (a == b) return 1.0;
  // Cyclic (X,Y,Z) order gives +i.
  const bool cyclic = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
  return cyclic ? kI : -kI;
}

void check_same_n(int a, int b) {
  if (a != b)
    throw Error(ErrorKind::Dimension, "Pauli operands over " + std::to_string(a) +
                                          " and " + std::to_string(b) + " qubits");
}

bool anticommute(const PauliKey& a, const PauliKey& b) {
  const int sym = std::popcount((a.x & b.z) ^ (a.z & b.x));
  return sym % 2 == 1;
}

cplx product_phase(const PauliKey& a, const PauliKey& b) {
  cplx phase = 1.0;
  std::uint64_t both = (a.x | a.z) & (b.x | b.z);
  while (both) {
    const int q = std::countr_zero(both);
    both &= both - 1;
    phase *= single_phase(letter_index(a, q), letter_index(b, q));
  }
  return phase;
}

// Basis-index masks for a key: qubit q is bit (n - 1 - q).
struct IndexMasks {
  std::uint64_t flip = 0;
  std::uint64_t zmask = 0;
  cplx yphase = 1.0;
};

IndexMasks index_masks(const PauliKey& key, int n) {
  IndexMasks m;
  int ny = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = 1ULL << (n - 1 - q);
    const bool x = (key.x >> q) & 1u;
    const bool z = (key.z >> q) & 1u;
    if (x) m.flip |= bit;
    if (z) m.zmask |= bit;
    if (x && z) ++ny;
  }
  // Y = i X Z, so P = i^{ny} X^x Z^z.
  static const cplx powers[4] = {1.0, kI, -1.0, -kI};
  m.yphase = powers[ny % 4];
  return m;
}

}  // namespace

int PauliKey::weight() const { return std::popcount(x | z); }

PauliTerm::PauliTerm(int num_qubits, PauliKey key, cplx coeff)
    : n_(num_qubits), key_(key), coeff_(coeff) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw Error(ErrorKind::Input, "qubit count out of range");
  const std::uint64_t mask = num_qubits == 64 ? ~0ULL : ((1ULL << num_qubits) - 1);
  if ((key.x | key.z) & ~mask)
    throw Error(ErrorKind::Input, "Pauli key exceeds qubit count");
}

PauliTerm PauliTerm::from_letters(std::string_view letters, cplx coeff) {
  PauliKey key;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    const std::uint64_t bit = 1ULL << q;
    switch (letters[q]) {
      case 'I': break;
      case 'X': key.x |= bit; break;
      case 'Y': key.x |= bit; key.z |= bit; break;
      case 'Z': key.z |= bit; break;
      default:
        throw Error(ErrorKind::Input,
                    std::string("invalid Pauli letter '") + letters[q] + "'");
    }
  }
  return PauliTerm(static_cast<int>(letters.size()), key, coeff);
}

PauliTerm PauliTerm::single(int num_qubits, int qubit, char letter, cplx coeff) {
  if (qubit < 0 || qubit >= num_qubits)
    throw Error(ErrorKind::Input, "qubit index out of range");
  std::string letters(num_qubits, 'I');
  letters[qubit] = letter;
  return from_letters(letters, coeff);
}

PauliTerm PauliTerm::zz(int num_qubits, int a, int b, cplx coeff) {
  if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits || a == b)
    throw Error(ErrorKind::Input, "invalid ZZ qubit pair");
  PauliKey key;
  key.z = (1ULL << a) | (1ULL << b);
  return PauliTerm(num_qubits, key, coeff);
}

char PauliTerm::letter(int qubit) const {
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  return letters[letter_index(key_, qubit)];
}

std::string PauliTerm::letters() const {
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

PauliTerm operator*(const PauliTerm& a, const PauliTerm& b) {
  check_same_n(a.num_qubits(), b.num_qubits());
  const PauliKey key{a.key().x ^ b.key().x, a.key().z ^ b.key().z};
  return PauliTerm(a.num_qubits(), key,
                   a.coeff() * b.coeff() * product_phase(a.key(), b.key()));
}

std::optional<PauliTerm> commutator(const PauliTerm& a, const PauliTerm& b) {
  check_same_n(a.num_qubits(), b.num_qubits());
  if (!anticommute(a.key(), b.key())) return std::nullopt;
  PauliTerm ab = a * b;
  ab.set_coeff(2.0 * ab.coeff());
  if (std::abs(ab.coeff()) == 0.0) return std::nullopt;
  return ab;
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(const PauliTerm& term) : n_(term.num_qubits()) { add(term); }

std::vector<PauliTerm> PauliSum::term_list() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) out.emplace_back(n_, key, c);
  return out;
}

void PauliSum::add(const PauliTerm& term) {
  if (n_ == 0) n_ = term.num_qubits();
  check_same_n(n_, term.num_qubits());
  add(term.key(), term.coeff());
}

void PauliSum::add(const PauliKey& key, cplx coeff) {
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < kDropTolerance) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ == 0) return *this;
  if (n_ == 0) n_ = other.n_;
  check_same_n(n_, other.n_);
  for (const auto& [key, c] : other.terms_) add(key, c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx s) {
  if (s == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < kDropTolerance)
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& kv) {
    return std::abs(kv.second.imag()) <= tol * std::max(1.0, std::abs(kv.second));
  });
}

bool PauliSum::is_diagonal() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.is_diagonal(); });
}

double PauliSum::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void PauliSum::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  const std::uint64_t dim = 1ULL << n_;
  if (static_cast<std::uint64_t>(in.size()) != dim)
    throw Error(ErrorKind::Dimension, "state length does not match 2^n");
  out.setZero(in.size());
  for (const auto& [key, c] : terms_) {
    const IndexMasks m = index_masks(key, n_);
    const cplx base = c * m.yphase;
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & m.zmask) & 1) ? -1.0 : 1.0;
      out[b ^ m.flip] += base * sign * in[b];
    }
  }
}

Eigen::VectorXcd PauliSum::apply(const Eigen::VectorXcd& in) const {
  Eigen::VectorXcd out;
  apply(in, out);
  return out;
}

Eigen::VectorXd PauliSum::diagonal() const {
  if (!is_diagonal())
    throw Error(ErrorKind::Input, "diagonal() on a sum with X/Y letters");
  const std::uint64_t dim = 1ULL << n_;
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& [key, c] : terms_) {
    const IndexMasks m = index_masks(key, n_);
    const double coeff = c.real();
    for (std::uint64_t b = 0; b < dim; ++b)
      d[b] += (std::popcount(b & m.zmask) & 1) ? -coeff : coeff;
  }
  return d;
}

Eigen::SparseMatrix<cplx> PauliSum::to_sparse() const {
  const std::uint64_t dim = 1ULL << n_;
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(terms_.size() * dim);
  for (const auto& [key, c] : terms_) {
    const IndexMasks m = index_masks(key, n_);
    const cplx base = c * m.yphase;
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & m.zmask) & 1) ? -1.0 : 1.0;
      trips.emplace_back(static_cast<int>(b ^ m.flip), static_cast<int>(b),
                         base * sign);
    }
  }
  Eigen::SparseMatrix<cplx> mat(static_cast<Eigen::Index>(dim),
                                static_cast<Eigen::Index>(dim));
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.prune(cplx(0.0), 0.0);
  return mat;
}

Eigen::MatrixXcd PauliSum::to_dense() const { return Eigen::MatrixXcd(to_sparse()); }

PauliSum operator+(PauliSum a, const PauliSum& b) {
  a += b;
  return a;
}

PauliSum operator*(cplx s, PauliSum a) {
  a *= s;
  return a;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  check_same_n(a.num_qubits(), b.num_qubits());
  PauliSum out(a.num_qubits());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      out.add(PauliKey{ka.x ^ kb.x, ka.z ^ kb.z}, ca * cb * product_phase(ka, kb));
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  check_same_n(a.num_qubits(), b.num_qubits());
  PauliSum out(a.num_qubits());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      if (!anticommute(ka, kb)) continue;
      out.add(PauliKey{ka.x ^ kb.x, ka.z ^ kb.z},
              2.0 * ca * cb * product_phase(ka, kb));
    }
  return out;
}

PauliSum parse_pauli_sum(std::string_view text) {
  PauliSum sum;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    std::string letters;
    if (!(ls >> re)) continue;  // blank
    if (!(ls >> im >> letters))
      throw Error(ErrorKind::Input,
                  "Pauli sum line " + std::to_string(lineno) +
                      ": expected '<re> <im> <letters>'");
    std::string extra;
    if (ls >> extra)
      throw Error(ErrorKind::Input,
                  "Pauli sum line " + std::to_string(lineno) + ": trailing text");
    sum.add(PauliTerm::from_letters(letters, cplx(re, im)));
  }
  return sum;
}

std::string format_pauli_sum(const PauliSum& sum) {
  std::string out;
  char buf[96];
  for (const PauliTerm& t : sum.term_list()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", t.coeff().real(), t.coeff().imag());
    out += buf;
    out += t.letters();
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lie closure

const char* to_string(DesignLabel label) {
  switch (label) {
    case DesignLabel::FG: return "FG";
    case DesignLabel::PG: return "PG";
    case DesignLabel::NG: return "NG";
    case DesignLabel::Custom: return "custom";
  }
  return "custom";
}

int AnsatzDesign::num_qubits() const {
  if (generators.empty()) throw Error(ErrorKind::Input, "design has no generators");
  const int n = generators.front().num_qubits();
  for (const auto& g : generators) check_same_n(n, g.num_qubits());
  return n;
}

namespace {

using SparseRow = std::map<PauliKey, double>;

// Incremental row echelon form over Pauli-indexed real coordinates.
class PauliEchelon {
 public:
  // Returns true when `v` is independent of the rows seen so far (and adds it).
  bool insert(SparseRow v) {
    double scale = 0.0;
    for (const auto& [k, c] : v) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return false;
    for (const Row& row : rows_) {
      auto it = v.find(row.pivot);
      if (it == v.end()) continue;
      const double f = it->second / row.pivot_value;
      for (const auto& [k, c] : row.coeffs) {
        auto [jt, inserted] = v.try_emplace(k, -f * c);
        if (!inserted) jt->second -= f * c;
      }
      v.erase(row.pivot);
    }
    PauliKey pivot;
    double best = 0.0;
    for (auto it = v.begin(); it != v.end();) {
      if (std::abs(it->second) <= kZeroTol * scale) {
        it = v.erase(it);
        continue;
      }
      if (std::abs(it->second) > best) {
        best = std::abs(it->second);
        pivot = it->first;
      }
      ++it;
    }
    if (v.empty()) return false;
    const double pv = v.at(pivot);
    rows_.push_back({std::move(v), pivot, pv});
    return true;
  }

 private:
  static constexpr double kZeroTol = 1e-9;
  struct Row {
    SparseRow coeffs;
    PauliKey pivot;
    double pivot_value;
  };
  std::vector<Row> rows_;
};

SparseRow real_row(const PauliSum& h) {
  SparseRow row;
  for (const auto& [k, c] : h.terms()) row.emplace(k, c.real());
  return row;
}

PauliSum normalized(PauliSum h) {
  const double m = h.max_abs_coeff();
  if (m > 0.0) h *= 1.0 / m;
  return h;
}

}  // namespace

std::vector<PauliSum> lie_closure(const std::vector<PauliSum>& generators,
                                  std::size_t max_dim) {
  if (generators.empty()) return {};
  const int n = generators.front().num_qubits();
  for (const auto& g : generators) {
    check_same_n(n, g.num_qubits());
    if (!g.is_hermitian())
      throw Error(ErrorKind::Input, "lie_closure expects Hermitian generators");
  }

  PauliEchelon echelon;
  std::vector<PauliSum> basis;
  auto try_add = [&](PauliSum h) {
    if (h.empty()) return;
    if (!echelon.insert(real_row(h))) return;
    if (basis.size() >= max_dim)
      throw CapacityError("Lie closure exceeds max_dim " + std::to_string(max_dim),
                          basis.size());
    basis.push_back(normalized(std::move(h)));
  };

  for (const auto& g : generators) {
    // Drop imaginary round-off so coordinates are purely real.
    PauliSum h(n);
    for (const auto& [k, c] : g.terms()) h.add(k, c.real());
    try_add(std::move(h));
  }
  // [iA, iB] = i (-i [A, B]) keeps Hermitian representatives real.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      PauliSum c = commutator(basis[i], basis[j]);
      c *= cplx(0.0, -1.0);
      PauliSum real(n);
      for (const auto& [k, v] : c.terms()) real.add(k, v.real());
      try_add(std::move(real));
    }
  }
  return basis;
}

std::size_t dla_dimension(const AnsatzDesign& design, std::size_t max_dim) {
  design.num_qubits();
  return lie_closure(design.generators, max_dim).size();
}

namespace {

/// Joint level sets of the given diagonals; values within 1e-9 of the scale
/// count as equal.
std::vector<std::vector<Eigen::Index>> level_sets(const std::vector<Eigen::VectorXd>& diagonals,
                                                  Eigen::Index dim) {
  std::vector<std::vector<Eigen::Index>> classes(1);
  classes[0].resize(static_cast<std::size_t>(dim));
  std::iota(classes[0].begin(), classes[0].end(), Eigen::Index(0));
  for (const Eigen::VectorXd& d : diagonals) {
    const double gap = 1e-9 * std::max(1.0, d.cwiseAbs().maxCoeff());
    std::vector<std::vector<Eigen::Index>> refined;
    for (auto& c : classes) {
      std::stable_sort(c.begin(), c.end(), [&](Eigen::Index a, Eigen::Index b) { return d(a) < d(b); });
      std::size_t start = 0;
      for (std::size_t k = 1; k <= c.size(); ++k) {
        if (k < c.size() && d(c[k]) - d(c[k - 1]) <= gap) continue;
        refined.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(start),
                             c.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(refined.back().begin(), refined.back().end());
        start = k;
      }
    }
    classes = std::move(refined);
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

}  // namespace

Eigen::MatrixXcd invariant_subspace(const AnsatzDesign& design,
                                    const Eigen::VectorXcd& psi0, double tol) {
  const int n = design.num_qubits();
  if (n > 14)
    throw CapacityError("effective_dimension supports at most 14 qubits", 0);
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (psi0.size() != dim)
    throw Error(ErrorKind::Dimension, "initial state length does not match 2^n");
  if (std::abs(psi0.norm() - 1.0) > 1e-9)
    throw Error(ErrorKind::Input, "initial state is not normalized");

  // Diagonal generators act through the masks onto their joint level sets:
  // a subspace is invariant under a Hermitian operator exactly when it is
  // invariant under its spectral projectors. Repeated multiplication by a
  // diagonal with crowded eigenvalues is a Vandermonde-conditioned Krylov
  // process and loses the subspace to round-off.
  std::vector<Eigen::VectorXd> diagonals;
  std::vector<Eigen::SparseMatrix<cplx>> ops;
  for (const auto& g : design.generators) {
    if (g.is_diagonal()) diagonals.push_back(g.diagonal());
    else ops.push_back(g.to_sparse());
  }
  const std::vector<std::vector<Eigen::Index>> classes = level_sets(diagonals, dim);
  std::vector<std::size_t> class_of(static_cast<std::size_t>(dim));
  std::vector<Eigen::Index> local(static_cast<std::size_t>(dim));
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t k = 0; k < classes[c].size(); ++k) {
      class_of[classes[c][k]] = c;
      local[classes[c][k]] = static_cast<Eigen::Index>(k);
    }

  // Orthonormal vectors per class, in class-local coordinates.
  std::vector<std::vector<Eigen::VectorXcd>> blocks(classes.size());
  std::vector<std::pair<std::size_t, std::size_t>> frontier;
  Eigen::Index total = 0;
  auto add = [&](std::size_t c, Eigen::VectorXcd v, double scale) {
    auto& block = blocks[c];
    if (block.size() == classes[c].size()) return;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : block) v -= b.dot(v) * b;
    const double norm = v.norm();
    if (norm <= tol * scale) return;
    block.push_back(v / norm);
    frontier.emplace_back(c, block.size() - 1);
    ++total;
  };
  auto scatter = [&](const Eigen::VectorXcd& full, double scale) {
    std::vector<Eigen::VectorXcd> pieces(classes.size());
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (full(i) == cplx(0.0)) continue;
      auto& piece = pieces[class_of[i]];
      if (piece.size() == 0)
        piece = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(classes[class_of[i]].size()));
      piece(local[i]) = full(i);
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (pieces[c].size() > 0) add(c, std::move(pieces[c]), scale);
  };

  scatter(psi0, 1.0);
  Eigen::VectorXcd x(dim), y(dim);
  for (std::size_t next = 0; next < frontier.size() && total < dim; ++next) {
    const auto [c, k] = frontier[next];
    x.setZero();
    const Eigen::VectorXcd& w = blocks[c][k];
    for (std::size_t j = 0; j < classes[c].size(); ++j) x(classes[c][j]) = w(static_cast<Eigen::Index>(j));
    for (const auto& op : ops) {
      y.noalias() = op * x;
      scatter(y, std::max(1.0, y.norm()));
    }
  }

  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(dim, total);
  Eigen::Index col = 0;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (const auto& b : blocks[c]) {
      for (std::size_t j = 0; j < classes[c].size(); ++j)
        basis(classes[c][j], col) = b(static_cast<Eigen::Index>(j));
      ++col;
    }
  return basis;
}

std::size_t effective_dimension(const AnsatzDesign& design,
                                const Eigen::VectorXcd& psi0, double tol) {
  return static_cast<std::size_t>(invariant_subspace(design, psi0, tol).cols());
}

// ---------------------------------------------------------------------------
// Automorphisms

bool OrbitPartition::all_singleton() const {
  return std::all_of(vertex_orbits.begin(), vertex_orbits.end(),
                     [](const auto& o) { return o.size() == 1; });
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<int>> blocks() {
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
  }
};

}  // namespace

OrbitPartition automorphism_orbits(const WeightedGraph& graph, double weight_tol) {
  graph.validate();
  const int n = graph.n;
  if (n > kMaxAutomorphismVertices)
    throw CapacityError("automorphism search supports at most " +
                            std::to_string(kMaxAutomorphismVertices) + " vertices",
                        0);
  const int m = static_cast<int>(graph.edges.size());
  std::vector<std::vector<int>> edge_id(n, std::vector<int>(n, -1));
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> profile(n);
  for (int e = 0; e < m; ++e) {
    const Edge& ed = graph.edges[e];
    edge_id[ed.u][ed.v] = edge_id[ed.v][ed.u] = e;
    w[ed.u][ed.v] = w[ed.v][ed.u] = ed.w;
    profile[ed.u].push_back(ed.w);
    profile[ed.v].push_back(ed.w);
  }
  for (auto& p : profile) std::sort(p.begin(), p.end());
  auto same_profile = [&](int a, int b) {
    if (profile[a].size() != profile[b].size()) return false;
    for (std::size_t i = 0; i < profile[a].size(); ++i)
      if (std::abs(profile[a][i] - profile[b][i]) > weight_tol) return false;
    return true;
  };

  UnionFind vertices(n);
  UnionFind edges(std::max(m, 1));
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);

  std::function<void(int)> search = [&](int v) {
    if (v == n) {
      for (int u = 0; u < n; ++u) vertices.unite(u, perm[u]);
      for (int e = 0; e < m; ++e) {
        const Edge& ed = graph.edges[e];
        edges.unite(e, edge_id[perm[ed.u]][perm[ed.v]]);
      }
      return;
    }
    for (int cand = 0; cand < n; ++cand) {
      if (used[cand] || !same_profile(v, cand)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        const bool e1 = edge_id[u][v] >= 0;
        const bool e2 = edge_id[perm[u]][cand] >= 0;
        ok = e1 == e2 && (!e1 || std::abs(w[u][v] - w[perm[u]][cand]) <= weight_tol);
      }
      if (!ok) continue;
      perm[v] = cand;
      used[cand] = true;
      search(v + 1);
      used[cand] = false;
      perm[v] = -1;
    }
  };
  search(0);

  OrbitPartition out;
  out.vertex_orbits = vertices.blocks();
  if (m > 0) out.edge_orbits = edges.blocks();
  return out;
}

PauliSum transverse_x(int num_qubits) {
  PauliSum h(num_qubits);
  for (int q = 0; q < num_qubits; ++q) h.add(PauliTerm::single(num_qubits, q, 'X'));
  return h;
}

AnsatzDesign fg_design(const PauliSum& cost) {
  return {{transverse_x(cost.num_qubits()), cost}, DesignLabel::FG};
}

AnsatzDesign ng_design(const PauliSum& cost) {
  AnsatzDesign d{{}, DesignLabel::NG};
  const int n = cost.num_qubits();
  for (int q = 0; q < n; ++q) d.generators.emplace_back(PauliTerm::single(n, q, 'X'));
  for (const PauliTerm& t : cost.term_list()) d.generators.emplace_back(t);
  return d;
}

AnsatzDesign pg_design(const WeightedGraph& graph) {
  const OrbitPartition orbits = automorphism_orbits(graph);
  const int n = graph.n;
  AnsatzDesign d{{}, DesignLabel::PG};
  for (const auto& orbit : orbits.vertex_orbits) {
    PauliSum h(n);
    for (int q : orbit) h.add(PauliTerm::single(n, q, 'X'));
    d.generators.push_back(std::move(h));
  }
  for (const auto& orbit : orbits.edge_orbits) {
    PauliSum h(n);
    for (int e : orbit) {
      const Edge& ed = graph.edges[e];
      h.add(PauliTerm::zz(n, ed.u, ed.v, 0.5 * ed.w));
    }
    if (!h.empty()) d.generators.push_back(std::move(h));
  }
  return d;
}

}  // namespace mixgen
