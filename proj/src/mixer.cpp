#include "mixgen/mixer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "mixgen/pauli.hpp"
#include "mixgen/problems.hpp"

namespace mixgen {

char to_char(PauliType t) { return t == PauliType::X ? 'X' : 'Y'; }

PauliType pauli_type_from_char(char c) {
  if (c == 'X' || c == 'x') return PauliType::X;
  if (c == 'Y' || c == 'y') return PauliType::Y;
  throw Error(ErrorKind::Input, std::string("mixer operator type must be X or Y, got '") +
                                    c + "'");
}

bool is_canonical_rgs(const Rgs& rgs) {
  int max_seen = -1;
  for (int g : rgs) {
    if (g < 0 || g > max_seen + 1) return false;
    max_seen = std::max(max_seen, g);
  }
  return true;
}

Rgs canonicalize(const std::vector<int>& labels) {
  std::map<int, int> relabel;
  Rgs out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = relabel.try_emplace(l, static_cast<int>(relabel.size()));
    out.push_back(it->second);
  }
  return out;
}

std::string format_rgs(const Rgs& rgs) {
  std::string s;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(rgs[i]);
  }
  return s;
}

Rgs parse_rgs(std::string_view text) {
  Rgs out;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, '-')) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::Input, "malformed grouping string '" + std::string(text) + "'");
    out.push_back(std::stoi(token));
  }
  if (out.empty()) throw Error(ErrorKind::Input, "empty grouping string");
  if (!is_canonical_rgs(out))
    throw Error(ErrorKind::Input,
                "grouping '" + std::string(text) + "' is not a canonical restricted "
                "growth string; canonical form is " + format_rgs(canonicalize(out)));
  return out;
}

int MixerSpec::group_count() const {
  return groups.empty() ? 0 : 1 + *std::max_element(groups.begin(), groups.end());
}

std::vector<std::vector<int>> MixerSpec::group_members() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(group_count()));
  for (int q = 0; q < num_qubits(); ++q) out[groups[q]].push_back(q);
  return out;
}

void MixerSpec::validate() const {
  if (types.empty()) throw Error(ErrorKind::Input, "mixer covers no qubits");
  if (types.size() != groups.size())
    throw Error(ErrorKind::Input, "mixer types and groups differ in length");
  if (!is_canonical_rgs(groups))
    throw Error(ErrorKind::Input, "mixer grouping is not a canonical RGS");
}

std::string format_mixer(const MixerSpec& spec) {
  std::string s;
  for (PauliType t : spec.types) s += to_char(t);
  return s + "/" + format_rgs(spec.groups);
}

MixerSpec parse_mixer(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw Error(ErrorKind::Input, "mixer must look like TYPES/RGS, e.g. XYX/0-1-0");
  MixerSpec spec;
  for (char c : text.substr(0, slash)) spec.types.push_back(pauli_type_from_char(c));
  spec.groups = parse_rgs(text.substr(slash + 1));
  spec.validate();
  return spec;
}

std::vector<Rgs> grouping_pool(int n) {
  if (n < 1) throw Error(ErrorKind::Input, "grouping pool needs n >= 1");
  if (n > kMaxPoolQubits)
    throw CapacityError("grouping pool supports at most " + std::to_string(kMaxPoolQubits) +
                            " qubits",
                        0);
  std::vector<Rgs> pool;
  Rgs current;
  current.reserve(static_cast<std::size_t>(n));
  std::function<void(int)> extend = [&](int max_label) {
    if (static_cast<int>(current.size()) == n) {
      pool.push_back(current);
      return;
    }
    for (int g = 0; g <= max_label + 1; ++g) {
      current.push_back(g);
      extend(std::max(max_label, g));
      current.pop_back();
    }
  };
  current.push_back(0);
  extend(0);
  return pool;
}

MixerSpec fg_spec(int n, PauliType type) {
  return {std::vector<PauliType>(static_cast<std::size_t>(n), type),
          Rgs(static_cast<std::size_t>(n), 0)};
}

MixerSpec ng_spec(int n, PauliType type) {
  Rgs g(static_cast<std::size_t>(n));
  std::iota(g.begin(), g.end(), 0);
  return {std::vector<PauliType>(static_cast<std::size_t>(n), type), g};
}

MixerSpec pg_spec(const WeightedGraph& graph) {
  const OrbitPartition orbits = automorphism_orbits(graph);
  std::vector<int> labels(static_cast<std::size_t>(graph.n));
  for (std::size_t o = 0; o < orbits.vertex_orbits.size(); ++o)
    for (int v : orbits.vertex_orbits[o]) labels[v] = static_cast<int>(o);
  return {std::vector<PauliType>(static_cast<std::size_t>(graph.n), PauliType::X),
          canonicalize(labels)};
}

Rgs groups_from_edges(const Eigen::MatrixXi& ind) {
  if (ind.rows() != ind.cols())
    throw Error(ErrorKind::Input, "edge indicator matrix must be square");
  const int n = static_cast<int>(ind.rows());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (ind(i, j) != ind(j, i))
        throw Error(ErrorKind::Input, "edge indicator matrix must be symmetric");
      if (ind(i, j) != 0) {
        const int a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[i] = find(i);
  return canonicalize(labels);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd EncodedGraph::adjacency() const {
  const int n = node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Arc& arc : arcs) {
    a(arc.to, arc.from) += arc.weight;
    a(arc.from, arc.to) += arc.weight;
  }
  return a;
}

bool EncodedGraph::is_acyclic() const {
  const int n = node_count();
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (const Arc& a : arcs) {
    out[a.from].push_back(a.to);
    ++indeg[a.to];
  }
  std::queue<int> ready;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  int visited = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop();
    ++visited;
    for (int w : out[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  return visited == n;
}

namespace {

bool keys_commute(const PauliKey& a, const PauliKey& b) {
  return (std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) % 2 == 0;
}

/// Splits terms into layers whose members mutually commute: diagonal terms
/// first, then the rest as one layer when possible, else one term per layer.
/// Commuting gates sit side by side, so the wiring does not depend on term
/// order and hence not on qubit labels.
std::vector<std::vector<int>> commuting_layers(const std::vector<PauliTerm>& terms) {
  std::vector<int> diagonal, rest;
  for (int t = 0; t < static_cast<int>(terms.size()); ++t)
    (terms[t].key().is_diagonal() ? diagonal : rest).push_back(t);
  std::vector<std::vector<int>> layers;
  if (!diagonal.empty()) layers.push_back(diagonal);
  bool commuting = true;
  for (std::size_t i = 0; i < rest.size() && commuting; ++i)
    for (std::size_t j = i + 1; j < rest.size() && commuting; ++j)
      commuting = keys_commute(terms[rest[i]].key(), terms[rest[j]].key());
  if (commuting) {
    if (!rest.empty()) layers.push_back(rest);
  } else {
    for (int t : rest) layers.push_back({t});
  }
  return layers;
}

}  // namespace

EncodedGraph encode_problem(const ProblemInstance& instance) {
  const PauliSum cost = cost_hamiltonian(instance);
  const int n = instance.num_qubits();
  const std::vector<PauliTerm> terms = cost.term_list();
  const int gates = static_cast<int>(terms.size());
  const int total = 2 * n + gates;

  EncodedGraph g;
  g.directed = true;
  g.features = Eigen::MatrixXd::Zero(total, kNodeFeatureWidth);
  g.roles.resize(static_cast<std::size_t>(total));
  // Nodes currently ending each qubit wire.
  std::vector<std::vector<int>> frontier(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    g.roles[q] = NodeRole::Input;
    g.features(q, feature::kRole + 0) = 1.0;
    frontier[q] = {q};
  }
  for (const std::vector<int>& layer : commuting_layers(terms)) {
    std::vector<std::vector<int>> next(static_cast<std::size_t>(n));
    for (int t : layer) {
      const int node = n + t;
      const PauliTerm& term = terms[static_cast<std::size_t>(t)];
      g.roles[node] = NodeRole::Gate;
      g.features(node, feature::kRole + 1) = 1.0;
      const std::string letters = term.letters();
      const int arity = term.key().weight();
      int kind = 3;
      if (arity == 2 && std::count(letters.begin(), letters.end(), 'Z') == 2) kind = 0;
      else if (arity == 1 && letters.find('Z') != std::string::npos) kind = 1;
      else if (arity == 1 && letters.find('X') != std::string::npos) kind = 2;
      g.features(node, feature::kGateKind + kind) = 1.0;
      g.features(node, feature::kCoeff) = term.coeff().real();
      g.features(node, feature::kArity) = arity;
      for (int q = 0; q < n; ++q) {
        if (letters[q] == 'I') continue;
        for (int from : frontier[q]) g.arcs.push_back({from, node, 1.0});
        next[q].push_back(node);
      }
    }
    for (int q = 0; q < n; ++q)
      if (!next[q].empty()) frontier[q] = std::move(next[q]);
  }
  for (int q = 0; q < n; ++q) {
    const int node = n + gates + q;
    g.roles[node] = NodeRole::Output;
    g.features(node, feature::kRole + 2) = 1.0;
    for (int from : frontier[q]) g.arcs.push_back({from, node, 1.0});
    g.output_nodes.push_back(node);
  }
  return g;
}

EncodedGraph encode_mixer(const MixerSpec& spec) {
  spec.validate();
  const int n = spec.num_qubits();
  EncodedGraph g;
  g.directed = false;
  g.features = Eigen::MatrixXd::Zero(n, kNodeFeatureWidth);
  g.roles.assign(static_cast<std::size_t>(n), NodeRole::Operator);
  for (int q = 0; q < n; ++q) {
    g.features(q, feature::kRole + 3) = 1.0;
    g.features(q, feature::kType + (spec.types[q] == PauliType::X ? 0 : 1)) = 1.0;
    g.output_nodes.push_back(q);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.arcs.push_back({i, j, spec.groups[i] == spec.groups[j] ? 1.0 : 0.0});
  return g;
}

Eigen::VectorXd depth_embedding(double p, int dim) {
  if (dim < 2 || dim % 2 != 0)
    throw Error(ErrorKind::Input, "depth embedding dimension must be even and positive");
  Eigen::VectorXd x(dim);
  for (int k = 0; 2 * k < dim; ++k) {
    const double freq = std::pow(10000.0, 2.0 * k / dim);
    x[2 * k] = std::sin(p / freq);
    x[2 * k + 1] = std::cos(p / freq);
  }
  return x;
}

}  // namespace mixgen
