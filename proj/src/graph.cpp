#include "mixgen/graph.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace mixgen {

void WeightedGraph::validate() const {
  if (n < 1) throw Error(ErrorKind::Input, "graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw Error(ErrorKind::Input, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorKind::Input, "self-loop edge");
    if (!std::isfinite(e.w)) throw Error(ErrorKind::Input, "non-finite weight");
    const auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      throw Error(ErrorKind::Input, "duplicate edge (" + std::to_string(key.first) +
                                        ", " + std::to_string(key.second) + ")");
  }
}

double WeightedGraph::total_weight() const {
  double total = 0.0;
  for (const Edge& e : edges) total += e.w;
  return total;
}

std::vector<int> WeightedGraph::degrees() const {
  std::vector<int> deg(n, 0);
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::vector<std::vector<double>> WeightedGraph::weight_matrix() const {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const Edge& e : edges) {
    w[e.u][e.v] = e.w;
    w[e.v][e.u] = e.w;
  }
  return w;
}

WeightedGraph ring_graph(int n, double w) {
  WeightedGraph g{n, {}};
  if (n == 2) {
    g.edges.push_back({0, 1, w});
    return g;
  }
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, w});
  return g;
}

WeightedGraph path_graph(int n, double w) {
  WeightedGraph g{n, {}};
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, w});
  return g;
}

WeightedGraph complete_graph(int n, double w) {
  WeightedGraph g{n, {}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j, w});
  return g;
}

}  // namespace mixgen
