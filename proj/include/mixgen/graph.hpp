#pragma once

#include <string>
#include <vector>

#include "mixgen/common.hpp"

namespace mixgen {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

/// Simple undirected weighted graph on vertices 0..n-1.
struct WeightedGraph {
  int n = 0;
  std::vector<Edge> edges;

  /// Throws Input on self-loops, duplicate edges, out-of-range endpoints or
  /// non-finite weights.
  void validate() const;
  double total_weight() const;
  std::vector<int> degrees() const;
  /// Dense symmetric weight matrix, zero where no edge.
  std::vector<std::vector<double>> weight_matrix() const;
};

WeightedGraph ring_graph(int n, double w = 1.0);
WeightedGraph path_graph(int n, double w = 1.0);
WeightedGraph complete_graph(int n, double w = 1.0);

}  // namespace mixgen
