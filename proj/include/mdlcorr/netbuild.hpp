#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "mdlcorr/types.hpp"

namespace mdlcorr {

/// Undirected, unweighted graph of observed links plus a uniform prior weight
/// gamma on every node pair. The prior is never materialized as edges.
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;
  /// Builds from an edge list; duplicates are merged, self-loops rejected.
  Graph(int n_nodes, const std::vector<std::pair<int, int>>& edges, double prior_weight = 0.0);

  int n_nodes() const { return n_nodes_; }
  std::size_t n_edges() const { return neighbors_.size() / 2; }
  double prior_weight() const { return prior_weight_; }

  /// Sorted neighbor list of node i.
  std::span<const int> neighbors(int i) const {
    return {neighbors_.data() + offsets_[static_cast<std::size_t>(i)],
            neighbors_.data() + offsets_[static_cast<std::size_t>(i) + 1]};
  }
  int degree(int i) const {
    return offsets_[static_cast<std::size_t>(i) + 1] - offsets_[static_cast<std::size_t>(i)];
  }
  bool has_edge(int i, int j) const;

  /// Unordered pairs (i < j) in lexicographic order.
  std::vector<std::pair<int, int>> edge_list() const;

  Graph with_prior_weight(double gamma) const;

 private:
  int n_nodes_ = 0;
  double prior_weight_ = 0.0;
  std::vector<int> offsets_{0};
  std::vector<int> neighbors_;
};

enum class SignMode {
  /// Negative correlations never form links.
  Positive,
  /// Threshold |r| instead of r.
  Absolute,
};

/// Link (i, j) iff r_ij > tau and i != j. Prior weight starts at 0.
Graph threshold_graph(const CorrelationMatrix& corr, double tau, SignMode mode = SignMode::Positive);

/// ln(N) / N.
double default_prior_weight(int n_nodes);

/// Sets the prior weight to ln(N)/N. Requires N >= 2.
Graph apply_prior(const Graph& graph);

/// TSV with header "node_i\tnode_j", one unordered pair per line.
void write_edge_list(std::ostream& os, const Graph& graph);

}  // namespace mdlcorr
