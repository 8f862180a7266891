#include "mdlcorr/netbuild.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mdlcorr/errors.hpp"

namespace mdlcorr {

Graph::Graph(int n_nodes, const std::vector<std::pair<int, int>>& edges, double prior_weight)
    : n_nodes_(n_nodes), prior_weight_(prior_weight) {
  if (n_nodes < 0) throw InvalidArgument("node count must be non-negative");
  if (!(prior_weight >= 0.0) || !std::isfinite(prior_weight)) {
    throw InvalidArgument("prior weight must be finite and non-negative");
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_nodes));
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_nodes || b >= n_nodes) throw InvalidArgument("edge endpoint out of range");
    if (a == b) throw InvalidArgument("self-loops are not allowed");
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  offsets_.assign(static_cast<std::size_t>(n_nodes) + 1, 0);
  for (int i = 0; i < n_nodes; ++i) {
    auto& list = adj[static_cast<std::size_t>(i)];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    offsets_[static_cast<std::size_t>(i) + 1] = offsets_[static_cast<std::size_t>(i)] + static_cast<int>(list.size());
  }
  neighbors_.reserve(static_cast<std::size_t>(offsets_.back()));
  for (auto& list : adj) neighbors_.insert(neighbors_.end(), list.begin(), list.end());
}

bool Graph::has_edge(int i, int j) const {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(n_edges());
  for (int i = 0; i < n_nodes_; ++i) {
    for (int j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

Graph Graph::with_prior_weight(double gamma) const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("prior weight must be finite and non-negative");
  }
  Graph g = *this;
  g.prior_weight_ = gamma;
  return g;
}

Graph threshold_graph(const CorrelationMatrix& corr, double tau, SignMode mode) {
  const auto n = static_cast<int>(corr.size());
  const Eigen::MatrixXd& r = corr.values();
  std::vector<std::pair<int, int>> edges;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      const double v = mode == SignMode::Absolute ? std::abs(r(i, j)) : r(i, j);
      if (v > tau) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges, 0.0);
}

double default_prior_weight(int n_nodes) {
  if (n_nodes < 2) throw InvalidArgument("the prior needs at least two nodes");
  return std::log(static_cast<double>(n_nodes)) / static_cast<double>(n_nodes);
}

Graph apply_prior(const Graph& graph) {
  return graph.with_prior_weight(default_prior_weight(graph.n_nodes()));
}

void write_edge_list(std::ostream& os, const Graph& graph) {
  os << "node_i\tnode_j\n";
  for (auto [i, j] : graph.edge_list()) os << i << '\t' << j << '\n';
}

}  // namespace mdlcorr
