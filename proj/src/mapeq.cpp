#include "mdlcorr/mapeq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mdlcorr/errors.hpp"
#include "mdlcorr/parallel.hpp"

namespace mdlcorr {

namespace {

constexpr double kMinImprovement = 1e-10;
constexpr int kMaxPasses = 500;
constexpr int kMaxTuneRounds = 20;

inline double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Total link weight S summed over ordered pairs.
double total_flow_weight(const Graph& g) {
  const double n = g.n_nodes();
  return 2.0 * static_cast<double>(g.n_edges()) + g.prior_weight() * n * (n - 1.0);
}

double node_entropy_term(const Graph& g, double total) {
  const double prior_degree = g.prior_weight() * (g.n_nodes() - 1.0);
  double acc = 0.0;
  for (int i = 0; i < g.n_nodes(); ++i) acc += plogp((g.degree(i) + prior_degree) / total);
  return acc;
}

// Shared constants of one graph's flow model.
struct FlowModel {
  double n_total = 0.0;
  double gamma = 0.0;
  double total = 0.0;
  double node_term = 0.0;  // sum_a plogp(p_a)

  explicit FlowModel(const Graph& g)
      : n_total(g.n_nodes()), gamma(g.prior_weight()), total(total_flow_weight(g)) {
    node_term = node_entropy_term(g, total);
  }

  double exit_flow(double size, double cut) const {
    return (cut + gamma * size * (n_total - size)) / total;
  }
  double module_flow(double size, double degree) const {
    return (degree + gamma * size * (n_total - 1.0)) / total;
  }
};

// Units being moved at one aggregation level. Edge weights count observed
// links between members of two different units.
struct LevelGraph {
  std::vector<double> size;    // member node count
  std::vector<double> degree;  // observed degree summed over members
  std::vector<double> ext;     // observed links leaving the unit
  std::vector<int> offsets{0};
  std::vector<int> nbr;
  std::vector<double> weight;

  int n_units() const { return static_cast<int>(size.size()); }
};

LevelGraph node_level(const Graph& g) {
  LevelGraph lg;
  const int n = g.n_nodes();
  lg.size.assign(static_cast<std::size_t>(n), 1.0);
  lg.degree.resize(static_cast<std::size_t>(n));
  lg.offsets.resize(static_cast<std::size_t>(n) + 1);
  lg.offsets[0] = 0;
  for (int i = 0; i < n; ++i) {
    const auto nb = g.neighbors(i);
    lg.degree[static_cast<std::size_t>(i)] = static_cast<double>(nb.size());
    lg.nbr.insert(lg.nbr.end(), nb.begin(), nb.end());
    lg.offsets[static_cast<std::size_t>(i) + 1] = static_cast<int>(lg.nbr.size());
  }
  lg.ext = lg.degree;
  lg.weight.assign(lg.nbr.size(), 1.0);
  return lg;
}

// Collapses units into their (contiguous, 0..m-1) modules.
LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& module_of, int n_modules) {
  LevelGraph out;
  const auto m = static_cast<std::size_t>(n_modules);
  out.size.assign(m, 0.0);
  out.degree.assign(m, 0.0);
  out.ext.assign(m, 0.0);
  std::vector<std::vector<int>> members(m);
  for (int u = 0; u < lg.n_units(); ++u) {
    const auto mod = static_cast<std::size_t>(module_of[static_cast<std::size_t>(u)]);
    members[mod].push_back(u);
    out.size[mod] += lg.size[static_cast<std::size_t>(u)];
    out.degree[mod] += lg.degree[static_cast<std::size_t>(u)];
  }
  std::vector<double> acc(m, 0.0);
  std::vector<int> touched;
  out.offsets.assign(m + 1, 0);
  for (std::size_t a = 0; a < m; ++a) {
    touched.clear();
    for (int u : members[a]) {
      for (int k = lg.offsets[static_cast<std::size_t>(u)]; k < lg.offsets[static_cast<std::size_t>(u) + 1]; ++k) {
        const auto b = static_cast<std::size_t>(module_of[static_cast<std::size_t>(lg.nbr[static_cast<std::size_t>(k)])]);
        if (b == a) continue;
        if (acc[b] == 0.0) touched.push_back(static_cast<int>(b));
        acc[b] += lg.weight[static_cast<std::size_t>(k)];
      }
    }
    std::sort(touched.begin(), touched.end());
    double ext = 0.0;
    for (int b : touched) {
      out.nbr.push_back(b);
      out.weight.push_back(acc[static_cast<std::size_t>(b)]);
      ext += acc[static_cast<std::size_t>(b)];
      acc[static_cast<std::size_t>(b)] = 0.0;
    }
    out.ext[a] = ext;
    out.offsets[a + 1] = static_cast<int>(out.nbr.size());
  }
  return out;
}

// Greedy unit moving on one level. module_of holds labels in [0, n_units)
// on entry and is left relabeled contiguously on exit. Returns module count.
class LocalMover {
 public:
  LocalMover(const FlowModel& flow, const LevelGraph& lg) : flow_(flow), lg_(lg) {}

  int run(std::vector<int>& module_of, Rng& rng) {
    const int n = lg_.n_units();
    const auto un = static_cast<std::size_t>(n);
    size_.assign(un, 0.0);
    degree_.assign(un, 0.0);
    cut_.assign(un, 0.0);
    members_.assign(un, 0);
    for (int u = 0; u < n; ++u) {
      const auto m = static_cast<std::size_t>(module_of[static_cast<std::size_t>(u)]);
      size_[m] += lg_.size[static_cast<std::size_t>(u)];
      degree_[m] += lg_.degree[static_cast<std::size_t>(u)];
      ++members_[m];
    }
    for (int u = 0; u < n; ++u) {
      const auto m = module_of[static_cast<std::size_t>(u)];
      double c = lg_.ext[static_cast<std::size_t>(u)];
      for (int k = lg_.offsets[static_cast<std::size_t>(u)]; k < lg_.offsets[static_cast<std::size_t>(u) + 1]; ++k) {
        if (module_of[static_cast<std::size_t>(lg_.nbr[static_cast<std::size_t>(k)])] == m) c -= lg_.weight[static_cast<std::size_t>(k)];
      }
      cut_[static_cast<std::size_t>(m)] += c;
    }
    free_.clear();
    for (int m = n - 1; m >= 0; --m) {
      if (members_[static_cast<std::size_t>(m)] == 0) free_.push_back(m);
    }

    std::vector<int> order(un);
    std::iota(order.begin(), order.end(), 0);
    link_.assign(un, 0.0);
    mark_.assign(un, 0);

    for (int pass = 0; pass < kMaxPasses; ++pass) {
      recompute_sums();
      std::shuffle(order.begin(), order.end(), rng);
      int moves = 0;
      for (int u : order) {
        if (try_move(u, module_of)) ++moves;
      }
      if (moves == 0) break;
    }

    // Relabel contiguously in order of first appearance.
    std::vector<int> remap(un, -1);
    int next = 0;
    for (auto& m : module_of) {
      auto& r = remap[static_cast<std::size_t>(m)];
      if (r < 0) r = next++;
      m = r;
    }
    return next;
  }

 private:
  struct Terms {
    double exit;
    double plogp_exit;
    double plogp_exit_flow;
  };

  Terms module_terms(double size, double degree, double cut) const {
    if (size <= 0.0) return {0.0, 0.0, 0.0};
    const double q = flow_.exit_flow(size, cut);
    const double p = flow_.module_flow(size, degree);
    return {q, plogp(q), plogp(q + p)};
  }

  void recompute_sums() {
    sum_exit_ = sum_plogp_exit_ = sum_plogp_exit_flow_ = 0.0;
    for (std::size_t m = 0; m < size_.size(); ++m) {
      if (members_[m] == 0) continue;
      const Terms t = module_terms(size_[m], degree_[m], cut_[m]);
      sum_exit_ += t.exit;
      sum_plogp_exit_ += t.plogp_exit;
      sum_plogp_exit_flow_ += t.plogp_exit_flow;
    }
  }

  // Codelength change (without the constant node term) when replacing the
  // terms of modules old_a/old_b by new_a/new_b.
  double delta(const Terms& old_a, const Terms& old_b, const Terms& new_a, const Terms& new_b) const {
    const double exit = sum_exit_ - old_a.exit - old_b.exit + new_a.exit + new_b.exit;
    const double pe = sum_plogp_exit_ - old_a.plogp_exit - old_b.plogp_exit + new_a.plogp_exit + new_b.plogp_exit;
    const double pf = sum_plogp_exit_flow_ - old_a.plogp_exit_flow - old_b.plogp_exit_flow +
                      new_a.plogp_exit_flow + new_b.plogp_exit_flow;
    const double before = plogp(sum_exit_) - 2.0 * sum_plogp_exit_ + sum_plogp_exit_flow_;
    return (plogp(exit) - 2.0 * pe + pf) - before;
  }

  bool try_move(int u, std::vector<int>& module_of) {
    const auto uu = static_cast<std::size_t>(u);
    const int from = module_of[uu];
    const auto f = static_cast<std::size_t>(from);
    const double usize = lg_.size[uu];
    const double udeg = lg_.degree[uu];
    const double uext = lg_.ext[uu];

    touched_.clear();
    for (int k = lg_.offsets[uu]; k < lg_.offsets[uu + 1]; ++k) {
      const int m = module_of[static_cast<std::size_t>(lg_.nbr[static_cast<std::size_t>(k)])];
      if (!mark_[static_cast<std::size_t>(m)]) {
        mark_[static_cast<std::size_t>(m)] = 1;
        touched_.push_back(m);
      }
      link_[static_cast<std::size_t>(m)] += lg_.weight[static_cast<std::size_t>(k)];
    }
    const double link_from = link_[f];

    const Terms old_from = module_terms(size_[f], degree_[f], cut_[f]);
    const double from_size = size_[f] - usize;
    const double from_degree = degree_[f] - udeg;
    const double from_cut = cut_[f] - uext + 2.0 * link_from;
    const Terms new_from = module_terms(from_size, from_degree, from_cut);

    int best = -1;
    double best_delta = -kMinImprovement;
    double best_cut = 0.0;
    for (int m : touched_) {
      if (m == from) continue;
      const auto mm = static_cast<std::size_t>(m);
      const Terms old_to = module_terms(size_[mm], degree_[mm], cut_[mm]);
      const double to_cut = cut_[mm] + uext - 2.0 * link_[mm];
      const Terms new_to = module_terms(size_[mm] + usize, degree_[mm] + udeg, to_cut);
      const double d = delta(old_from, old_to, new_from, new_to);
      if (d < best_delta) {
        best_delta = d;
        best = m;
        best_cut = to_cut;
      }
    }
    if (members_[f] > 1 && !free_.empty()) {
      const Terms none{0.0, 0.0, 0.0};
      const Terms new_to = module_terms(usize, udeg, uext);
      const double d = delta(old_from, none, new_from, new_to);
      if (d < best_delta) {
        best_delta = d;
        best = free_.back();
        best_cut = uext;
      }
    }

    for (int m : touched_) {
      link_[static_cast<std::size_t>(m)] = 0.0;
      mark_[static_cast<std::size_t>(m)] = 0;
    }
    if (best < 0) return false;

    const auto b = static_cast<std::size_t>(best);
    if (members_[b] == 0) free_.pop_back();
    const Terms old_to = module_terms(size_[b], degree_[b], cut_[b]);
    size_[f] = from_size;
    degree_[f] = from_degree;
    cut_[f] = from_cut;
    --members_[f];
    size_[b] += usize;
    degree_[b] += udeg;
    cut_[b] = best_cut;
    ++members_[b];
    const Terms new_to = module_terms(size_[b], degree_[b], cut_[b]);
    sum_exit_ += new_from.exit + new_to.exit - old_from.exit - old_to.exit;
    sum_plogp_exit_ += new_from.plogp_exit + new_to.plogp_exit - old_from.plogp_exit - old_to.plogp_exit;
    sum_plogp_exit_flow_ += new_from.plogp_exit_flow + new_to.plogp_exit_flow - old_from.plogp_exit_flow -
                            old_to.plogp_exit_flow;
    if (members_[f] == 0) free_.push_back(from);
    module_of[uu] = best;
    return true;
  }

  const FlowModel& flow_;
  const LevelGraph& lg_;
  std::vector<double> size_, degree_, cut_;
  std::vector<int> members_;
  std::vector<int> free_;
  std::vector<double> link_;
  std::vector<char> mark_;
  std::vector<int> touched_;
  double sum_exit_ = 0.0;
  double sum_plogp_exit_ = 0.0;
  double sum_plogp_exit_flow_ = 0.0;
};

double codelength_from_stats(const FlowModel& flow, const std::vector<double>& size,
                             const std::vector<double>& degree, const std::vector<double>& cut) {
  double sum_exit = 0.0;
  double sum_plogp_exit = 0.0;
  double sum_plogp_exit_flow = 0.0;
  for (std::size_t m = 0; m < size.size(); ++m) {
    if (size[m] <= 0.0) continue;
    const double q = flow.exit_flow(size[m], cut[m]);
    const double p = flow.module_flow(size[m], degree[m]);
    sum_exit += q;
    sum_plogp_exit += plogp(q);
    sum_plogp_exit_flow += plogp(q + p);
  }
  return plogp(sum_exit) - 2.0 * sum_plogp_exit - flow.node_term + sum_plogp_exit_flow;
}

double codelength_checked(const Graph& graph, const FlowModel& flow, const std::vector<int>& labels, int n_modules) {
  const auto m = static_cast<std::size_t>(n_modules);
  std::vector<double> size(m, 0.0), degree(m, 0.0), cut(m, 0.0);
  for (int i = 0; i < graph.n_nodes(); ++i) {
    const auto a = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
    size[a] += 1.0;
    degree[a] += graph.degree(i);
    for (int j : graph.neighbors(i)) {
      if (labels[static_cast<std::size_t>(j)] != labels[static_cast<std::size_t>(i)]) cut[a] += 1.0;
    }
  }
  return codelength_from_stats(flow, size, degree, cut);
}

void require_flow(const Graph& graph) {
  if (graph.n_nodes() > 1 && total_flow_weight(graph) <= 0.0) {
    throw NumericError("undefined flow: graph has no links and no prior weight");
  }
}

// One seeded optimization run.
std::vector<int> optimize_once(const Graph& graph, const FlowModel& flow, const LevelGraph& nodes, Rng& rng,
                               double& best_length) {
  const auto n = static_cast<std::size_t>(graph.n_nodes());
  std::vector<int> assignment(n);
  std::iota(assignment.begin(), assignment.end(), 0);
  std::vector<int> best = assignment;
  best_length = std::numeric_limits<double>::infinity();

  for (int round = 0; round < kMaxTuneRounds; ++round) {
    // Node level, starting from the current assignment.
    LocalMover node_mover(flow, nodes);
    int n_modules = node_mover.run(assignment, rng);

    // Repeated aggregation until modules stop merging.
    LevelGraph level = aggregate(nodes, assignment, n_modules);
    while (level.n_units() > 1) {
      std::vector<int> unit_module(static_cast<std::size_t>(level.n_units()));
      std::iota(unit_module.begin(), unit_module.end(), 0);
      LocalMover mover(flow, level);
      const int merged = mover.run(unit_module, rng);
      if (merged == level.n_units()) break;
      for (auto& a : assignment) a = unit_module[static_cast<std::size_t>(a)];
      level = aggregate(level, unit_module, merged);
      n_modules = merged;
    }

    const double length = codelength_checked(graph, flow, assignment, n_modules);
    if (length < best_length - kMinImprovement) {
      best_length = length;
      best = assignment;
    } else {
      break;
    }
  }
  return best;
}

}  // namespace

std::vector<double> visit_rates(const Graph& graph) {
  const int n = graph.n_nodes();
  if (n == 1) return {1.0};
  require_flow(graph);
  const double total = total_flow_weight(graph);
  const double prior_degree = graph.prior_weight() * (n - 1.0);
  std::vector<double> rates(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rates[static_cast<std::size_t>(i)] = (graph.degree(i) + prior_degree) / total;
  return rates;
}

double codelength(const Graph& graph, const Partition& partition) {
  if (partition.size() != static_cast<std::size_t>(graph.n_nodes())) {
    throw InvalidArgument("invalid partition: size does not match the node count");
  }
  if (graph.n_nodes() <= 1) return 0.0;
  require_flow(graph);
  const FlowModel flow(graph);
  return codelength_checked(graph, flow, partition.assignment(), partition.n_modules());
}

double one_module_codelength(const Graph& graph) {
  if (graph.n_nodes() <= 1) return 0.0;
  require_flow(graph);
  return -FlowModel(graph).node_term;
}

CodelengthReport search(const Graph& graph, std::uint64_t seed, int restarts) {
  if (restarts < 1) throw InvalidArgument("restarts must be at least 1");
  const auto n = static_cast<std::size_t>(graph.n_nodes());
  CodelengthReport report;
  report.partition = Partition::one_module(n);
  if (n <= 1) return report;
  require_flow(graph);

  const FlowModel flow(graph);
  report.d_one = -flow.node_term;
  report.d_star = report.d_one;
  const LevelGraph nodes = node_level(graph);

  std::vector<int> best;
  double best_length = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    double length = 0.0;
    auto assignment = optimize_once(graph, flow, nodes, rng, length);
    if (length < best_length - kMinImprovement) {
      best_length = length;
      best = std::move(assignment);
    }
  }
  if (best_length < report.d_one - kMinImprovement) {
    report.partition = Partition::canonical(best);
    report.d_star = codelength_checked(graph, flow, report.partition.assignment(), report.partition.n_modules());
  }
  report.compression = report.d_one > 0.0 ? (report.d_one - report.d_star) / report.d_one : 0.0;
  return report;
}

std::vector<double> make_tau_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("invalid tau grid");
  if (lo < 0.0 || hi >= 1.0) throw InvalidArgument("tau grid values must lie in [0, 1)");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) {
    // Round to 12 decimals so 0.07 prints and compares as 0.07.
    const double v = lo + static_cast<double>(k) * step;
    grid.push_back(std::round(v * 1e12) / 1e12);
  }
  return grid;
}

SweepResult sweep(const CorrelationMatrix& corr, const SweepOptions& options) {
  const auto& grid = options.tau_grid;
  if (grid.empty()) throw InvalidArgument("tau grid must not be empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0 && grid[k] < 1.0)) throw InvalidArgument("tau grid values must lie in [0, 1)");
    if (k > 0 && grid[k] < grid[k - 1]) throw InvalidArgument("tau grid must be sorted");
  }
  SweepResult result;
  result.records.resize(grid.size());
  parallel_for(grid.size(), options.threads, [&](std::size_t k) {
    const Graph g = apply_prior(threshold_graph(corr, grid[k], options.sign));
    CodelengthReport rep = search(g, derive_seed(options.seed, k), options.restarts);
    rep.threshold = grid[k];
    result.records[k] = std::move(rep);
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < result.records.size(); ++k) {
    if (result.records[k].compression > result.records[best].compression) best = k;
  }
  result.best_index = best;
  result.tau_star = result.records[best].threshold;
  result.best_partition = result.records[best].partition;
  return result;
}

}  // namespace mdlcorr
