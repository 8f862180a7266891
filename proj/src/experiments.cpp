#include "mdlcorr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mdlcorr/analytic.hpp"
#include "mdlcorr/errors.hpp"
#include "mdlcorr/evalmetrics.hpp"
#include "mdlcorr/parallel.hpp"

namespace mdlcorr {

namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

// Fixed left-to-right summation keeps results independent of scheduling.
Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

double analytic_ratio(double rho, int n_samples, int n_clusters, int n_features, double epsilon) {
  try {
    const CorrDistParams p{rho, n_samples, n_clusters, n_features};
    return link_probabilities(p, epsilon).ratio();
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

struct PlantedRun {
  double ami;
  int n_modules;
};

PlantedRun planted_run(const BlockSpec& spec, Method method, const PipelineOptions& options, std::uint64_t seed) {
  const DataMatrix data = sample_data(spec, seed);
  PipelineOptions inner = options;
  inner.threads = 1;
  const Inference inf = infer_partition(data, method, inner, derive_seed(seed, 0xA11CE));
  return {ami(planted_partition(spec), inf.partition), inf.partition.n_modules()};
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "mapeq" || name == "mapeq-sweep" || name == "regmapeq") return Method::MapEq;
  if (name == "hclust" || name == "hierarchical") return Method::Hclust;
  throw InvalidArgument("unknown method '" + name + "' (expected 'mapeq' or 'hclust')");
}

std::string method_name(Method method) { return method == Method::MapEq ? "mapeq" : "hclust"; }

Inference infer_partition(const DataMatrix& data, Method method, const PipelineOptions& options, std::uint64_t seed) {
  Inference out;
  if (method == Method::MapEq) {
    const CorrelationMatrix corr = sample_correlation(data);
    SweepOptions so;
    so.tau_grid = options.tau_grid;
    so.seed = seed;
    so.restarts = options.restarts;
    so.threads = options.threads;
    so.sign = options.sign;
    const SweepResult res = sweep(corr, so);
    out.partition = res.best_partition;
    out.tau_star = res.tau_star;
    out.compression = res.records[res.best_index].compression;
    return out;
  }
  const int n = static_cast<int>(data.n_features());
  const int q_max = options.q_max > 0 ? std::min(options.q_max, n) : default_q_max(n);
  const ElbowCut cut = hierarchical_clustering(data, q_max);
  out.partition = cut.partition;
  out.weak_elbow = cut.weak_elbow;
  out.tau_star = std::numeric_limits<double>::quiet_NaN();
  out.compression = std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::vector<AmiCurvePoint> ami_vs_samples(const BlockSpec& base, const std::vector<int>& l_values, Method method,
                                          int runs, const PipelineOptions& options, std::uint64_t seed) {
  if (runs < 1) throw InvalidArgument("runs must be at least 1");
  if (l_values.empty()) throw InvalidArgument("sample-count grid must not be empty");
  const std::size_t n_tasks = l_values.size() * static_cast<std::size_t>(runs);
  std::vector<PlantedRun> results(n_tasks);
  parallel_for(n_tasks, options.threads, [&](std::size_t t) {
    const std::size_t li = t / static_cast<std::size_t>(runs);
    BlockSpec spec = base;
    spec.n_samples = l_values[li];
    results[t] = planted_run(spec, method, options, derive_seed(seed, t));
  });
  std::vector<AmiCurvePoint> curve;
  for (std::size_t li = 0; li < l_values.size(); ++li) {
    std::vector<double> amis;
    double modules = 0.0;
    for (int r = 0; r < runs; ++r) {
      const auto& res = results[li * static_cast<std::size_t>(runs) + static_cast<std::size_t>(r)];
      amis.push_back(res.ami);
      modules += res.n_modules;
    }
    const Moments m = moments(amis);
    curve.push_back({l_values[li], m.mean, m.stddev, modules / runs});
  }
  return curve;
}

DetectabilityGrid detectability_map(const std::vector<int>& l_grid, const std::vector<double>& rho_grid, int n_clusters,
                                    int n_features, Method method, int runs, const PipelineOptions& options,
                                    std::uint64_t seed, double epsilon) {
  if (l_grid.empty() || rho_grid.empty()) throw InvalidArgument("detectability grids must not be empty");
  if (runs < 1) throw InvalidArgument("runs must be at least 1");
  const std::size_t nl = l_grid.size();
  const std::size_t nr = rho_grid.size();
  const auto uruns = static_cast<std::size_t>(runs);
  for (double rho : rho_grid) BlockSpec{n_features, n_clusters, rho, 4}.validate();
  for (int l : l_grid) {
    if (l < 4) throw InvalidArgument("sample counts must be at least 4");
  }

  std::vector<PlantedRun> results(nl * nr * uruns);
  parallel_for(results.size(), options.threads, [&](std::size_t t) {
    const std::size_t cell = t / uruns;
    const BlockSpec spec{n_features, n_clusters, rho_grid[cell / nl], l_grid[cell % nl]};
    results[t] = planted_run(spec, method, options, derive_seed(seed, t));
  });

  DetectabilityGrid grid;
  grid.l_values = l_grid;
  grid.rho_values = rho_grid;
  grid.runs_per_cell = runs;
  grid.epsilon = epsilon;
  grid.mean_ami.assign(nr, std::vector<double>(nl));
  grid.stddev_ami.assign(nr, std::vector<double>(nl));
  grid.link_ratio.assign(nr, std::vector<double>(nl));
  grid.link_ratio_offset.assign(nr, std::vector<double>(nl));
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nl; ++j) {
      std::vector<double> amis;
      for (std::size_t r = 0; r < uruns; ++r) amis.push_back(results[(i * nl + j) * uruns + r].ami);
      const Moments m = moments(amis);
      grid.mean_ami[i][j] = m.mean;
      grid.stddev_ami[i][j] = m.stddev;
      grid.link_ratio[i][j] = analytic_ratio(rho_grid[i], l_grid[j], n_clusters, n_features, 0.0);
      grid.link_ratio_offset[i][j] = analytic_ratio(rho_grid[i], l_grid[j], n_clusters, n_features, epsilon);
    }
  }
  const auto bounds = boundary_per_row(grid);
  for (std::size_t i = 0; i < nr; ++i) {
    if (bounds[i] >= 0) grid.boundary.push_back({bounds[i], rho_grid[i]});
  }
  return grid;
}

std::vector<int> boundary_per_row(const DetectabilityGrid& grid, double level) {
  std::vector<int> out(grid.rho_values.size(), -1);
  for (std::size_t i = 0; i < grid.rho_values.size(); ++i) {
    int best = -1;
    for (std::size_t j = 0; j < grid.l_values.size(); ++j) {
      if (grid.mean_ami[i][j] >= level && (best < 0 || grid.l_values[j] < best)) best = grid.l_values[j];
    }
    out[i] = best;
  }
  return out;
}

std::vector<SchematicCase> schematic_cases(std::uint64_t seed, const PipelineOptions& options, double rho,
                                           int n_samples) {
  struct Layout {
    const char* name;
    int clusters;
    int size;
  };
  const Layout layouts[] = {{"two-50-node-clusters", 2, 50}, {"ten-5-node-clusters", 10, 5}};
  std::vector<SchematicCase> out(2);
  parallel_for(out.size(), options.threads, [&](std::size_t k) {
    const Layout& lay = layouts[k];
    const BlockSpec spec{lay.clusters * lay.size, lay.clusters, rho, n_samples};
    const DataMatrix data = sample_data(spec, derive_seed(seed, k));
    PipelineOptions inner = options;
    inner.threads = 1;
    const Inference inf = infer_partition(data, Method::MapEq, inner, derive_seed(seed, k + 100));
    out[k] = {lay.name,
              lay.clusters,
              lay.size,
              rho,
              n_samples,
              ami(planted_partition(spec), inf.partition),
              inf.partition.n_modules(),
              inf.tau_star};
  });
  return out;
}

RobustnessReport subsample_robustness(const DataMatrix& data, const RobustnessOptions& robustness, Method method,
                                      const PipelineOptions& options, std::uint64_t seed) {
  if (robustness.repeats < 1) throw InvalidArgument("repeats must be at least 1");
  if (robustness.levels.empty()) throw InvalidArgument("at least one subsampling level is required");
  const auto total = static_cast<int>(data.n_samples());
  std::vector<int> sizes;
  for (double level : robustness.levels) {
    if (!(level > 0.0 && level <= 1.0)) throw InvalidArgument("subsampling levels must lie in (0, 1]");
    const int keep = static_cast<int>(std::lround(level * total));
    if (keep < 4) {
      throw InvalidArgument("insufficient samples: level " + std::to_string(level) + " keeps " + std::to_string(keep) +
                            " of " + std::to_string(total) + " samples (need at least 4)");
    }
    sizes.push_back(keep);
  }

  const std::uint64_t method_seed = derive_seed(seed, 0);
  PipelineOptions inner = options;
  inner.threads = 1;

  RobustnessReport rep;
  rep.levels = robustness.levels;
  rep.repeats = robustness.repeats;
  rep.stability_threshold = robustness.stability_threshold;
  rep.full_partition = infer_partition(data, method, options, method_seed).partition;

  const std::size_t nlev = sizes.size();
  const auto reps = static_cast<std::size_t>(robustness.repeats);
  std::vector<Partition> parts(nlev * reps);
  parallel_for(parts.size(), options.threads, [&](std::size_t t) {
    std::vector<int> rows(static_cast<std::size_t>(total));
    std::iota(rows.begin(), rows.end(), 0);
    Rng rng(derive_seed(seed, t + 1));
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(static_cast<std::size_t>(sizes[t / reps]));
    std::sort(rows.begin(), rows.end());
    parts[t] = infer_partition(select_samples(data, rows), method, inner, method_seed).partition;
  });

  const std::size_t n_items = rep.full_partition.size();
  rep.stability.assign(nlev, std::vector<int>(n_items, 0));
  rep.ami.assign(nlev, std::vector<double>(reps, 0.0));
  rep.unstable_items.assign(nlev, {});
  for (std::size_t l = 0; l < nlev; ++l) {
    for (std::size_t r = 0; r < reps; ++r) {
      const Partition& p = parts[l * reps + r];
      const auto flags = match_clusters_jaccard(rep.full_partition, p);
      for (std::size_t i = 0; i < n_items; ++i) rep.stability[l][i] += flags[i] ? 1 : 0;
      rep.ami[l][r] = ami(rep.full_partition, p);
    }
    const double needed = robustness.stability_threshold * static_cast<double>(reps);
    for (std::size_t i = 0; i < n_items; ++i) {
      if (static_cast<double>(rep.stability[l][i]) < needed) rep.unstable_items[l].push_back(static_cast<int>(i));
    }
  }
  return rep;
}

}  // namespace mdlcorr
