#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdlcorr/hclust.hpp"
#include "mdlcorr/mapeq.hpp"
#include "mdlcorr/synthgen.hpp"
#include "mdlcorr/types.hpp"

namespace mdlcorr {

enum class Method {
  MapEq,   ///< threshold sweep + regularized map equation, partition at tau*
  Hclust,  ///< complete linkage + WCSS elbow
};

Method parse_method(const std::string& name);
std::string method_name(Method method);

struct PipelineOptions {
  std::vector<double> tau_grid = make_tau_grid();
  int restarts = 10;
  SignMode sign = SignMode::Positive;
  int q_max = 0;  ///< 0 selects default_q_max(N)
  int threads = 1;
};

struct Inference {
  Partition partition;
  double tau_star = 0.0;     ///< mapeq only
  double compression = 0.0;  ///< mapeq only
  bool weak_elbow = false;   ///< hclust only
};

/// Runs one method end to end on a data matrix.
Inference infer_partition(const DataMatrix& data, Method method, const PipelineOptions& options, std::uint64_t seed);

struct AmiCurvePoint {
  int n_samples = 0;
  double mean_ami = 0.0;
  double stddev_ami = 0.0;
  double mean_modules = 0.0;
};

/// For each L: sample planted data `runs` times, infer, score AMI against the
/// planted partition. base.n_samples is ignored.
std::vector<AmiCurvePoint> ami_vs_samples(const BlockSpec& base, const std::vector<int>& l_values, Method method,
                                          int runs, const PipelineOptions& options, std::uint64_t seed);

inline constexpr double kDetectableAmi = 0.95;

struct DetectabilityGrid {
  std::vector<int> l_values;
  std::vector<double> rho_values;
  int runs_per_cell = 0;
  /// Indexed [rho][L].
  std::vector<std::vector<double>> mean_ami;
  std::vector<std::vector<double>> stddev_ami;
  /// Analytic p_out/p_in at r_i (and at r_i + epsilon); NaN where undefined.
  std::vector<std::vector<double>> link_ratio;
  std::vector<std::vector<double>> link_ratio_offset;
  double epsilon = 0.0;
  /// Per rho row, the smallest L with mean AMI >= 0.95 (rows without one are
  /// omitted).
  struct Cell {
    int n_samples;
    double rho;
  };
  std::vector<Cell> boundary;
};

DetectabilityGrid detectability_map(const std::vector<int>& l_grid, const std::vector<double>& rho_grid, int n_clusters,
                                    int n_features, Method method, int runs, const PipelineOptions& options,
                                    std::uint64_t seed, double epsilon = 0.05);

/// Smallest L per rho row whose mean AMI reaches `level`; -1 where none does.
std::vector<int> boundary_per_row(const DetectabilityGrid& grid, double level = kDetectableAmi);

struct SchematicCase {
  std::string name;
  int n_clusters = 0;
  int cluster_size = 0;
  double rho = 0.0;
  int n_samples = 0;
  double ami = 0.0;
  int n_modules = 0;
  double tau_star = 0.0;
};

/// Two 50-node clusters and ten 5-node clusters, run through the map
/// equation pipeline.
std::vector<SchematicCase> schematic_cases(std::uint64_t seed, const PipelineOptions& options, double rho = 0.3,
                                           int n_samples = 100);

struct RobustnessOptions {
  std::vector<double> levels{0.8, 0.6, 0.4, 0.2};
  int repeats = 100;
  double stability_threshold = 0.8;
};

struct RobustnessReport {
  std::vector<double> levels;
  int repeats = 0;
  double stability_threshold = 0.0;
  Partition full_partition;
  /// [level][item]: repeats in which the item matched its full-data cluster.
  std::vector<std::vector<int>> stability;
  /// [level][repeat]: AMI between subsampled and full-data partitions.
  std::vector<std::vector<double>> ami;
  /// [level]: items matched in fewer than threshold * repeats subsamples.
  std::vector<std::vector<int>> unstable_items;
};

/// Repeats the analysis on row subsamples drawn without replacement and
/// tracks per-item stability (Jaccard matching) and AMI to the full data.
/// Throws InvalidArgument when a level leaves fewer than 4 samples.
RobustnessReport subsample_robustness(const DataMatrix& data, const RobustnessOptions& robustness, Method method,
                                      const PipelineOptions& options, std::uint64_t seed);

}  // namespace mdlcorr
