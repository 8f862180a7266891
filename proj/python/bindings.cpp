#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdlcorr/analytic.hpp"
#include "mdlcorr/errors.hpp"
#include "mdlcorr/evalmetrics.hpp"
#include "mdlcorr/experiments.hpp"
#include "mdlcorr/hclust.hpp"
#include "mdlcorr/io.hpp"
#include "mdlcorr/mapeq.hpp"
#include "mdlcorr/netbuild.hpp"
#include "mdlcorr/synthgen.hpp"

namespace py = pybind11;
using namespace mdlcorr;

namespace {

// Python callers pass plain label lists; canonical() accepts any labeling.
Partition to_partition(const std::vector<int>& labels) { return Partition::canonical(labels); }

PipelineOptions pipeline_options(const std::vector<double>& tau_grid, int restarts, int q_max, int threads) {
  PipelineOptions o;
  if (!tau_grid.empty()) o.tau_grid = tau_grid;
  o.restarts = restarts;
  o.q_max = q_max;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_mdlcorr, m) {
  m.doc() = "Correlation-network module detection with the regularized map equation";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<NumericError>(m, "NumericError", error.ptr());
  py::register_exception<DegenerateFeature>(m, "DegenerateFeature", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::enum_<SignMode>(m, "SignMode")
      .value("positive", SignMode::Positive)
      .value("absolute", SignMode::Absolute);

  py::enum_<Method>(m, "Method").value("mapeq", Method::MapEq).value("hclust", Method::Hclust);

  py::class_<BlockSpec>(m, "BlockSpec")
      .def(py::init([](int n_features, int n_clusters, double rho, int n_samples) {
             BlockSpec s{n_features, n_clusters, rho, n_samples};
             s.validate();
             return s;
           }),
           py::arg("n_features"), py::arg("n_clusters"), py::arg("rho"), py::arg("n_samples"))
      .def_readwrite("n_features", &BlockSpec::n_features)
      .def_readwrite("n_clusters", &BlockSpec::n_clusters)
      .def_readwrite("rho", &BlockSpec::rho)
      .def_readwrite("n_samples", &BlockSpec::n_samples);

  m.def(
      "sample_data",
      [](const BlockSpec& spec, std::uint64_t seed) {
        const DataMatrix d = sample_data(spec, seed);
        return py::make_tuple(d.values, d.feature_names);
      },
      py::arg("spec"), py::arg("seed"), "Returns (L x N matrix, feature names).");
  m.def(
      "planted_labels", [](const BlockSpec& spec) { return planted_partition(spec).assignment(); }, py::arg("spec"));
  m.def(
      "block_covariance", [](const BlockSpec& spec) { return build_block_covariance(spec).covariance; },
      py::arg("spec"));
  m.def(
      "sample_correlation",
      [](const Eigen::MatrixXd& values) { return sample_correlation(DataMatrix(values)).values(); },
      py::arg("values"));

  m.def("corr_density", &corr_density, py::arg("r"), py::arg("rho"), py::arg("n_samples"));
  m.def("null_density", &null_density, py::arg("r"), py::arg("n_samples"));
  m.def(
      "intersection_threshold",
      [](double rho, int n_samples, int n_clusters, int n_features, bool numeric) {
        const CorrDistParams p{rho, n_samples, n_clusters, n_features};
        return numeric ? intersection_threshold_numeric(p) : intersection_threshold(p);
      },
      py::arg("rho"), py::arg("n_samples"), py::arg("n_clusters"), py::arg("n_features"), py::arg("numeric") = false);
  m.def(
      "link_probabilities",
      [](double rho, int n_samples, int n_clusters, int n_features, double epsilon) {
        const LinkProbabilities lp = link_probabilities({rho, n_samples, n_clusters, n_features}, epsilon);
        py::dict out;
        out["p_in"] = lp.p_in;
        out["p_out"] = lp.p_out;
        out["threshold"] = lp.threshold_used;
        out["ratio"] = lp.ratio();
        return out;
      },
      py::arg("rho"), py::arg("n_samples"), py::arg("n_clusters"), py::arg("n_features"), py::arg("epsilon") = 0.0);

  m.def("default_prior_weight", &default_prior_weight, py::arg("n_nodes"));
  m.def(
      "threshold_edges",
      [](const Eigen::MatrixXd& corr, double tau, SignMode mode) {
        const Graph g = threshold_graph(CorrelationMatrix(corr), tau, mode);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < g.n_nodes(); ++i) {
          for (int j = i + 1; j < g.n_nodes(); ++j) {
            if (g.has_edge(i, j)) edges.emplace_back(i, j);
          }
        }
        return edges;
      },
      py::arg("corr"), py::arg("tau"), py::arg("mode") = SignMode::Positive);
  m.def(
      "codelength",
      [](int n_nodes, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& labels,
         std::optional<double> prior_weight) {
        const Graph g(n_nodes, edges, prior_weight.value_or(default_prior_weight(n_nodes)));
        return codelength(g, to_partition(labels));
      },
      py::arg("n_nodes"), py::arg("edges"), py::arg("labels"), py::arg("prior_weight") = py::none());
  m.def(
      "search",
      [](int n_nodes, const std::vector<std::pair<int, int>>& edges, std::uint64_t seed, int restarts,
         std::optional<double> prior_weight) {
        const Graph g(n_nodes, edges, prior_weight.value_or(default_prior_weight(n_nodes)));
        const CodelengthReport r = search(g, seed, restarts);
        return py::make_tuple(r.partition.assignment(), r.d_one, r.d_star);
      },
      py::arg("n_nodes"), py::arg("edges"), py::arg("seed"), py::arg("restarts") = 10,
      py::arg("prior_weight") = py::none(), "Returns (labels, one-module codelength, best codelength).");
  m.def("make_tau_grid", &make_tau_grid, py::arg("lo") = 0.0, py::arg("hi") = 0.95, py::arg("step") = 0.01);
  m.def(
      "sweep",
      [](const Eigen::MatrixXd& corr, std::uint64_t seed, std::vector<double> tau_grid, int restarts, int threads,
         SignMode mode) {
        SweepOptions o;
        o.tau_grid = tau_grid.empty() ? make_tau_grid() : std::move(tau_grid);
        o.seed = seed;
        o.restarts = restarts;
        o.threads = threads;
        o.sign = mode;
        const SweepResult r = sweep(CorrelationMatrix(corr), o);
        py::dict out;
        std::vector<double> compression;
        std::vector<int> modules;
        for (const auto& rec : r.records) {
          compression.push_back(rec.compression);
          modules.push_back(rec.partition.n_modules());
        }
        out["tau"] = o.tau_grid;
        out["compression"] = compression;
        out["n_modules"] = modules;
        out["tau_star"] = r.tau_star;
        out["labels"] = r.best_partition.assignment();
        return out;
      },
      py::arg("corr"), py::arg("seed"), py::arg("tau_grid") = std::vector<double>{}, py::arg("restarts") = 10,
      py::arg("threads") = 1, py::arg("mode") = SignMode::Positive);

  m.def("default_q_max", &default_q_max, py::arg("n_features"));
  m.def(
      "hierarchical_clustering",
      [](const Eigen::MatrixXd& values, int q_max) {
        const DataMatrix d(values);
        const ElbowCut cut = hierarchical_clustering(d, q_max > 0 ? q_max : default_q_max(static_cast<int>(d.n_features())));
        py::dict out;
        out["labels"] = cut.partition.assignment();
        out["q_star"] = cut.q_star;
        out["wcss"] = cut.curve.wcss;
        out["slope_ratio"] = cut.slope_ratio;
        out["prominence"] = cut.prominence;
        out["weak_elbow"] = cut.weak_elbow;
        return out;
      },
      py::arg("values"), py::arg("q_max") = 0);
  m.def(
      "linkage",
      [](const Eigen::MatrixXd& distance) {
        std::vector<std::tuple<int, int, double, int>> rows;
        for (const Merge& mg : complete_linkage(distance).merges) rows.emplace_back(mg.a, mg.b, mg.height, mg.size);
        return rows;
      },
      py::arg("distance"), "Complete-linkage merges as (a, b, height, size).");

  m.def(
      "ami", [](const std::vector<int>& u, const std::vector<int>& v) { return ami(to_partition(u), to_partition(v)); },
      py::arg("u"), py::arg("v"));
  m.def(
      "match_clusters_jaccard",
      [](const std::vector<int>& ref, const std::vector<int>& cand) {
        return match_clusters_jaccard(to_partition(ref), to_partition(cand));
      },
      py::arg("reference"), py::arg("candidate"));

  m.def(
      "infer_partition",
      [](const Eigen::MatrixXd& values, Method method, std::uint64_t seed, std::vector<double> tau_grid, int restarts,
         int q_max, int threads) {
        const Inference inf =
            infer_partition(DataMatrix(values), method, pipeline_options(tau_grid, restarts, q_max, threads), seed);
        py::dict out;
        out["labels"] = inf.partition.assignment();
        out["tau_star"] = inf.tau_star;
        out["compression"] = inf.compression;
        out["weak_elbow"] = inf.weak_elbow;
        return out;
      },
      py::arg("values"), py::arg("method"), py::arg("seed"), py::arg("tau_grid") = std::vector<double>{},
      py::arg("restarts") = 10, py::arg("q_max") = 0, py::arg("threads") = 1);
  m.def(
      "ami_vs_samples",
      [](const BlockSpec& base, const std::vector<int>& l_values, Method method, int runs, std::uint64_t seed,
         std::vector<double> tau_grid, int restarts, int threads) {
        std::vector<std::tuple<int, double, double>> rows;
        for (const auto& p :
             ami_vs_samples(base, l_values, method, runs, pipeline_options(tau_grid, restarts, 0, threads), seed)) {
          rows.emplace_back(p.n_samples, p.mean_ami, p.stddev_ami);
        }
        return rows;
      },
      py::arg("base"), py::arg("l_values"), py::arg("method"), py::arg("runs"), py::arg("seed"),
      py::arg("tau_grid") = std::vector<double>{}, py::arg("restarts") = 10, py::arg("threads") = 1,
      "Returns (L, mean AMI, stddev AMI) rows.");
  m.def(
      "detectability_map",
      [](const std::vector<int>& l_values, const std::vector<double>& rho_values, int n_clusters, int n_features,
         Method method, int runs, std::uint64_t seed, std::vector<double> tau_grid, int restarts, int threads,
         double epsilon) {
        const DetectabilityGrid g = detectability_map(l_values, rho_values, n_clusters, n_features, method, runs,
                                                      pipeline_options(tau_grid, restarts, 0, threads), seed, epsilon);
        py::dict out;
        out["mean_ami"] = g.mean_ami;
        out["stddev_ami"] = g.stddev_ami;
        out["link_ratio"] = g.link_ratio;
        out["link_ratio_offset"] = g.link_ratio_offset;
        out["boundary"] = boundary_per_row(g);
        return out;
      },
      py::arg("l_values"), py::arg("rho_values"), py::arg("n_clusters"), py::arg("n_features"), py::arg("method"),
      py::arg("runs"), py::arg("seed"), py::arg("tau_grid") = std::vector<double>{}, py::arg("restarts") = 10,
      py::arg("threads") = 1, py::arg("epsilon") = 0.05);
  m.def(
      "subsample_robustness",
      [](const Eigen::MatrixXd& values, Method method, std::uint64_t seed, std::vector<double> levels, int repeats,
         double stability_threshold, std::vector<double> tau_grid, int restarts, int threads) {
        RobustnessOptions r;
        r.levels = std::move(levels);
        r.repeats = repeats;
        r.stability_threshold = stability_threshold;
        const RobustnessReport rep = subsample_robustness(DataMatrix(values), r, method,
                                                          pipeline_options(tau_grid, restarts, 0, threads), seed);
        py::dict out;
        out["levels"] = rep.levels;
        out["labels"] = rep.full_partition.assignment();
        out["stability"] = rep.stability;
        out["ami"] = rep.ami;
        out["unstable_items"] = rep.unstable_items;
        return out;
      },
      py::arg("values"), py::arg("method"), py::arg("seed"),
      py::arg("levels") = std::vector<double>{0.8, 0.6, 0.4, 0.2}, py::arg("repeats") = 100,
      py::arg("stability_threshold") = 0.8, py::arg("tau_grid") = std::vector<double>{}, py::arg("restarts") = 10,
      py::arg("threads") = 1);

  m.def(
      "read_matrix",
      [](const std::string& path, bool features_as_rows) {
        IngestOptions o;
        if (features_as_rows) o.orientation = Orientation::FeaturesAsRows;
        const DataMatrix d = ingest_matrix(path, o);
        return py::make_tuple(d.values, d.feature_names);
      },
      py::arg("path"), py::arg("features_as_rows") = false);
}
