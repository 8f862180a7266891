#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdlcorr/analytic.hpp"
#include "mdlcorr/errors.hpp"
#include "mdlcorr/evalmetrics.hpp"
#include "mdlcorr/experiments.hpp"
#include "mdlcorr/hclust.hpp"
#include "mdlcorr/io.hpp"
#include "mdlcorr/mapeq.hpp"
#include "mdlcorr/netbuild.hpp"
#include "mdlcorr/parallel.hpp"
#include "mdlcorr/synthgen.hpp"

namespace mdlcorr::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Params {
  std::string config;
  std::uint64_t seed = 0;
  int threads = default_threads();
  std::string output_dir = ".";

  std::string input;
  std::string orientation = "samples";
  bool abs_correlations = false;

  double tau_min = 0.0;
  double tau_max = 0.95;
  double tau_step = 0.01;
  int restarts = 10;
  bool export_edges = false;
  int q_max = 0;

  int n_features = 0;
  int n_clusters = 1;
  std::optional<double> rho;
  std::optional<int> n_samples;
  double step = 0.001;
  std::optional<double> epsilon;
  std::vector<int> l_values;
  std::vector<double> rho_values;
  std::vector<int> q_values;
  std::vector<int> n_values;

  std::string method = "mapeq";
  int runs = 20;
  std::vector<double> levels{0.8, 0.6, 0.4, 0.2};
  int repeats = 100;
  double stability_threshold = 0.8;
};

// CLI11 consumes its argument vector back to front.
void parse_args(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> rev(args.rbegin(), args.rend());
  app.parse(rev);
}

std::unique_ptr<CLI::App> build_app(Params& p, bool strict) {
  auto app = std::make_unique<CLI::App>("Correlation clustering by description-length compression", "mdlcorr");
  app->fallthrough();
  auto* seed = app->add_option("--seed", p.seed, "Random seed (mandatory)");
  if (strict) seed->required();
  app->add_option("--config", p.config, "JSON file of option values; command-line flags take precedence")
      ->check(CLI::ExistingFile);
  app->add_option("--threads", p.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--output-dir", p.output_dir, "Directory for output tables");
  if (strict) {
    app->require_subcommand(1);
  } else {
    app->require_subcommand(0, 1);
  }

  auto req = [strict](CLI::Option* o) {
    if (strict) o->required();
    return o;
  };
  auto add_input = [&](CLI::App* s) {
    req(s->add_option("--input", p.input, "CSV/TSV data matrix")->check(CLI::ExistingFile));
    s->add_option("--orientation", p.orientation, "Rows are 'samples' or 'features'");
  };
  auto add_sweep = [&](CLI::App* s) {
    s->add_option("--tau-min", p.tau_min, "Smallest threshold");
    s->add_option("--tau-max", p.tau_max, "Largest threshold");
    s->add_option("--tau-step", p.tau_step, "Threshold step");
    s->add_option("--restarts", p.restarts, "Search restarts per threshold")->check(CLI::PositiveNumber);
    s->add_flag("--abs-correlations", p.abs_correlations, "Threshold |r| instead of r");
  };
  auto add_method = [&](CLI::App* s) {
    s->add_option("--method", p.method, "'mapeq' or 'hclust'");
    s->add_option("--q-max", p.q_max, "Largest cluster count on the WCSS curve (0: default)");
  };

  auto* synth = app->add_subcommand("synth", "Sample data from the planted block model");
  req(synth->add_option("--n-features", p.n_features, "N"));
  synth->add_option("--n-clusters", p.n_clusters, "q");
  synth->add_option("--rho", p.rho, "Within-cluster correlation");
  req(synth->add_option("--n-samples", p.n_samples, "L"));
  synth->add_option("--orientation", p.orientation, "Write rows as 'samples' or 'features'");

  auto* dens = app->add_subcommand("densities", "Tabulate the scaled correlation densities");
  req(dens->add_option("--rho", p.rho, "Within-cluster correlation"));
  req(dens->add_option("--n-samples", p.n_samples, "L"));
  req(dens->add_option("--n-clusters", p.n_clusters, "q"));
  req(dens->add_option("--n-features", p.n_features, "N"));
  dens->add_option("--step", p.step, "Grid step in r");
  dens->add_option("--epsilon", p.epsilon, "Offset above r_i for the link probabilities");

  auto* thr = app->add_subcommand("threshold", "Intersection thresholds and link probabilities over a grid");
  req(thr->add_option("--l-values", p.l_values, "Sample counts"));
  req(thr->add_option("--rho-values", p.rho_values, "Within-cluster correlations"));
  req(thr->add_option("--q-values", p.q_values, "Cluster counts"));
  req(thr->add_option("--n-values", p.n_values, "Feature counts"));
  thr->add_option("--epsilon", p.epsilon, "Offset above r_i");

  auto* cluster = app->add_subcommand("cluster", "Threshold sweep with the regularized map equation");
  add_input(cluster);
  add_sweep(cluster);
  cluster->add_flag("--export-edges", p.export_edges, "Also write the network at tau* as edges.tsv");

  auto* hc = app->add_subcommand("hclust", "Complete-linkage clustering cut at the WCSS elbow");
  add_input(hc);
  hc->add_option("--q-max", p.q_max, "Largest cluster count on the WCSS curve (0: default)");

  auto* det = app->add_subcommand("detectability", "Mean AMI over an (L, rho) grid of planted data");
  add_method(det);
  req(det->add_option("--n-features", p.n_features, "N"));
  req(det->add_option("--n-clusters", p.n_clusters, "q"));
  req(det->add_option("--l-values", p.l_values, "Sample counts"));
  req(det->add_option("--rho-values", p.rho_values, "Within-cluster correlations"));
  det->add_option("--runs", p.runs, "Runs per cell")->check(CLI::PositiveNumber);
  det->add_option("--epsilon", p.epsilon, "Offset for the second ratio column");
  add_sweep(det);

  auto* curve = app->add_subcommand("ami-curve", "Mean AMI against the planted partition as L varies");
  add_method(curve);
  req(curve->add_option("--n-features", p.n_features, "N"));
  req(curve->add_option("--n-clusters", p.n_clusters, "q"));
  req(curve->add_option("--rho", p.rho, "Within-cluster correlation"));
  req(curve->add_option("--l-values", p.l_values, "Sample counts"));
  curve->add_option("--runs", p.runs, "Runs per L")->check(CLI::PositiveNumber);
  add_sweep(curve);

  auto* sch = app->add_subcommand("schematic", "Two 50-node and ten 5-node planted clusters");
  sch->add_option("--rho", p.rho, "Within-cluster correlation (default 0.3)");
  sch->add_option("--n-samples", p.n_samples, "L (default 100)");
  add_sweep(sch);

  auto* rob = app->add_subcommand("robustness", "Cluster stability under row subsampling");
  add_input(rob);
  add_method(rob);
  rob->add_option("--levels", p.levels, "Fractions of samples kept");
  rob->add_option("--repeats", p.repeats, "Subsamples per level")->check(CLI::PositiveNumber);
  rob->add_option("--stability-threshold", p.stability_threshold, "Fraction of repeats an item must match");
  add_sweep(rob);

  return app;
}

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  throw UsageError("unsupported config value " + v.dump());
}

// Turns config file entries into arguments for options not given on the
// command line.
std::vector<std::string> merge_config(CLI::App* app, const Params& p, const std::vector<std::string>& args) {
  if (p.config.empty()) return args;

  std::ifstream in(p.config);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config '" + p.config + "': " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config '" + p.config + "' must hold a JSON object");

  std::vector<std::string> merged = args;
  CLI::App* sub = app->get_subcommands().empty() ? nullptr : app->get_subcommands().front();
  if (sub == nullptr && cfg.contains("command")) {
    const std::string name = config_value(cfg["command"]);
    sub = app->get_subcommand_no_throw(name);
    if (sub == nullptr) throw UsageError("config: unknown command '" + name + "'");
    merged.insert(merged.begin(), name);
  }

  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    CLI::Option* opt = sub != nullptr ? sub->get_option_no_throw("--" + name) : nullptr;
    if (opt == nullptr) opt = app->get_option_no_throw("--" + name);
    if (opt == nullptr || name == "config" || name == "help") throw UsageError("config: unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    if (opt->get_expected_min() == 0) {
      if (!value.is_boolean()) throw UsageError("config: '" + key + "' expects true or false");
      if (value.get<bool>()) merged.push_back("--" + name);
      continue;
    }
    merged.push_back("--" + name);
    if (value.is_array()) {
      for (const auto& v : value) merged.push_back(config_value(v));
    } else {
      merged.push_back(config_value(value));
    }
  }
  return merged;
}

/// Output files of one run; everything written is removed unless commit()
/// is reached.
class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}
  Outputs(const Outputs&) = delete;
  Outputs& operator=(const Outputs&) = delete;
  ~Outputs() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : written_) fs::remove(f, ec);
    if (created_dir_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
  }

  void write(const std::string& name, const std::string& content) {
    if (!fs::exists(dir_)) {
      fs::create_directories(dir_);
      created_dir_ = true;
    }
    const fs::path path = dir_ / name;
    written_.push_back(path);
    std::ofstream os(path, std::ios::binary);
    os << content;
    if (!os) throw Error("cannot write '" + path.string() + "'");
  }

  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool created_dir_ = false;
  bool committed_ = false;
};

// JSON numbers carry the same 12 significant digits as the tables.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

DataMatrix load_data(const Params& p) {
  IngestOptions o;
  o.orientation = parse_orientation(p.orientation);
  return ingest_matrix(p.input, o);
}

PipelineOptions pipeline_options(const Params& p) {
  PipelineOptions o;
  o.tau_grid = make_tau_grid(p.tau_min, p.tau_max, p.tau_step);
  o.restarts = p.restarts;
  o.sign = p.abs_correlations ? SignMode::Absolute : SignMode::Positive;
  o.q_max = p.q_max;
  o.threads = p.threads;
  return o;
}

json sweep_settings(const Params& p) {
  return {{"tau_min", num(p.tau_min)},
          {"tau_max", num(p.tau_max)},
          {"tau_step", num(p.tau_step)},
          {"restarts", p.restarts},
          {"abs_correlations", p.abs_correlations}};
}

void run_synth(const Params& p, Outputs& outputs, std::ostream& out) {
  const BlockSpec spec{p.n_features, p.n_clusters, p.rho.value_or(0.0), p.n_samples.value_or(0)};
  spec.validate();
  const DataMatrix data = sample_data(spec, p.seed);
  const Orientation orient = parse_orientation(p.orientation);
  std::ostringstream m;
  write_matrix(m, data, orient);
  outputs.write("data.csv", m.str());
  std::ostringstream part;
  write_partition(part, planted_partition(spec), data.feature_names);
  outputs.write("planted.csv", part.str());
  outputs.write_json("summary.json", {{"command", "synth"},
                                      {"seed", p.seed},
                                      {"n_features", spec.n_features},
                                      {"n_clusters", spec.n_clusters},
                                      {"rho", num(spec.rho)},
                                      {"n_samples", spec.n_samples},
                                      {"orientation", orient == Orientation::SamplesAsRows ? "samples" : "features"}});
  out << "synth: N=" << spec.n_features << " q=" << spec.n_clusters << " rho=" << format_number(spec.rho)
      << " L=" << spec.n_samples << '\n';
}

void run_densities(const Params& p, Outputs& outputs, std::ostream& out) {
  const CorrDistParams params{p.rho.value_or(0.0), p.n_samples.value_or(0), p.n_clusters, p.n_features};
  const auto rows = density_table(params, p.step);
  std::ostringstream t;
  t << "r,f_hat,f0_hat\n";
  for (const auto& row : rows) {
    t << format_number(row.r) << ',' << format_number(row.f_hat) << ',' << format_number(row.f0_hat) << '\n';
  }
  outputs.write("densities.csv", t.str());

  const double r_i = intersection_threshold(params);
  const double r_num = intersection_threshold_numeric(params);
  const LinkProbabilities lp = link_probabilities(params, p.epsilon.value_or(0.0));
  outputs.write_json("summary.json", {{"command", "densities"},
                                      {"rho", num(params.rho)},
                                      {"n_samples", params.n_samples},
                                      {"n_clusters", params.n_clusters},
                                      {"n_features", params.n_features},
                                      {"step", num(p.step)},
                                      {"r_i", num(r_i)},
                                      {"r_i_numeric", num(r_num)},
                                      {"epsilon", num(lp.offset)},
                                      {"p_in", num(lp.p_in)},
                                      {"p_out", num(lp.p_out)},
                                      {"ratio", num(lp.ratio())}});
  out << "densities: r_i=" << format_number(r_i) << " r_i_numeric=" << format_number(r_num)
      << " p_out/p_in=" << format_number(lp.ratio()) << '\n';
}

void run_threshold(const Params& p, Outputs& outputs, std::ostream& out) {
  const double eps = p.epsilon.value_or(0.0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::ostringstream t;
  t << "L,rho,q,N,r_i,p_in,p_out,ratio\n";
  std::size_t rows = 0;
  for (int n : p.n_values) {
    for (int q : p.q_values) {
      for (double rho : p.rho_values) {
        for (int l : p.l_values) {
          const CorrDistParams params{rho, l, q, n};
          params.validate();
          double r_i = nan;
          LinkProbabilities lp{nan, nan, nan, eps};
          try {
            r_i = intersection_threshold(params);
            lp = link_probabilities(params, eps);
          } catch (const NumericError&) {
            // No crossing for rho ~ 0; the row keeps NaN entries.
          }
          t << l << ',' << format_number(rho) << ',' << q << ',' << n << ',' << format_number(r_i) << ','
            << format_number(lp.p_in) << ',' << format_number(lp.p_out) << ',' << format_number(lp.ratio()) << '\n';
          ++rows;
        }
      }
    }
  }
  outputs.write("link_probabilities.csv", t.str());
  outputs.write_json("summary.json", {{"command", "threshold"}, {"epsilon", num(eps)}, {"rows", rows}});
  out << "threshold: " << rows << " parameter points, epsilon=" << format_number(eps) << '\n';
}

void run_cluster(const Params& p, Outputs& outputs, std::ostream& out) {
  const DataMatrix data = load_data(p);
  const CorrelationMatrix corr = sample_correlation(data);
  SweepOptions so;
  so.tau_grid = make_tau_grid(p.tau_min, p.tau_max, p.tau_step);
  so.seed = p.seed;
  so.restarts = p.restarts;
  so.threads = p.threads;
  so.sign = p.abs_correlations ? SignMode::Absolute : SignMode::Positive;
  const SweepResult res = sweep(corr, so);

  std::ostringstream t;
  t << "tau,d_one,d_star,delta_d,n_modules\n";
  for (const auto& r : res.records) {
    t << format_number(r.threshold) << ',' << format_number(r.d_one) << ',' << format_number(r.d_star) << ','
      << format_number(r.compression) << ',' << r.partition.n_modules() << '\n';
  }
  outputs.write("sweep.csv", t.str());
  std::ostringstream part;
  write_partition(part, res.best_partition, data.feature_names);
  outputs.write("partition.csv", part.str());
  if (p.export_edges) {
    std::ostringstream e;
    write_edge_list(e, threshold_graph(corr, res.tau_star, so.sign));
    outputs.write("edges.tsv", e.str());
  }
  const auto& best = res.records[res.best_index];
  json summary = {{"command", "cluster"},
                  {"seed", p.seed},
                  {"n_samples", data.n_samples()},
                  {"n_features", data.n_features()},
                  {"tau_star", num(res.tau_star)},
                  {"d_one", num(best.d_one)},
                  {"d_star", num(best.d_star)},
                  {"delta_d", num(best.compression)},
                  {"n_modules", res.best_partition.n_modules()}};
  summary["sweep"] = sweep_settings(p);
  outputs.write_json("summary.json", summary);
  out << "tau_star=" << format_number(res.tau_star) << " n_modules=" << res.best_partition.n_modules()
      << " delta_d=" << format_number(best.compression) << '\n';
}

void run_hclust(const Params& p, Outputs& outputs, std::ostream& out) {
  const DataMatrix data = load_data(p);
  const int n = static_cast<int>(data.n_features());
  const int q_max = p.q_max > 0 ? std::min(p.q_max, n) : default_q_max(n);
  const Dendrogram dendrogram = build_dendrogram(sample_correlation(data));
  const ElbowCut cut = cut_by_elbow(dendrogram, data, q_max);

  std::ostringstream merges;
  write_merge_table(merges, dendrogram);
  outputs.write("merges.csv", merges.str());
  std::ostringstream w;
  w << "q,wcss,normalized\n";
  const auto normalized = cut.curve.normalized();
  for (std::size_t k = 0; k < cut.curve.q.size(); ++k) {
    w << cut.curve.q[k] << ',' << format_number(cut.curve.wcss[k]) << ',' << format_number(normalized[k]) << '\n';
  }
  outputs.write("wcss.csv", w.str());
  std::ostringstream part;
  write_partition(part, cut.partition, data.feature_names);
  outputs.write("partition.csv", part.str());
  outputs.write_json("summary.json", {{"command", "hclust"},
                                      {"n_samples", data.n_samples()},
                                      {"n_features", data.n_features()},
                                      {"q_max", q_max},
                                      {"q_star", cut.q_star},
                                      {"peak_second_difference", num(cut.peak_second_difference)},
                                      {"slope_ratio", num(cut.slope_ratio)},
                                      {"prominence", num(cut.prominence)},
                                      {"weak_elbow", cut.weak_elbow}});
  out << "q_star=" << cut.q_star << " weak_elbow=" << (cut.weak_elbow ? "true" : "false") << '\n';
}

void run_detectability(const Params& p, Outputs& outputs, std::ostream& out) {
  const Method method = parse_method(p.method);
  const double eps = p.epsilon.value_or(0.05);
  const DetectabilityGrid grid = detectability_map(p.l_values, p.rho_values, p.n_clusters, p.n_features, method,
                                                   p.runs, pipeline_options(p), p.seed, eps);
  std::ostringstream t;
  t << "rho,L,mean_ami,stddev_ami,ratio,ratio_offset\n";
  for (std::size_t i = 0; i < grid.rho_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.l_values.size(); ++j) {
      t << format_number(grid.rho_values[i]) << ',' << grid.l_values[j] << ',' << format_number(grid.mean_ami[i][j])
        << ',' << format_number(grid.stddev_ami[i][j]) << ',' << format_number(grid.link_ratio[i][j]) << ','
        << format_number(grid.link_ratio_offset[i][j]) << '\n';
    }
  }
  outputs.write("detectability.csv", t.str());
  json boundary = json::array();
  for (const auto& c : grid.boundary) boundary.push_back({{"L", c.n_samples}, {"rho", num(c.rho)}});
  json summary = {{"command", "detectability"},
                  {"seed", p.seed},
                  {"method", method_name(method)},
                  {"n_features", p.n_features},
                  {"n_clusters", p.n_clusters},
                  {"runs_per_cell", grid.runs_per_cell},
                  {"epsilon", num(eps)},
                  {"ami_level", num(kDetectableAmi)},
                  {"boundary", boundary}};
  if (method == Method::MapEq) summary["sweep"] = sweep_settings(p);
  outputs.write_json("summary.json", summary);
  out << "detectability: " << method_name(method) << ", " << grid.boundary.size() << " of " << grid.rho_values.size()
      << " rho rows reach AMI " << format_number(kDetectableAmi) << '\n';
}

void run_ami_curve(const Params& p, Outputs& outputs, std::ostream& out) {
  const Method method = parse_method(p.method);
  const BlockSpec base{p.n_features, p.n_clusters, p.rho.value_or(0.0), 4};
  const auto curve = ami_vs_samples(base, p.l_values, method, p.runs, pipeline_options(p), p.seed);
  std::ostringstream t;
  t << "L,mean_ami,stddev_ami,mean_modules\n";
  for (const auto& pt : curve) {
    t << pt.n_samples << ',' << format_number(pt.mean_ami) << ',' << format_number(pt.stddev_ami) << ','
      << format_number(pt.mean_modules) << '\n';
  }
  outputs.write("ami_curve.csv", t.str());
  outputs.write_json("summary.json", {{"command", "ami-curve"},
                                      {"seed", p.seed},
                                      {"method", method_name(method)},
                                      {"n_features", base.n_features},
                                      {"n_clusters", base.n_clusters},
                                      {"rho", num(base.rho)},
                                      {"runs", p.runs}});
  out << "ami-curve: " << method_name(method) << ", " << curve.size() << " sample counts\n";
}

void run_schematic(const Params& p, Outputs& outputs, std::ostream& out) {
  const auto cases = schematic_cases(p.seed, pipeline_options(p), p.rho.value_or(0.3), p.n_samples.value_or(100));
  std::ostringstream t;
  t << "case,n_clusters,cluster_size,rho,L,ami,n_modules,tau_star\n";
  for (const auto& c : cases) {
    t << c.name << ',' << c.n_clusters << ',' << c.cluster_size << ',' << format_number(c.rho) << ',' << c.n_samples
      << ',' << format_number(c.ami) << ',' << c.n_modules << ',' << format_number(c.tau_star) << '\n';
  }
  outputs.write("schematic.csv", t.str());
  outputs.write_json("summary.json", {{"command", "schematic"}, {"seed", p.seed}, {"sweep", sweep_settings(p)}});
  out << "schematic:";
  for (const auto& c : cases) out << ' ' << c.name << " ami=" << format_number(c.ami) << " modules=" << c.n_modules;
  out << '\n';
}

void run_robustness(const Params& p, Outputs& outputs, std::ostream& out) {
  const DataMatrix data = load_data(p);
  const Method method = parse_method(p.method);
  RobustnessOptions ro;
  ro.levels = p.levels;
  ro.repeats = p.repeats;
  ro.stability_threshold = p.stability_threshold;
  const RobustnessReport rep = subsample_robustness(data, ro, method, pipeline_options(p), p.seed);

  std::ostringstream items;
  items << "node_id,module_id";
  for (double level : rep.levels) items << ",stable_" << format_number(level);
  items << '\n';
  for (std::size_t i = 0; i < rep.full_partition.size(); ++i) {
    items << data.feature_names[i] << ',' << rep.full_partition[i];
    for (const auto& counts : rep.stability) items << ',' << counts[i];
    items << '\n';
  }
  outputs.write("robustness_items.csv", items.str());
  std::ostringstream a;
  a << "level,repeat,ami\n";
  for (std::size_t l = 0; l < rep.levels.size(); ++l) {
    for (std::size_t r = 0; r < rep.ami[l].size(); ++r) {
      a << format_number(rep.levels[l]) << ',' << r << ',' << format_number(rep.ami[l][r]) << '\n';
    }
  }
  outputs.write("robustness_ami.csv", a.str());

  json levels = json::array();
  for (std::size_t l = 0; l < rep.levels.size(); ++l) {
    double mean = 0.0;
    for (double v : rep.ami[l]) mean += v;
    mean /= static_cast<double>(rep.ami[l].size());
    json unstable = json::array();
    for (int i : rep.unstable_items[l]) unstable.push_back(data.feature_names[static_cast<std::size_t>(i)]);
    levels.push_back({{"level", num(rep.levels[l])}, {"mean_ami", num(mean)}, {"unstable_items", unstable}});
  }
  outputs.write_json("summary.json", {{"command", "robustness"},
                                      {"seed", p.seed},
                                      {"method", method_name(method)},
                                      {"repeats", rep.repeats},
                                      {"stability_threshold", num(rep.stability_threshold)},
                                      {"n_modules", rep.full_partition.n_modules()},
                                      {"levels", levels}});
  out << "robustness: " << rep.full_partition.n_modules() << " modules;";
  for (std::size_t l = 0; l < rep.levels.size(); ++l) {
    out << " level " << format_number(rep.levels[l]) << ": " << rep.unstable_items[l].size() << " unstable";
    out << (l + 1 < rep.levels.size() ? "," : "\n");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  // First pass only locates the config file and the command-line options.
  Params first;
  auto probe = build_app(first, false);
  Params p;
  auto app = build_app(p, true);
  CLI::App* active = probe.get();
  try {
    parse_args(*probe, args);
    const auto merged = merge_config(probe.get(), first, args);
    active = app.get();
    parse_args(*app, merged);
  } catch (const CLI::Success& e) {
    active->exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << active->help() << '\n';
    active->exit(e, out, err);
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const std::string command = app->get_subcommands().front()->get_name();
  Outputs outputs(p.output_dir);
  try {
    if (command == "synth") {
      run_synth(p, outputs, out);
    } else if (command == "densities") {
      run_densities(p, outputs, out);
    } else if (command == "threshold") {
      run_threshold(p, outputs, out);
    } else if (command == "cluster") {
      run_cluster(p, outputs, out);
    } else if (command == "hclust") {
      run_hclust(p, outputs, out);
    } else if (command == "detectability") {
      run_detectability(p, outputs, out);
    } else if (command == "ami-curve") {
      run_ami_curve(p, outputs, out);
    } else if (command == "schematic") {
      run_schematic(p, outputs, out);
    } else {
      run_robustness(p, outputs, out);
    }
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  outputs.commit();
  return kSuccess;
}

}  // namespace mdlcorr::cli
