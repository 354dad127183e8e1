#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hyperseg/baselines.hpp"
#include "hyperseg/cloud_io.hpp"
#include "hyperseg/clustering.hpp"
#include "hyperseg/coefficients.hpp"
#include "hyperseg/errors.hpp"
#include "hyperseg/kernels.hpp"
#include "hyperseg/metrics.hpp"
#include "hyperseg/report.hpp"
#include "hyperseg/spectral.hpp"
#include "hyperseg/sym_eig.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::int64_t kDefaultSampledTriples = 100000;

struct Options {
  std::string input;
  std::string labels;
  std::string method = "hgsp";
  std::string out;
  int k = 1;
  double beta = 1.0;
  std::string constraint_mode = "relaxed";
  int max_e = 5;
  int fallback_e = 2;
  std::optional<double> delta;
  std::optional<double> t;
  std::optional<double> snr_db;
  std::vector<long long> samples;
  std::uint64_t seed = 0;
  int repeats = 3;
};

hyperseg::SegmentationConfig make_config(const Options& opt) {
  hyperseg::SegmentationConfig config;
  config.k = opt.k;
  config.beta = opt.beta;
  if (opt.constraint_mode == "sampled") {
    config.sampled = hyperseg::SampledConstraints{kDefaultSampledTriples, opt.seed};
  }
  config.max_e = opt.max_e;
  config.fallback_e = opt.fallback_e;
  config.seed = opt.seed;
  config.delta = opt.delta;
  config.t = opt.t;
  config.snr_db = opt.snr_db;
  return config;
}

hyperseg::SegmentationResult run_method(const std::string& method,
                                        const hyperseg::PointCloud& cloud,
                                        const hyperseg::SegmentationConfig& config) {
  if (method == "hgsp") return hyperseg::segment(cloud, config);
  if (method == "gsp") return hyperseg::gsp_segment(cloud, config);
  if (method == "laplacian") return hyperseg::laplacian_segment(cloud, config);
  if (method == "kmeans") return hyperseg::kmeans_segment(cloud, config);
  throw hyperseg::ArgumentError("unknown method '" + method + "'");
}

hyperseg::PointCloud load_input(const Options& opt) {
  hyperseg::PointCloud cloud = hyperseg::load_cloud(opt.input);
  if (!opt.labels.empty()) {
    hyperseg::attach_labels(cloud, hyperseg::load_labels(opt.labels));
  }
  if (opt.snr_db) cloud = hyperseg::add_noise(cloud, *opt.snr_db, opt.seed);
  return cloud;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw hyperseg::ArgumentError("cannot write " + path.string());
  out << text;
  if (!out) throw hyperseg::ArgumentError("write failed: " + path.string());
}

hyperseg::GaussianGraphParams graph_params(const hyperseg::PointCloud& cloud,
                                           const Options& opt) {
  if (opt.delta && opt.t) return {*opt.delta, *opt.t};
  auto params = hyperseg::default_graph_params(cloud, opt.seed);
  if (opt.delta) params.delta = *opt.delta;
  if (opt.t) params.t = *opt.t;
  return params;
}

Json config_echo(const Options& opt, const std::vector<std::string>& methods) {
  Json cfg;
  cfg["methods"] = methods;
  cfg["k"] = opt.k;
  cfg["beta"] = opt.beta;
  cfg["constraint_mode"] = opt.constraint_mode;
  cfg["max_e"] = opt.max_e;
  cfg["fallback_e"] = opt.fallback_e;
  if (opt.delta) cfg["delta"] = *opt.delta; else cfg["delta"] = nullptr;
  if (opt.t) cfg["t"] = *opt.t; else cfg["t"] = nullptr;
  if (opt.snr_db) cfg["snr_db"] = *opt.snr_db; else cfg["snr_db"] = nullptr;
  cfg["seed"] = opt.seed;
  cfg["repeats"] = opt.repeats;
  return cfg;
}

int cmd_segment(const Options& opt) {
  const hyperseg::PointCloud cloud = load_input(opt);
  const hyperseg::SegmentationResult result = run_method(opt.method, cloud, make_config(opt));

  const fs::path out_path(opt.out);
  write_text(out_path, hyperseg::segmentation_json(result));
  fs::path labels_path = out_path;
  labels_path.replace_extension(".labels");
  hyperseg::save_labels(labels_path, result.assignments);

  std::cout << "method=" << opt.method << " n=" << cloud.size() << " k=" << result.k
            << " E=" << result.selected_e << " inertia=" << result.inertia;
  if (cloud.labels) {
    std::cout << " accuracy=" << hyperseg::matched_accuracy(*cloud.labels, result.assignments);
  }
  std::cout << "\nwrote " << out_path.string() << " and " << labels_path.string() << "\n";
  return 0;
}

int cmd_spectrum(const Options& opt) {
  if (opt.method == "kmeans") {
    throw hyperseg::ArgumentError("the kmeans baseline has no spectrum to emit");
  }
  const hyperseg::PointCloud cloud = load_input(opt);

  std::vector<long long> sizes = opt.samples;
  if (sizes.empty()) sizes.push_back(cloud.size());

  for (long long size : sizes) {
    const hyperseg::PointCloud sub = hyperseg::downsample(cloud, size, opt.seed);
    const Eigen::Index n = sub.size();
    Eigen::VectorXd descending;

    if (opt.method == "hgsp") {
      const hyperseg::CenteredCloud centered = hyperseg::center_rows(sub);
      hyperseg::SpectrumEstimate spectrum = hyperseg::estimate_spectrum(centered.values);
      hyperseg::CoefficientProblem problem;
      problem.fourier_energy = hyperseg::fourier_energy(centered.values, spectrum);
      problem.beta = opt.beta;
      if (opt.constraint_mode == "sampled") {
        problem.sampled = hyperseg::SampledConstraints{kDefaultSampledTriples, opt.seed};
      }
      spectrum.coefficients = hyperseg::estimate_coefficients(spectrum, problem);

      // Coefficient curve padded with zeros: components beyond the retained
      // basis carry no energy.
      descending = Eigen::VectorXd::Zero(n);
      descending.head(spectrum.basis_size()) = spectrum.coefficients;
      std::sort(descending.data(), descending.data() + descending.size(),
                std::greater<double>());

      const fs::path json_path(opt.out + "_hgsp_n" + std::to_string(n) + ".json");
      write_text(json_path, hyperseg::spectrum_json(spectrum, spectrum.coefficients));
    } else {
      const auto graph = hyperseg::gaussian_adjacency(sub, graph_params(sub, opt));
      if (opt.method == "gsp") {
        const Eigen::VectorXd ascending =
            hyperseg::sym_eigenvalues(graph.weighted_adjacency);
        descending = ascending.reverse();
      } else {  // laplacian, oriented so the lowest graph frequency comes first
        const Eigen::VectorXd ascending = hyperseg::sym_eigenvalues(graph.laplacian);
        const double lead = ascending(n - 1);
        descending.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          descending(i) = lead > 0.0 ? (lead - ascending(i)) / lead : 0.0;
        }
      }
    }

    const fs::path csv_path(opt.out + "_" + opt.method + "_n" + std::to_string(n) + ".csv");
    write_text(csv_path, hyperseg::curve_csv(hyperseg::eigencurve(descending)));
    std::cout << "wrote " << csv_path.string() << "\n";
  }
  return 0;
}

int cmd_benchmark(const Options& opt) {
  const fs::path dir(opt.input);
  if (!fs::is_directory(dir)) {
    throw hyperseg::ArgumentError("benchmark input must be a directory: " + opt.input);
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".xyz" || ext == ".ply") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw hyperseg::ArgumentError("no .xyz or .ply files in " + opt.input);
  }

  std::vector<std::string> methods;
  if (opt.method == "all") {
    methods = {"hgsp", "gsp", "laplacian", "kmeans"};
  } else {
    methods = {opt.method};
  }

  std::vector<hyperseg::BenchRow> rows;
  for (const fs::path& file : files) {
    hyperseg::PointCloud cloud;
    try {
      cloud = hyperseg::load_cloud(file);
      fs::path labels_path = file;
      labels_path.replace_extension(".labels");
      if (fs::exists(labels_path)) {
        hyperseg::attach_labels(cloud, hyperseg::load_labels(labels_path));
      }
      if (opt.snr_db) cloud = hyperseg::add_noise(cloud, *opt.snr_db, opt.seed);
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping " << file.string() << ": " << e.what() << "\n";
      continue;
    }

    const hyperseg::SegmentationConfig config = make_config(opt);
    for (const std::string& method : methods) {
      try {
        hyperseg::SegmentationResult result;
        const double seconds = hyperseg::median_time_seconds(
            [&] { result = run_method(method, cloud, config); }, opt.repeats);

        hyperseg::BenchRow row;
        row.input = file.filename().string();
        row.method = method;
        row.n_points = cloud.size();
        row.k = result.k;
        row.selected_e = result.selected_e;
        if (cloud.labels) {
          row.accuracy = hyperseg::matched_accuracy(*cloud.labels, result.assignments);
        }
        row.silhouette = hyperseg::silhouette(cloud.coords, result.assignments);
        row.median_seconds = seconds;
        rows.push_back(std::move(row));
      } catch (const std::exception& e) {
        std::cerr << "warning: " << method << " failed on " << file.string() << ": "
                  << e.what() << "\n";
      }
    }
  }

  if (rows.empty()) {
    std::cerr << "error: every (cloud, method) run failed\n";
    return 1;
  }
  write_text(fs::path(opt.out),
             hyperseg::benchmark_json(rows, config_echo(opt, methods).dump()));
  std::cout << "wrote " << rows.size() << " rows to " << opt.out << "\n";
  return 0;
}

void add_common_flags(CLI::App* cmd, Options& opt, bool method_all_allowed) {
  std::vector<std::string> method_names = {"hgsp", "gsp", "laplacian", "kmeans"};
  if (method_all_allowed) method_names.emplace_back("all");
  cmd->add_option("--method", opt.method, "Segmentation method")
      ->check(CLI::IsMember(method_names));
  cmd->add_option("--beta", opt.beta, "Smoothness regularizer")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--constraint-mode", opt.constraint_mode,
                  "Tensor-entry constraint handling")
      ->check(CLI::IsMember({"relaxed", "sampled"}));
  cmd->add_option("--max-e", opt.max_e, "Steep-drop search limit");
  cmd->add_option("--fallback-e", opt.fallback_e, "Dimension when no steep drop exists");
  cmd->add_option("--delta", opt.delta, "Gaussian-graph bandwidth override");
  cmd->add_option("--t", opt.t, "Gaussian-graph squared-distance threshold override");
  cmd->add_option("--snr-db", opt.snr_db, "Add Gaussian noise at this SNR before running");
  cmd->add_option("--seed", opt.seed, "Master RNG seed");
}

}  // namespace

int main(int argc, char** argv) {
  hyperseg::kernels::apply_thread_cap_from_env();

  CLI::App app{"Hypergraph spectral point-cloud segmentation toolkit"};
  app.set_version_flag("--version", hyperseg::kVersion);
  app.require_subcommand(1);
  Options opt;

  CLI::App* seg = app.add_subcommand("segment", "Segment one cloud and write assignments");
  seg->add_option("--input", opt.input, "Point cloud file (.xyz or .ply)")->required();
  seg->add_option("--labels", opt.labels, "Ground-truth labels file");
  seg->add_option("--k", opt.k, "Number of clusters")->required()->check(CLI::Range(1, std::numeric_limits<int>::max()));
  seg->add_option("--out", opt.out, "Result JSON path")->required();
  add_common_flags(seg, opt, false);

  CLI::App* spec = app.add_subcommand("spectrum", "Emit eigenvalue/coefficient curves");
  spec->add_option("--input", opt.input, "Point cloud file (.xyz or .ply)")->required();
  spec->add_option("--out", opt.out, "Output path prefix")->required();
  spec->add_option("--samples", opt.samples, "Comma-separated subsample sizes")
      ->delimiter(',');
  add_common_flags(spec, opt, false);

  CLI::App* bench = app.add_subcommand("benchmark", "Score every cloud in a directory");
  bench->add_option("--input", opt.input, "Directory of .xyz/.ply clouds")->required();
  bench->add_option("--k", opt.k, "Number of clusters")->required()->check(CLI::Range(1, std::numeric_limits<int>::max()));
  bench->add_option("--out", opt.out, "Report JSON path")->required();
  bench->add_option("--repeats", opt.repeats, "Timing repetitions per run")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()));
  add_common_flags(bench, opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (seg->parsed()) return cmd_segment(opt);
    if (spec->parsed()) return cmd_spectrum(opt);
    if (bench->count("--method") == 0) opt.method = "all";  // default: every method
    return cmd_benchmark(opt);
  } catch (const hyperseg::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
