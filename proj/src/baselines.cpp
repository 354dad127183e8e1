#include "hyperseg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hyperseg/errors.hpp"
#include "hyperseg/kernels.hpp"
#include "hyperseg/rng.hpp"
#include "hyperseg/sym_eig.hpp"

namespace hyperseg {

namespace {

double nearest_rank(const std::vector<double>& sorted, double q) {
  const auto idx = static_cast<std::size_t>(
      std::floor(q * static_cast<double>(sorted.size() - 1)));
  return sorted[idx];
}

void check_cloud(const PointCloud& cloud, int k) {
  validate(cloud);
  if (cloud.size() < 2) throw ArgumentError("graph construction needs at least 2 points");
  if (k < 1 || k > cloud.size()) throw ArgumentError("k must lie in [1, N]");
}

GaussianGraphParams resolve_params(const PointCloud& cloud, const SegmentationConfig& config) {
  if (config.delta && config.t) return {*config.delta, *config.t};
  GaussianGraphParams params = default_graph_params(cloud, config.seed);
  if (config.delta) params.delta = *config.delta;
  if (config.t) params.t = *config.t;
  return params;
}

SegmentationResult cluster_embedding(const Eigen::MatrixXd& embedding, int selected_e,
                                     const SegmentationConfig& config) {
  const KmeansOutput km = kmeans(embedding, config.k, config.seed, config.kmeans_max_iter,
                                 config.kmeans_tol);
  SegmentationResult result;
  result.assignments = km.assignments;
  result.k = config.k;
  result.selected_e = selected_e;
  result.inertia = km.inertia;
  return result;
}

}  // namespace

GaussianGraphParams default_graph_params(const PointCloud& cloud, std::uint64_t seed,
                                         Eigen::Index n_samples) {
  validate(cloud);
  const Eigen::Index n = cloud.size();
  if (n < 2) throw ArgumentError("default_graph_params needs at least 2 points");
  if (n_samples < 1) throw ArgumentError("default_graph_params: n_samples must be >= 1");

  auto rng = make_rng(seed, Stream::kGraphParams);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  std::vector<double> distances;
  distances.reserve(static_cast<std::size_t>(n_samples));
  while (distances.size() < static_cast<std::size_t>(n_samples)) {
    const Eigen::Index i = pick(rng);
    const Eigen::Index j = pick(rng);
    if (i == j) continue;
    distances.push_back((cloud.coords.row(i) - cloud.coords.row(j)).norm());
  }
  std::sort(distances.begin(), distances.end());

  GaussianGraphParams params;
  params.delta = nearest_rank(distances, 0.5);
  const double d90 = nearest_rank(distances, 0.9);
  params.t = d90 * d90;
  return params;
}

GraphMatrices gaussian_adjacency(const PointCloud& cloud, const GaussianGraphParams& params) {
  validate(cloud);
  if (cloud.size() < 2) throw ArgumentError("gaussian_adjacency needs at least 2 points");
  if (!(params.delta > 0.0)) throw ArgumentError("gaussian_adjacency: delta must be > 0");
  if (params.t < 0.0) throw ArgumentError("gaussian_adjacency: t must be >= 0");

  GraphMatrices graph;
  kernels::gaussian_weights(cloud.coords, params.delta, params.t, graph.weighted_adjacency,
                            graph.unweighted_adjacency);
  graph.degree = graph.unweighted_adjacency.rowwise().sum();
  graph.laplacian = -graph.unweighted_adjacency;
  graph.laplacian.diagonal() = graph.degree;
  return graph;
}

SegmentationResult gsp_segment(const PointCloud& cloud, const SegmentationConfig& config) {
  check_cloud(cloud, config.k);
  const GraphMatrices graph = gaussian_adjacency(cloud, resolve_params(cloud, config));
  const SymEig eig = sym_eig(graph.weighted_adjacency);

  const Eigen::Index n = cloud.size();
  const double lead = eig.values(n - 1);
  if (lead <= 0.0) {
    throw DegenerateSpectrumError("adjacency spectrum has no positive leading eigenvalue");
  }

  // Largest adjacency eigenvalues first; negatives rank as zero for the
  // steep-drop rule.
  Eigen::VectorXd normalized(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    normalized(i) = std::max(eig.values(n - 1 - i), 0.0) / lead;
  }
  const int selected_e = select_components(normalized, config.max_e, config.fallback_e);

  Eigen::MatrixXd embedding(n, selected_e);
  for (int c = 0; c < selected_e; ++c) embedding.col(c) = eig.vectors.col(n - 1 - c);
  return cluster_embedding(embedding, selected_e, config);
}

SegmentationResult laplacian_segment(const PointCloud& cloud, const SegmentationConfig& config) {
  check_cloud(cloud, config.k);
  const GraphMatrices graph = gaussian_adjacency(cloud, resolve_params(cloud, config));
  const SymEig eig = sym_eig(graph.laplacian);

  const Eigen::Index n = cloud.size();
  const double lead = eig.values(n - 1);

  // Smallest Laplacian eigenvalues first; (lmax - l_i) / lmax orients the
  // curve so the steep-drop rule reads it like the adjacency case. A flat
  // spectrum (lmax <= 0, the empty graph) gives an all-ones curve and thus
  // the fallback dimension.
  Eigen::VectorXd oriented(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    oriented(i) = lead > 0.0 ? std::clamp((lead - eig.values(i)) / lead, 0.0, 1.0) : 1.0;
  }
  const int selected_e = select_components(oriented, config.max_e, config.fallback_e);

  const Eigen::MatrixXd embedding = eig.vectors.leftCols(selected_e);
  return cluster_embedding(embedding, selected_e, config);
}

SegmentationResult kmeans_segment(const PointCloud& cloud, const SegmentationConfig& config) {
  validate(cloud);
  if (config.k < 1 || config.k > cloud.size()) throw ArgumentError("k must lie in [1, N]");
  return cluster_embedding(cloud.coords, 3, config);
}

}  // namespace hyperseg
