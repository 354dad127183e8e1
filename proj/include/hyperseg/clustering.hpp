#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperseg/cloud.hpp"
#include "hyperseg/coefficients.hpp"

namespace hyperseg {

/// Everything a segmentation run needs besides the cloud itself. One seed
/// reproduces the whole run; sub-seeds are split off per consumer.
struct SegmentationConfig {
  int k = 1;
  double beta = 1.0;
  std::optional<SampledConstraints> sampled;  // empty = relaxed mode
  int max_e = 5;
  int fallback_e = 2;
  std::uint64_t seed = 0;
  std::optional<double> delta;  // Gaussian-graph bandwidth override
  std::optional<double> t;      // squared-distance threshold override
  std::optional<double> snr_db;
  std::optional<Eigen::Index> sample_n;
  int kmeans_max_iter = 300;
  std::optional<double> kmeans_tol;  // empty: 1e-8 * initial inertia
};

struct SegmentationResult {
  std::vector<int> assignments;  // values in [0, k)
  int k = 0;
  int selected_e = 0;
  double inertia = 0.0;  // final k-means objective
};

/// Number of leading components to keep, given coefficients sorted in
/// non-increasing order with sigma[0] = 1: the r maximizing the drop ratio
/// sigma_r / max(sigma_{r+1}, 1e-12) over r in [1, min(max_e, len-1)].
/// If no ratio reaches 5 there is no steep drop and fallback_e (clamped to
/// the vector length) is returned.
int select_components(const Eigen::VectorXd& sigma_sorted, int max_e = 5,
                      int fallback_e = 2);

struct KmeansOutput {
  std::vector<int> assignments;
  double inertia = 0.0;
  Eigen::MatrixXd centroids;
  int iterations = 0;
};

/// Lloyd's algorithm with greedy D^2-weighted seeding. Deterministic per
/// seed and independent of the OpenMP thread count. Stops when the inertia
/// improves by at most tol (default 1e-8 times the initial inertia) or
/// after max_iter rounds; empty clusters are reseeded to the point
/// farthest from its centroid. Inertia is checked to be non-increasing
/// every iteration.
KmeansOutput kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                    int max_iter = 300, std::optional<double> tol = {});

/// The full hypergraph spectral segmentation pipeline: row centering,
/// spectrum estimation, coefficient estimation, ranking by coefficient,
/// steep-drop component selection, and k-means on the reduced spectral
/// embedding.
SegmentationResult segment(const PointCloud& cloud, const SegmentationConfig& config);

}  // namespace hyperseg
