#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "hyperseg/cloud.hpp"
#include "hyperseg/clustering.hpp"

namespace hyperseg {

/// Parameters of the thresholded Gaussian similarity graph.
struct GaussianGraphParams {
  double delta = 1.0;  // kernel bandwidth
  double t = 1.0;      // squared-distance threshold; pairs beyond it get weight 0
};

/// W: thresholded Gaussian weights, zero diagonal. S: the same sparsity
/// pattern with unit weights. laplacian = D - S where D = diag(S row sums).
struct GraphMatrices {
  Eigen::MatrixXd weighted_adjacency;
  Eigen::MatrixXd unweighted_adjacency;
  Eigen::MatrixXd laplacian;
  Eigen::VectorXd degree;
};

/// Data-driven defaults from up to `n_samples` sampled point pairs:
/// delta = median pairwise distance, t = squared 90th-percentile distance
/// (nearest-rank on the sorted sample). Needs at least two points.
GaussianGraphParams default_graph_params(const PointCloud& cloud,
                                         std::uint64_t seed,
                                         Eigen::Index n_samples = 1000);

GraphMatrices gaussian_adjacency(const PointCloud& cloud,
                                 const GaussianGraphParams& params);

/// Graph spectral baseline: k-means on the E eigenvectors of W with the
/// largest eigenvalues, E chosen by the steep-drop rule on the spectrum
/// normalized by its largest eigenvalue. Throws DegenerateSpectrumError if
/// that largest eigenvalue is not positive.
SegmentationResult gsp_segment(const PointCloud& cloud, const SegmentationConfig& config);

/// Laplacian baseline: k-means on the E eigenvectors of L = D - S with the
/// smallest eigenvalues. Component selection runs on (lmax - l_i) / lmax
/// listed in ascending-eigenvalue order, so it degenerates gracefully when
/// the spectrum is flat.
SegmentationResult laplacian_segment(const PointCloud& cloud,
                                     const SegmentationConfig& config);

/// Raw-coordinate baseline: k-means directly on the 3D points. Reports
/// selected_e = 3.
SegmentationResult kmeans_segment(const PointCloud& cloud, const SegmentationConfig& config);

}  // namespace hyperseg
