#pragma once

#include <Eigen/Core>
#include <vector>

#include "hyperseg/cloud.hpp"

// Data-parallel inner loops (OpenMP) together with serial reference
// implementations. The parallel variants are what the library calls; the
// serial twins are kept for equivalence tests and the kernel benchmark.
// Every kernel writes each output element from exactly one iteration and
// performs reductions in a fixed serial order, so results are bitwise
// independent of the thread count.

namespace hyperseg::kernels {

/// Threads OpenMP regions will use, after any HYPERSEG_THREADS cap.
int effective_threads();

/// Applies the HYPERSEG_THREADS environment variable (if set and positive)
/// as an upper bound on the OpenMP thread count. Call once at startup.
void apply_thread_cap_from_env();

/// Gaussian kernel graph weights: w(i,j) = exp(-d2/delta^2) when the
/// squared distance d2 <= t, zero otherwise; diagonal is zero. Also fills
/// the binary adjacency s(i,j) = 1 iff w(i,j) > 0. Each unordered pair is
/// computed once, so w and s are exactly symmetric.
void gaussian_weights(const Coords& coords, double delta, double t,
                      Eigen::MatrixXd& w, Eigen::MatrixXd& s);
void gaussian_weights_serial(const Coords& coords, double delta, double t,
                             Eigen::MatrixXd& w, Eigen::MatrixXd& s);

/// Nearest-centroid assignment; ties go to the lowest centroid index.
/// dist2[i] receives the squared distance of point i to its centroid.
void assign_nearest(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                    std::vector<int>& assignment, Eigen::VectorXd& dist2);
void assign_nearest_serial(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                           std::vector<int>& assignment, Eigen::VectorXd& dist2);

/// Per-point silhouette values s_i = (b-a)/max(a,b) with the usual
/// conventions: singleton clusters score 0, and a = b = 0 scores 0.
/// counts[c] must hold the size of cluster c.
void silhouette_samples(const Coords& coords, const std::vector<int>& assignment,
                        const std::vector<Eigen::Index>& counts, Eigen::VectorXd& s);
void silhouette_samples_serial(const Coords& coords, const std::vector<int>& assignment,
                               const std::vector<Eigen::Index>& counts, Eigen::VectorXd& s);

}  // namespace hyperseg::kernels
