#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

namespace hyperseg {

using Coords = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// A 3D point cloud: one row per point, columns are the three coordinate
/// observations. Labels, when present, hold one nonnegative class id per
/// point.
struct PointCloud {
  Coords coords;
  std::optional<std::vector<int>> labels;

  Eigen::Index size() const { return coords.rows(); }
};

/// Checks the PointCloud invariants (N >= 1, finite coordinates, label
/// vector length/sign). Throws ArgumentError on violation.
void validate(const PointCloud& cloud);

/// Attaches per-point labels, checking length and nonnegativity.
void attach_labels(PointCloud& cloud, std::vector<int> labels);

/// Uniform sample of n points without replacement; labels follow their
/// points. Deterministic for a fixed seed.
PointCloud downsample(const PointCloud& cloud, Eigen::Index n, std::uint64_t seed);

/// Mean squared coordinate entry after removing the global centroid.
double signal_power(const PointCloud& cloud);

/// Adds i.i.d. zero-mean Gaussian noise to every coordinate. The noise
/// variance is signal_power(cloud) / 10^(snr_db/10), so the column-centered
/// signal-to-noise ratio matches snr_db. Labels are carried through.
PointCloud add_noise(const PointCloud& cloud, double snr_db, std::uint64_t seed);

/// Generates k isotropic Gaussian clusters of per_cluster points each.
/// Cluster centers sit on a cubic lattice with pitch `separation`, so any
/// two centers are at least `separation` apart; labels are cluster ids.
PointCloud synth_blobs(int k, int per_cluster, double separation, double spread,
                       std::uint64_t seed);

}  // namespace hyperseg
