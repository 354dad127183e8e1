#include "hyperseg/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hyperseg/errors.hpp"
#include "hyperseg/rng.hpp"

namespace hyperseg {

void validate(const PointCloud& cloud) {
  if (cloud.coords.rows() < 1) throw ArgumentError("point cloud is empty");
  if (!cloud.coords.allFinite()) throw ArgumentError("point cloud has non-finite coordinates");
  if (cloud.labels) {
    if (static_cast<Eigen::Index>(cloud.labels->size()) != cloud.coords.rows()) {
      throw ArgumentError("label count " + std::to_string(cloud.labels->size()) +
                          " does not match point count " + std::to_string(cloud.coords.rows()));
    }
    for (int v : *cloud.labels) {
      if (v < 0) throw ArgumentError("labels must be nonnegative");
    }
  }
}

void attach_labels(PointCloud& cloud, std::vector<int> labels) {
  if (static_cast<Eigen::Index>(labels.size()) != cloud.size()) {
    throw ArgumentError("label count " + std::to_string(labels.size()) +
                        " does not match point count " + std::to_string(cloud.size()));
  }
  for (int v : labels) {
    if (v < 0) throw ArgumentError("labels must be nonnegative");
  }
  cloud.labels = std::move(labels);
}

PointCloud downsample(const PointCloud& cloud, Eigen::Index n, std::uint64_t seed) {
  validate(cloud);
  const Eigen::Index total = cloud.size();
  if (n < 1 || n > total) {
    throw ArgumentError("downsample size " + std::to_string(n) + " outside [1, " +
                        std::to_string(total) + "]");
  }

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(total));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  auto rng = make_rng(seed, Stream::kDownsample);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, total - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(n));
  std::sort(idx.begin(), idx.end());  // keep the original point order

  PointCloud out;
  out.coords.resize(n, 3);
  if (cloud.labels) out.labels.emplace(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.coords.row(i) = cloud.coords.row(idx[static_cast<std::size_t>(i)]);
    if (cloud.labels) {
      (*out.labels)[static_cast<std::size_t>(i)] =
          (*cloud.labels)[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
  }
  return out;
}

double signal_power(const PointCloud& cloud) {
  validate(cloud);
  const Eigen::RowVector3d centroid = cloud.coords.colwise().mean();
  return (cloud.coords.rowwise() - centroid).squaredNorm() /
         static_cast<double>(3 * cloud.size());
}

PointCloud add_noise(const PointCloud& cloud, double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) throw ArgumentError("snr_db must be finite");
  const double power = signal_power(cloud);
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));

  PointCloud out = cloud;
  auto rng = make_rng(seed, Stream::kNoise);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      out.coords(i, j) += sigma * noise(rng);
    }
  }
  return out;
}

PointCloud synth_blobs(int k, int per_cluster, double separation, double spread,
                       std::uint64_t seed) {
  if (k < 1) throw ArgumentError("synth_blobs: k must be >= 1");
  if (per_cluster < 1) throw ArgumentError("synth_blobs: per_cluster must be >= 1");
  if (!(separation > 0.0)) throw ArgumentError("synth_blobs: separation must be > 0");
  if (!(spread > 0.0)) throw ArgumentError("synth_blobs: spread must be > 0");

  // Cluster centers on a cubic lattice with pitch `separation`; distinct
  // lattice sites are never closer than one pitch.
  const int m = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(k))));
  const Eigen::Index n = static_cast<Eigen::Index>(k) * per_cluster;

  PointCloud out;
  out.coords.resize(n, 3);
  out.labels.emplace(static_cast<std::size_t>(n));
  auto rng = make_rng(seed, Stream::kSynth);
  std::normal_distribution<double> jitter(0.0, 1.0);

  Eigen::Index row = 0;
  for (int c = 0; c < k; ++c) {
    const Eigen::RowVector3d center(separation * (c % m), separation * ((c / m) % m),
                                    separation * (c / (m * m)));
    for (int p = 0; p < per_cluster; ++p, ++row) {
      for (Eigen::Index j = 0; j < 3; ++j) {
        out.coords(row, j) = center(j) + spread * jitter(rng);
      }
      (*out.labels)[static_cast<std::size_t>(row)] = c;
    }
  }
  return out;
}

}  // namespace hyperseg
