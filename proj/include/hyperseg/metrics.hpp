#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <vector>

#include "hyperseg/cloud.hpp"

namespace hyperseg {

/// Mean silhouette over all points, computed exactly (all pairwise
/// distances) in the original coordinate space. Singleton clusters score 0,
/// as does any point with a(i) = b(i) = 0. Throws MetricError unless at
/// least two clusters are non-empty.
double silhouette(const Coords& coords, const std::vector<int>& assignment);

/// Fraction of points whose predicted label matches the true label under
/// the best injective mapping between the two label alphabets (Hungarian
/// assignment on the contingency table). Alphabets are capped at 64 labels.
double matched_accuracy(const std::vector<int>& truth, const std::vector<int>& predicted);

struct CurvePoint {
  double pos = 0.0;    // i / N for the i-th eigenvalue, descending order
  double value = 0.0;  // eigenvalue normalized by the largest
};

/// Normalized eigenvalue decay curve from eigenvalues given in descending
/// order. If the leading value is not positive every point is 0; tiny
/// negative tail values are clamped to 0.
std::vector<CurvePoint> eigencurve(const Eigen::VectorXd& descending);

/// Gap value[index-1] - value[index] on a normalized curve, 1-based index.
double eigengap(const std::vector<CurvePoint>& curve, int index);

/// Median wall-clock seconds over `repeats` calls of fn().
template <typename Fn>
double median_time_seconds(Fn&& fn, int repeats) {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(repeats));
  for (int i = 0; i < repeats; ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  auto n = times.size();
  if (n % 2 == 1) return times[n / 2];
  return 0.5 * (times[n / 2 - 1] + times[n / 2]);
}

}  // namespace hyperseg
