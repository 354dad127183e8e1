#include "hyperseg/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace hyperseg::kernels {

int effective_threads() { return omp_get_max_threads(); }

void apply_thread_cap_from_env() {
  const char* env = std::getenv("HYPERSEG_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  long cap = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || cap <= 0) return;  // malformed values are ignored
  if (cap < omp_get_max_threads()) omp_set_num_threads(static_cast<int>(cap));
}

namespace {

// Row i owns every pair (i, j) with j > i and writes both mirror entries,
// so no two iterations touch the same element.
inline void weight_row(const Coords& coords, double inv_delta2, double t, Eigen::Index i,
                       Eigen::MatrixXd& w, Eigen::MatrixXd& s) {
  const Eigen::Index n = coords.rows();
  for (Eigen::Index j = i + 1; j < n; ++j) {
    const double d2 = (coords.row(i) - coords.row(j)).squaredNorm();
    if (d2 <= t) {
      const double wij = std::exp(-d2 * inv_delta2);
      w(i, j) = wij;
      w(j, i) = wij;
      s(i, j) = 1.0;
      s(j, i) = 1.0;
    }
  }
}

inline void assign_row(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                       Eigen::Index i, std::vector<int>& assignment, Eigen::VectorXd& dist2) {
  int best = 0;
  double best_d2 = (points.row(i) - centroids.row(0)).squaredNorm();
  for (Eigen::Index c = 1; c < centroids.rows(); ++c) {
    const double d2 = (points.row(i) - centroids.row(c)).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(c);
    }
  }
  assignment[static_cast<std::size_t>(i)] = best;
  dist2(i) = best_d2;
}

inline double silhouette_of(const Coords& coords, const std::vector<int>& assignment,
                            const std::vector<Eigen::Index>& counts, Eigen::Index i) {
  const int ci = assignment[static_cast<std::size_t>(i)];
  if (counts[static_cast<std::size_t>(ci)] <= 1) return 0.0;

  std::vector<double> sums(counts.size(), 0.0);
  for (Eigen::Index j = 0; j < coords.rows(); ++j) {
    if (j == i) continue;
    sums[static_cast<std::size_t>(assignment[static_cast<std::size_t>(j)])] +=
        (coords.row(i) - coords.row(j)).norm();
  }

  const double a = sums[static_cast<std::size_t>(ci)] /
                   static_cast<double>(counts[static_cast<std::size_t>(ci)] - 1);
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (static_cast<int>(c) == ci || counts[c] == 0) continue;
    b = std::min(b, sums[c] / static_cast<double>(counts[c]));
  }
  if (a == 0.0 && b == 0.0) return 0.0;
  return (b - a) / std::max(a, b);
}

}  // namespace

void gaussian_weights(const Coords& coords, double delta, double t, Eigen::MatrixXd& w,
                      Eigen::MatrixXd& s) {
  const Eigen::Index n = coords.rows();
  const double inv_delta2 = 1.0 / (delta * delta);
  w.setZero(n, n);
  s.setZero(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < n; ++i) weight_row(coords, inv_delta2, t, i, w, s);
}

void gaussian_weights_serial(const Coords& coords, double delta, double t, Eigen::MatrixXd& w,
                             Eigen::MatrixXd& s) {
  const Eigen::Index n = coords.rows();
  const double inv_delta2 = 1.0 / (delta * delta);
  w.setZero(n, n);
  s.setZero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) weight_row(coords, inv_delta2, t, i, w, s);
}

void assign_nearest(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                    std::vector<int>& assignment, Eigen::VectorXd& dist2) {
  const Eigen::Index n = points.rows();
  assignment.resize(static_cast<std::size_t>(n));
  dist2.resize(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) assign_row(points, centroids, i, assignment, dist2);
}

void assign_nearest_serial(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                           std::vector<int>& assignment, Eigen::VectorXd& dist2) {
  const Eigen::Index n = points.rows();
  assignment.resize(static_cast<std::size_t>(n));
  dist2.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) assign_row(points, centroids, i, assignment, dist2);
}

void silhouette_samples(const Coords& coords, const std::vector<int>& assignment,
                        const std::vector<Eigen::Index>& counts, Eigen::VectorXd& s) {
  const Eigen::Index n = coords.rows();
  s.resize(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < n; ++i) s(i) = silhouette_of(coords, assignment, counts, i);
}

void silhouette_samples_serial(const Coords& coords, const std::vector<int>& assignment,
                               const std::vector<Eigen::Index>& counts, Eigen::VectorXd& s) {
  const Eigen::Index n = coords.rows();
  s.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = silhouette_of(coords, assignment, counts, i);
}

}  // namespace hyperseg::kernels
