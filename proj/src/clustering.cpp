#include "hyperseg/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hyperseg/errors.hpp"
#include "hyperseg/kernels.hpp"
#include "hyperseg/rng.hpp"
#include "hyperseg/spectral.hpp"

namespace hyperseg {

int select_components(const Eigen::VectorXd& sigma_sorted, int max_e, int fallback_e) {
  const auto len = static_cast<int>(sigma_sorted.size());
  if (len == 0) throw ArgumentError("select_components: empty coefficient vector");

  int best_r = 0;
  double best_ratio = 0.0;
  const int last = std::min(max_e, len - 1);
  for (int r = 1; r <= last; ++r) {
    const double ratio = sigma_sorted(r - 1) / std::max(sigma_sorted(r), 1e-12);
    if (ratio > best_ratio) {  // ties keep the smallest r
      best_ratio = ratio;
      best_r = r;
    }
  }
  if (best_ratio >= 5.0) return best_r;
  return std::clamp(fallback_e, 1, len);
}

namespace {

// Draws an index with probability proportional to weight (fixed serial
// scan, so the result is reproducible). All-zero weights fall back to a
// uniform draw.
Eigen::Index weighted_draw(const Eigen::VectorXd& weights, std::mt19937_64& rng) {
  const double total = weights.sum();
  if (total <= 0.0) {
    std::uniform_int_distribution<Eigen::Index> uniform(0, weights.size() - 1);
    return uniform(rng);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double target = unit(rng) * total;
  double cumulative = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    cumulative += weights(i);
    if (target < cumulative) return i;
  }
  return weights.size() - 1;
}

// Greedy D^2-weighted seeding: every new centroid is drawn from several
// D^2-weighted candidates and the one minimizing the resulting potential
// wins.
Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& points, int k, std::mt19937_64& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centroids(k, points.cols());

  std::uniform_int_distribution<Eigen::Index> uniform(0, n - 1);
  centroids.row(0) = points.row(uniform(rng));

  Eigen::VectorXd d2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  const int candidates = 2 + static_cast<int>(std::floor(std::log(static_cast<double>(k))));
  for (int c = 1; c < k; ++c) {
    Eigen::Index best_idx = 0;
    double best_potential = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_d2;
    for (int trial = 0; trial < candidates; ++trial) {
      const Eigen::Index idx = weighted_draw(d2, rng);
      const Eigen::VectorXd trial_d2 =
          d2.cwiseMin((points.rowwise() - points.row(idx)).rowwise().squaredNorm());
      const double potential = trial_d2.sum();
      if (potential < best_potential) {
        best_potential = potential;
        best_idx = idx;
        best_d2 = trial_d2;
      }
    }
    centroids.row(c) = points.row(best_idx);
    d2 = best_d2;
  }
  return centroids;
}

// Moves one not-yet-consumed point (the farthest from its centroid) into
// each empty cluster; repeats until every cluster is populated.
void fill_empty_clusters(const Eigen::MatrixXd& points, Eigen::MatrixXd& centroids,
                         std::vector<int>& assignment, Eigen::VectorXd& dist2,
                         std::vector<Eigen::Index>& counts) {
  const int k = static_cast<int>(centroids.rows());
  std::vector<bool> consumed(static_cast<std::size_t>(points.rows()), false);
  for (int round = 0; round < k; ++round) {
    int empty = -1;
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) {
        empty = c;
        break;
      }
    }
    if (empty < 0) return;

    Eigen::Index farthest = -1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (consumed[static_cast<std::size_t>(i)]) continue;
      if (dist2(i) > best) {  // ties keep the lowest index
        best = dist2(i);
        farthest = i;
      }
    }

    const int old = assignment[static_cast<std::size_t>(farthest)];
    counts[static_cast<std::size_t>(old)] -= 1;
    counts[static_cast<std::size_t>(empty)] += 1;
    assignment[static_cast<std::size_t>(farthest)] = empty;
    centroids.row(empty) = points.row(farthest);
    dist2(farthest) = 0.0;
    consumed[static_cast<std::size_t>(farthest)] = true;
  }
}

}  // namespace

KmeansOutput kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, int max_iter,
                    std::optional<double> tol) {
  const Eigen::Index n = points.rows();
  if (k < 1) throw ArgumentError("kmeans: k must be >= 1");
  if (k > n) {
    throw ArgumentError("kmeans: k = " + std::to_string(k) + " exceeds point count " +
                        std::to_string(n));
  }
  if (max_iter < 1) throw ArgumentError("kmeans: max_iter must be >= 1");
  if (tol && *tol < 0.0) throw ArgumentError("kmeans: tol must be nonnegative");
  if (!points.allFinite()) throw ArgumentError("kmeans: points have non-finite entries");

  auto rng = make_rng(seed, Stream::kKmeans);
  KmeansOutput out;
  out.centroids = seed_centroids(points, k, rng);

  Eigen::VectorXd dist2;
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(k));
  double prev_inertia = std::numeric_limits<double>::infinity();
  double tol_value = tol.value_or(0.0);

  for (int iter = 1; iter <= max_iter; ++iter) {
    kernels::assign_nearest(points, out.centroids, out.assignments, dist2);
    std::fill(counts.begin(), counts.end(), Eigen::Index{0});
    for (Eigen::Index i = 0; i < n; ++i) {
      counts[static_cast<std::size_t>(out.assignments[static_cast<std::size_t>(i)])] += 1;
    }
    fill_empty_clusters(points, out.centroids, out.assignments, dist2, counts);

    out.inertia = dist2.sum();
    out.iterations = iter;
    if (out.inertia > prev_inertia + 1e-9 * (1.0 + prev_inertia)) {
      throw NumericalError("kmeans inertia increased from " + std::to_string(prev_inertia) +
                           " to " + std::to_string(out.inertia));
    }
    if (iter == 1 && !tol) tol_value = 1e-8 * out.inertia;
    if (prev_inertia - out.inertia <= tol_value) break;
    prev_inertia = out.inertia;

    // Centroid update: serial accumulation in point order, so the result
    // does not depend on the thread count.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(out.assignments[static_cast<std::size_t>(i)]) += points.row(i);
    }
    for (int c = 0; c < k; ++c) {
      out.centroids.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

SegmentationResult segment(const PointCloud& cloud, const SegmentationConfig& config) {
  validate(cloud);
  if (config.k < 1 || config.k > cloud.size()) {
    throw ArgumentError("segment: k must lie in [1, N]");
  }

  const CenteredCloud centered = center_rows(cloud);
  SpectrumEstimate spectrum = estimate_spectrum(centered.values);

  CoefficientProblem problem;
  problem.fourier_energy = fourier_energy(centered.values, spectrum);
  problem.beta = config.beta;
  problem.sampled = config.sampled;
  spectrum.coefficients = estimate_coefficients(spectrum, problem);

  // Rank components by coefficient, largest first; the stable sort keeps
  // the eigenvalue order among ties.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(spectrum.basis_size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return spectrum.coefficients(a) > spectrum.coefficients(b);
  });

  Eigen::VectorXd sigma_sorted(spectrum.basis_size());
  for (Eigen::Index r = 0; r < spectrum.basis_size(); ++r) {
    sigma_sorted(r) = spectrum.coefficients(order[static_cast<std::size_t>(r)]);
  }
  const int selected_e =
      select_components(sigma_sorted, config.max_e, config.fallback_e);

  Eigen::MatrixXd embedding(cloud.size(), selected_e);
  for (int r = 0; r < selected_e; ++r) {
    embedding.col(r) = spectrum.components.col(order[static_cast<std::size_t>(r)]);
  }

  const KmeansOutput km = kmeans(embedding, config.k, config.seed, config.kmeans_max_iter,
                                 config.kmeans_tol);
  SegmentationResult result;
  result.assignments = km.assignments;
  result.k = config.k;
  result.selected_e = selected_e;
  result.inertia = km.inertia;
  return result;
}

}  // namespace hyperseg
