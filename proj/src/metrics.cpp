#include "hyperseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "hyperseg/errors.hpp"
#include "hyperseg/kernels.hpp"

namespace hyperseg {

namespace {

// Compacts arbitrary nonnegative ids to 0..m-1 (ascending id order).
std::vector<int> compact_ids(const std::vector<int>& ids, std::map<int, int>& mapping) {
  std::vector<int> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0) throw ArgumentError("ids must be nonnegative");
    auto [it, inserted] = mapping.try_emplace(ids[i], 0);
    (void)it;
    (void)inserted;
    out[i] = 0;  // filled after the mapping is complete
  }
  int next = 0;
  for (auto& [id, compact] : mapping) compact = next++;
  for (std::size_t i = 0; i < ids.size(); ++i) out[i] = mapping.at(ids[i]);
  return out;
}

// Minimum-cost perfect matching on a square cost matrix via the standard
// O(n^3) potentials algorithm (rows and columns are 1-based internally).
// Returns for each column the matched row, both 0-based.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> match(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const int i0 = match[static_cast<std::size_t>(j0)];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_of_col(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    row_of_col[static_cast<std::size_t>(j - 1)] = match[static_cast<std::size_t>(j)] - 1;
  }
  return row_of_col;
}

}  // namespace

double silhouette(const Coords& coords, const std::vector<int>& assignment) {
  const Eigen::Index n = coords.rows();
  if (static_cast<Eigen::Index>(assignment.size()) != n) {
    throw ArgumentError("assignment length does not match point count");
  }
  if (n < 2) throw MetricError("silhouette needs at least 2 points");

  int max_id = 0;
  for (int a : assignment) {
    if (a < 0) throw ArgumentError("cluster ids must be nonnegative");
    max_id = std::max(max_id, a);
  }
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(max_id) + 1, 0);
  for (int a : assignment) counts[static_cast<std::size_t>(a)] += 1;

  int non_empty = 0;
  for (Eigen::Index c : counts) non_empty += c > 0 ? 1 : 0;
  if (non_empty < 2) throw MetricError("silhouette needs at least 2 non-empty clusters");

  Eigen::VectorXd samples;
  kernels::silhouette_samples(coords, assignment, counts, samples);
  return samples.mean();
}

double matched_accuracy(const std::vector<int>& truth, const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) {
    throw ArgumentError("truth and predicted label vectors differ in length");
  }
  if (truth.empty()) throw ArgumentError("matched_accuracy needs at least one point");

  std::map<int, int> truth_ids;
  std::map<int, int> pred_ids;
  const std::vector<int> t = compact_ids(truth, truth_ids);
  const std::vector<int> p = compact_ids(predicted, pred_ids);
  if (truth_ids.size() > 64 || pred_ids.size() > 64) {
    throw ArgumentError("label alphabets are capped at 64 distinct values");
  }

  const int m = static_cast<int>(std::max(truth_ids.size(), pred_ids.size()));
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t i = 0; i < t.size(); ++i) counts(p[i], t[i]) += 1.0;

  const std::vector<int> row_of_col = min_cost_assignment(-counts);
  double matched = 0.0;
  for (int j = 0; j < m; ++j) matched += counts(row_of_col[static_cast<std::size_t>(j)], j);
  return matched / static_cast<double>(truth.size());
}

std::vector<CurvePoint> eigencurve(const Eigen::VectorXd& descending) {
  if (descending.size() == 0) throw ArgumentError("eigencurve: empty input");
  const auto n = static_cast<double>(descending.size());
  const double lead = descending(0);

  std::vector<CurvePoint> curve(static_cast<std::size_t>(descending.size()));
  for (Eigen::Index i = 0; i < descending.size(); ++i) {
    curve[static_cast<std::size_t>(i)].pos = static_cast<double>(i + 1) / n;
    curve[static_cast<std::size_t>(i)].value =
        lead > 0.0 ? std::max(descending(i) / lead, 0.0) : 0.0;
  }
  return curve;
}

double eigengap(const std::vector<CurvePoint>& curve, int index) {
  if (index < 1 || static_cast<std::size_t>(index) >= curve.size()) {
    throw ArgumentError("eigengap index " + std::to_string(index) + " outside [1, " +
                        std::to_string(curve.size() - 1) + "]");
  }
  return curve[static_cast<std::size_t>(index - 1)].value -
         curve[static_cast<std::size_t>(index)].value;
}

}  // namespace hyperseg
