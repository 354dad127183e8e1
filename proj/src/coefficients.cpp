#include "hyperseg/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "hyperseg/errors.hpp"
#include "hyperseg/rng.hpp"

namespace hyperseg {

Eigen::VectorXd fourier_energy(const Coords& centered, const SpectrumEstimate& spectrum) {
  if (centered.rows() != spectrum.n_points()) {
    throw ArgumentError("centered matrix row count does not match spectrum size");
  }
  const Eigen::MatrixXd projected = spectrum.components.transpose() * centered;
  return projected.rowwise().squaredNorm();
}

double total_variation(const Coords& centered, const SpectrumEstimate& spectrum,
                       const Eigen::VectorXd& sigma) {
  if (centered.rows() != spectrum.n_points()) {
    throw ArgumentError("centered matrix row count does not match spectrum size");
  }
  if (sigma.size() != spectrum.basis_size()) {
    throw ArgumentError("sigma length " + std::to_string(sigma.size()) +
                        " does not match basis size " +
                        std::to_string(spectrum.basis_size()));
  }

  double tv = 0.0;
  for (Eigen::Index col = 0; col < 3; ++col) {
    const Eigen::VectorXd y = spectrum.components.transpose() * centered.col(col);
    tv += ((1.0 - sigma.array()).square() * y.array().square()).sum();
    // Energy outside the retained span is untouched by the supporting matrix.
    tv += std::max(0.0, centered.col(col).squaredNorm() - y.squaredNorm());
  }
  return tv;
}

namespace {

Eigen::VectorXd relaxed_solution(const Eigen::VectorXd& g, double beta) {
  Eigen::VectorXd sigma(g.size());
  sigma(0) = 1.0;
  for (Eigen::Index r = 1; r < g.size(); ++r) {
    const double denom = g(r) + beta;
    sigma(r) = denom > 0.0 ? std::clamp(g(r) / denom, 0.0, 1.0) : 0.0;
  }
  return sigma;
}

// Unique sampled adjacency-tensor rows a with a[r] = f_r(i1) f_r(i2) f_r(i3).
// The entry is symmetric in the indices, so triples are deduplicated as
// multisets; rows are kept in draw order for determinism.
std::vector<Eigen::VectorXd> sampled_rows(const SpectrumEstimate& spectrum,
                                          const SampledConstraints& sampled) {
  if (sampled.n_samples < 1) throw ArgumentError("n_samples must be >= 1");
  const Eigen::Index n = spectrum.n_points();
  const Eigen::Index e = spectrum.basis_size();

  auto rng = make_rng(sampled.seed, Stream::kSampledQp);
  std::uniform_int_distribution<std::uint64_t> pick(0, static_cast<std::uint64_t>(n) - 1);

  std::unordered_set<std::uint64_t> seen;
  std::vector<Eigen::VectorXd> rows;
  for (std::int64_t draw = 0; draw < sampled.n_samples; ++draw) {
    std::uint64_t idx[3] = {pick(rng), pick(rng), pick(rng)};
    std::sort(idx, idx + 3);
    const std::uint64_t key =
        (idx[0] * static_cast<std::uint64_t>(n) + idx[1]) * static_cast<std::uint64_t>(n) +
        idx[2];
    if (!seen.insert(key).second) continue;

    Eigen::VectorXd a(e);
    for (Eigen::Index r = 0; r < e; ++r) {
      a(r) = spectrum.components(static_cast<Eigen::Index>(idx[0]), r) *
             spectrum.components(static_cast<Eigen::Index>(idx[1]), r) *
             spectrum.components(static_cast<Eigen::Index>(idx[2]), r);
    }
    if (a.lpNorm<Eigen::Infinity>() > 0.0) rows.push_back(std::move(a));
  }
  return rows;
}

bool any_violation(const std::vector<Eigen::VectorXd>& rows, const Eigen::VectorXd& sigma) {
  for (const auto& a : rows) {
    if (a.dot(sigma) < -1e-9) return true;
  }
  return false;
}

[[noreturn]] void throw_infeasible() {
  throw ConvergenceError(
      "sampled-mode QP cannot converge: the sampled constraint set is infeasible "
      "with sigma_1 pinned to 1");
}

// Feasible set of the single free coefficient: [0,1] cut by every halfline
// a0 + a1 x >= 0.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  explicit Interval(const std::vector<Eigen::VectorXd>& rows) {
    for (const auto& a : rows) {
      if (a(1) > 0.0) {
        lo = std::max(lo, -a(0) / a(1));
      } else if (a(1) < 0.0) {
        hi = std::min(hi, -a(0) / a(1));
      } else if (a(0) < 0.0) {
        throw_infeasible();
      }
    }
    if (lo > hi) throw_infeasible();
  }

  Eigen::VectorXd project(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(1);
    out(0) = std::clamp(x(0), lo, hi);
    return out;
  }
};

// Feasible set of two free coefficients: the unit square clipped by every
// halfplane a0 + a1 x + a2 y >= 0 (Sutherland-Hodgman), kept as a convex
// CCW polygon. Projection is exact: the point itself when inside, else the
// nearest point over all edges.
struct Polygon {
  std::vector<Eigen::Vector2d> verts;
  bool has_interior = false;

  explicit Polygon(const std::vector<Eigen::VectorXd>& rows) {
    verts = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    for (const auto& a : rows) {
      clip(Eigen::Vector2d(a(1), a(2)), -a(0));
      if (verts.empty()) throw_infeasible();
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const auto& p = verts[i];
      const auto& q = verts[(i + 1) % verts.size()];
      area2 += p.x() * q.y() - q.x() * p.y();
    }
    has_interior = area2 > 1e-18;
  }

  void clip(const Eigen::Vector2d& normal, double offset) {
    std::vector<Eigen::Vector2d> out;
    out.reserve(verts.size() + 1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Eigen::Vector2d& a = verts[i];
      const Eigen::Vector2d& b = verts[(i + 1) % verts.size()];
      const double fa = normal.dot(a) - offset;
      const double fb = normal.dot(b) - offset;
      if (fa >= 0.0) out.push_back(a);
      if ((fa >= 0.0) != (fb >= 0.0)) out.push_back(a + (fa / (fa - fb)) * (b - a));
    }
    verts = std::move(out);
  }

  Eigen::VectorXd project(const Eigen::VectorXd& x) const {
    const Eigen::Vector2d p(x(0), x(1));
    if (has_interior) {
      bool inside = true;
      for (std::size_t i = 0; i < verts.size() && inside; ++i) {
        const Eigen::Vector2d& a = verts[i];
        const Eigen::Vector2d& b = verts[(i + 1) % verts.size()];
        const Eigen::Vector2d edge = b - a;
        inside = edge.x() * (p.y() - a.y()) - edge.y() * (p.x() - a.x()) >= -1e-12;
      }
      if (inside) return x;
    }
    Eigen::Vector2d best = verts.front();
    double best_d2 = (p - best).squaredNorm();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Eigen::Vector2d& a = verts[i];
      const Eigen::Vector2d& b = verts[(i + 1) % verts.size()];
      const Eigen::Vector2d edge = b - a;
      const double len2 = edge.squaredNorm();
      const double s = len2 > 0.0 ? std::clamp(edge.dot(p - a) / len2, 0.0, 1.0) : 0.0;
      const Eigen::Vector2d cand = a + s * edge;
      const double d2 = (p - cand).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = cand;
      }
    }
    return best;
  }
};

// Projected gradient descent on the free coefficients (sigma_1 stays 1).
// The quadratic objective sum_r (1-sigma_r)^2 G_r + beta sigma^T sigma has
// gradient Lipschitz constant L = 2 max_r (G_r + beta); the fixed 1/L step
// plus an exact projection gives monotone convergence on feasible sets.
template <typename Feasible>
Eigen::VectorXd descend(const Eigen::VectorXd& g, double beta, const Feasible& feasible,
                        const Eigen::VectorXd& start_free) {
  const Eigen::Index d = start_free.size();
  const Eigen::VectorXd gf = g.tail(d);
  const auto objective = [&](const Eigen::VectorXd& x) {
    return ((1.0 - x.array()).square() * gf.array()).sum() + beta * x.squaredNorm();
  };

  double lipschitz = 0.0;
  for (Eigen::Index r = 0; r < d; ++r) lipschitz = std::max(lipschitz, 2.0 * (gf(r) + beta));
  Eigen::VectorXd x = feasible.project(start_free);
  if (lipschitz == 0.0) return x;  // objective is constant in the free coefficients

  double q = objective(x);
  for (int iter = 0; iter < 100000; ++iter) {
    const Eigen::VectorXd grad =
        2.0 * (x.array() * (gf.array() + beta) - gf.array()).matrix();
    x = feasible.project(x - grad / lipschitz);
    const double q_next = objective(x);
    if (std::abs(q - q_next) <= 1e-8 * std::max(1.0, std::abs(q_next))) return x;
    q = q_next;
  }
  throw ConvergenceError("sampled-mode QP did not reach the objective tolerance in 1e5 "
                         "projected gradient iterations");
}

}  // namespace

Eigen::VectorXd estimate_coefficients(const SpectrumEstimate& spectrum,
                                      const CoefficientProblem& problem) {
  if (problem.fourier_energy.size() != spectrum.basis_size()) {
    throw ArgumentError("fourier_energy length does not match spectrum basis size");
  }
  if ((problem.fourier_energy.array() < 0.0).any()) {
    throw ArgumentError("fourier_energy must be nonnegative");
  }
  if (problem.beta < 0.0) throw ArgumentError("beta must be nonnegative");

  const Eigen::VectorXd& g = problem.fourier_energy;
  Eigen::VectorXd sigma = relaxed_solution(g, problem.beta);
  if (!problem.sampled) return sigma;

  const auto rows = sampled_rows(spectrum, *problem.sampled);
  if (!any_violation(rows, sigma)) return sigma;

  const Eigen::VectorXd start = sigma.tail(sigma.size() - 1);
  Eigen::VectorXd solved;
  if (start.size() == 1) {
    solved = descend(g, problem.beta, Interval(rows), start);
  } else {
    solved = descend(g, problem.beta, Polygon(rows), start);
  }
  sigma.tail(solved.size()) = solved;

  for (const auto& a : rows) {
    if (a.dot(sigma) < -1e-6) {
      throw ConvergenceError("sampled-mode QP result violates a sampled constraint");
    }
  }
  return sigma;
}

}  // namespace hyperseg
