#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hyperseg/cloud.hpp"
#include "hyperseg/coefficients.hpp"
#include "hyperseg/errors.hpp"
#include "hyperseg/spectral.hpp"
#include "oracles.hpp"

using namespace hyperseg;

namespace {

SpectrumEstimate spectrum_of(const PointCloud& cloud) {
  return estimate_spectrum(center_rows(cloud).values);
}

// Planar rotation used as a hand-built two-component basis; every sampled
// constraint row can then be worked out by hand.
SpectrumEstimate rotation_spectrum(double theta) {
  SpectrumEstimate spectrum;
  spectrum.components.resize(2, 2);
  spectrum.components << std::cos(theta), -std::sin(theta), std::sin(theta),
      std::cos(theta);
  spectrum.gram_eigenvalues = Eigen::Vector2d(1.0, 1.0);
  return spectrum;
}

// Every distinct adjacency-tensor row f_r(i) f_r(j) f_r(k), i <= j <= k.
std::vector<Eigen::VectorXd> all_tensor_rows(const Eigen::MatrixXd& components) {
  std::vector<Eigen::VectorXd> rows;
  const Eigen::Index n = components.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      for (Eigen::Index k = j; k < n; ++k) {
        Eigen::VectorXd a = (components.row(i).array() * components.row(j).array() *
                             components.row(k).array())
                                .matrix()
                                .transpose();
        if (a.lpNorm<Eigen::Infinity>() > 0.0) rows.push_back(std::move(a));
      }
    }
  }
  return rows;
}

double best_feasible_grid_objective(const Eigen::VectorXd& g, double beta,
                                    const std::vector<Eigen::VectorXd>& rows,
                                    double step) {
  const auto cells = static_cast<int>(std::llround(1.0 / step));
  Eigen::VectorXd sigma = Eigen::VectorXd::Ones(g.size());
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= cells; ++i) {
    sigma(1) = static_cast<double>(i) * step;
    for (int j = 0; j <= cells; ++j) {
      sigma(2) = static_cast<double>(j) * step;
      bool feasible = true;
      for (const auto& a : rows) {
        if (a.dot(sigma) < 0.0) {
          feasible = false;
          break;
        }
      }
      if (feasible) best = std::min(best, oracles::coefficient_objective(g, beta, sigma));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("fourier_energy reproduces the Gram eigenvalues") {
  std::mt19937_64 seeds(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CenteredCloud centered =
        center_rows(oracles::random_cloud(5 + static_cast<Eigen::Index>(seeds() % 80),
                                          seeds(), 6.0));
    const SpectrumEstimate spectrum = estimate_spectrum(centered.values);
    const Eigen::VectorXd g = fourier_energy(centered.values, spectrum);
    CHECK((g - spectrum.gram_eigenvalues).lpNorm<Eigen::Infinity>() <=
          1e-9 * spectrum.gram_eigenvalues(0));
  }

  const PointCloud cloud = oracles::random_cloud(20, 1);
  const SpectrumEstimate spectrum = spectrum_of(cloud);
  CHECK_THROWS_AS(fourier_energy(Eigen::MatrixXd::Zero(19, 3), spectrum), ArgumentError);
}

TEST_CASE("total_variation endpoints and dense agreement") {
  const CenteredCloud centered = center_rows(oracles::random_cloud(35, 11, 4.0));
  const SpectrumEstimate spectrum = estimate_spectrum(centered.values);
  const double energy = centered.values.squaredNorm();

  CHECK(total_variation(centered.values, spectrum, Eigen::Vector3d::Ones()) <=
        1e-8 * energy);
  CHECK(total_variation(centered.values, spectrum, Eigen::Vector3d::Zero()) ==
        doctest::Approx(energy).epsilon(1e-12));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    Eigen::VectorXd sigma(3);
    sigma << 1.0, unit(rng), unit(rng);
    const double fast = total_variation(centered.values, spectrum, sigma);
    const double dense =
        oracles::dense_total_variation(centered.values, spectrum.components, sigma);
    CHECK(fast == doctest::Approx(dense).epsilon(1e-10));
  }

  Eigen::VectorXd short_sigma(2);
  short_sigma << 1.0, 0.5;
  CHECK_THROWS_AS(total_variation(centered.values, spectrum, short_sigma), ArgumentError);
}

TEST_CASE("relaxed mode is the closed form") {
  const PointCloud cloud = oracles::random_cloud(25, 7);
  const SpectrumEstimate spectrum = spectrum_of(cloud);

  CoefficientProblem problem;
  problem.fourier_energy = Eigen::Vector3d(4.0, 1.0, 0.0);
  problem.beta = 1.0;
  const Eigen::VectorXd sigma = estimate_coefficients(spectrum, problem);
  CHECK(sigma(0) == 1.0);
  CHECK(sigma(1) == 0.5);
  CHECK(sigma(2) == 0.0);

  // Heavy smoothing drives every free coefficient to zero.
  problem.fourier_energy = Eigen::Vector3d(4.0, 1.0, 0.5);
  problem.beta = 1e12;
  CHECK(estimate_coefficients(spectrum, problem).tail(2).lpNorm<Eigen::Infinity>() <= 1e-6);

  // beta = 0 keeps energetic components at 1 and dead ones at 0.
  problem.beta = 0.0;
  problem.fourier_energy = Eigen::Vector3d(4.0, 2.0, 0.0);
  const Eigen::VectorXd unregularized = estimate_coefficients(spectrum, problem);
  CHECK(unregularized(1) == 1.0);
  CHECK(unregularized(2) == 0.0);

  problem.beta = -0.5;
  CHECK_THROWS_AS(estimate_coefficients(spectrum, problem), ArgumentError);
  problem.beta = 1.0;
  problem.fourier_energy = Eigen::Vector3d(4.0, -1.0, 0.0);
  CHECK_THROWS_AS(estimate_coefficients(spectrum, problem), ArgumentError);
  problem.fourier_energy = Eigen::Vector2d(4.0, 1.0);
  CHECK_THROWS_AS(estimate_coefficients(spectrum, problem), ArgumentError);
}

TEST_CASE("relaxed solution properties over random problems") {
  const PointCloud cloud = oracles::random_cloud(30, 9);
  const SpectrumEstimate spectrum = spectrum_of(cloud);
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Vector3d g(10.0 * unit(rng), 5.0 * unit(rng), unit(rng));
    std::sort(g.data(), g.data() + 3, std::greater<double>());
    const double beta = 0.1 + 9.9 * unit(rng);

    CoefficientProblem problem;
    problem.fourier_energy = g;
    problem.beta = beta;
    const Eigen::VectorXd sigma = estimate_coefficients(spectrum, problem);

    CHECK(sigma(0) == 1.0);
    CHECK((sigma.array() >= 0.0).all());
    CHECK((sigma.array() <= 1.0).all());
    CHECK(sigma(1) >= sigma(2));  // order preserved for sorted energies

    const double mine = oracles::coefficient_objective(g, beta, sigma);
    CHECK(mine <= oracles::grid_best_objective(g, beta, 1e-3) + 1e-6);

    // Common rescaling of energy and smoothing leaves the solution alone.
    CoefficientProblem scaled = problem;
    scaled.fourier_energy = 16.0 * g;
    scaled.beta = 16.0 * beta;
    CHECK(estimate_coefficients(spectrum, scaled) == sigma);
  }
}

TEST_CASE("sampled mode returns the relaxed solution when nothing binds") {
  // All-positive components make every tensor entry positive regardless of
  // sigma, so the sampled constraints can never cut the relaxed solution.
  SpectrumEstimate spectrum;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  spectrum.components.resize(12, 3);
  for (Eigen::Index i = 0; i < 12; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) spectrum.components(i, j) = unit(rng);
  }
  spectrum.gram_eigenvalues = Eigen::Vector3d(6.0, 3.0, 1.0);

  CoefficientProblem problem;
  problem.fourier_energy = Eigen::Vector3d(6.0, 3.0, 1.0);
  problem.beta = 2.0;
  const Eigen::VectorXd relaxed = estimate_coefficients(spectrum, problem);
  problem.sampled = SampledConstraints{100000, 5};
  CHECK(estimate_coefficients(spectrum, problem) == relaxed);
}

TEST_CASE("sampled mode lands on a hand-computed binding constraint") {
  // With the rotation basis, the (0,0,0) triple gives the one binding row:
  // cos^3 + (-sin)^3 sigma_2 >= 0, i.e. sigma_2 <= cot^3(theta).
  const double theta = M_PI / 3.0;
  const SpectrumEstimate spectrum = rotation_spectrum(theta);

  CoefficientProblem problem;
  problem.fourier_energy = Eigen::Vector2d(5.0, 5.0);
  problem.beta = 1.0;
  problem.sampled = SampledConstraints{100000, 2};

  const double bound = std::pow(1.0 / std::tan(theta), 3.0);
  const Eigen::VectorXd sigma = estimate_coefficients(spectrum, problem);
  REQUIRE(sigma.size() == 2);
  CHECK(sigma(0) == 1.0);
  // The relaxed value 5/6 violates the bound, so the optimum is clamped.
  CHECK(sigma(1) == doctest::Approx(bound).epsilon(1e-9));

  for (const auto& a : all_tensor_rows(spectrum.components)) {
    CHECK(a.dot(sigma) >= -1e-9);
  }
}

TEST_CASE("sampled mode reports an infeasible constraint set") {
  // Past ninety degrees the (0,0,0) row forces sigma_2 below zero while the
  // box demands sigma_2 >= 0: no feasible point exists.
  const SpectrumEstimate spectrum = rotation_spectrum(2.0 * M_PI / 3.0);
  CoefficientProblem problem;
  problem.fourier_energy = Eigen::Vector2d(5.0, 5.0);
  problem.beta = 1.0;
  problem.sampled = SampledConstraints{100000, 2};
  CHECK_THROWS_AS(estimate_coefficients(spectrum, problem), ConvergenceError);
}

TEST_CASE("sampled mode beats every feasible grid point on real bases") {
  std::mt19937_64 seeds(57);
  for (int trial = 0; trial < 6; ++trial) {
    const auto n = static_cast<Eigen::Index>(4 + seeds() % 7);
    const SpectrumEstimate spectrum = spectrum_of(oracles::random_cloud(n, seeds(), 3.0));

    CoefficientProblem problem;
    problem.fourier_energy = Eigen::Vector3d(5.0, 5.0, 5.0);
    problem.beta = 1.0;
    problem.sampled = SampledConstraints{100000, seeds()};

    Eigen::VectorXd sigma;
    try {
      sigma = estimate_coefficients(spectrum, problem);
    } catch (const ConvergenceError&) {
      continue;  // infeasible draw: nothing to compare
    }

    const auto rows = all_tensor_rows(spectrum.components);
    for (const auto& a : rows) CHECK(a.dot(sigma) >= -1e-6);

    const double best_grid =
        best_feasible_grid_objective(problem.fourier_energy, problem.beta, rows, 0.01);
    if (std::isfinite(best_grid)) {
      const double mine =
          oracles::coefficient_objective(problem.fourier_energy, problem.beta, sigma);
      CHECK(mine <= best_grid + 1e-4);
    }
  }
}

TEST_CASE("sampled mode rejects bad sample counts and is deterministic") {
  const SpectrumEstimate spectrum = rotation_spectrum(M_PI / 3.0);
  CoefficientProblem problem;
  problem.fourier_energy = Eigen::Vector2d(5.0, 5.0);
  problem.beta = 1.0;
  problem.sampled = SampledConstraints{0, 2};
  CHECK_THROWS_AS(estimate_coefficients(spectrum, problem), ArgumentError);

  problem.sampled = SampledConstraints{100000, 2};
  const Eigen::VectorXd first = estimate_coefficients(spectrum, problem);
  CHECK(estimate_coefficients(spectrum, problem) == first);
}
