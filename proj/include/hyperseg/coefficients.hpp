#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "hyperseg/spectral.hpp"

namespace hyperseg {

/// Random subset of the nonnegative adjacency-tensor-entry constraints.
struct SampledConstraints {
  std::int64_t n_samples = 100000;
  std::uint64_t seed = 0;
};

/// Inputs of the smoothness-regularized coefficient estimation.
///
/// fourier_energy[r] = sum_i (f_r . X_i')^2, the spectral energy of the
/// three centered coordinate signals on component r; it equals the r-th
/// Gram eigenvalue. `sampled` empty means the relaxed mode (tensor
/// constraints dropped), which has a closed-form solution.
struct CoefficientProblem {
  Eigen::VectorXd fourier_energy;
  double beta = 1.0;
  std::optional<SampledConstraints> sampled;
};

/// Spectral energy G_r of the centered coordinate columns.
Eigen::VectorXd fourier_energy(const Coords& centered, const SpectrumEstimate& spectrum);

/// Total variation of the cloud under the supporting matrix built from
/// `sigma`: sum_i ||X_i' - V diag(sigma) V^T X_i'||^2.
double total_variation(const Coords& centered, const SpectrumEstimate& spectrum,
                       const Eigen::VectorXd& sigma);

/// Estimates the normalized frequency coefficients by minimizing
/// TV + beta * sigma^T sigma subject to 0 <= sigma_r <= sigma_1 = 1.
///
/// Relaxed mode: sigma_r = G_r / (G_r + beta) per component (closed form;
/// G_r = 0 with beta = 0 yields 0). Sampled mode additionally draws random
/// index triples and, if any sampled tensor entry is negative at the
/// relaxed solution, solves the constrained quadratic program by projected
/// gradient descent; throws ConvergenceError if 1e5 iterations do not
/// reach a 1e-8 objective tolerance (in particular when the sampled
/// constraint set is infeasible).
Eigen::VectorXd estimate_coefficients(const SpectrumEstimate& spectrum,
                                      const CoefficientProblem& problem);

}  // namespace hyperseg
