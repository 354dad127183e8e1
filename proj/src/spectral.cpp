#include "hyperseg/spectral.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>

#include "hyperseg/errors.hpp"
#include "hyperseg/sym_eig.hpp"

namespace hyperseg {

CenteredCloud center_rows(const PointCloud& cloud) {
  validate(cloud);
  CenteredCloud out;
  out.row_means = cloud.coords.rowwise().mean();
  out.values = cloud.coords.colwise() - out.row_means;
  return out;
}

SpectrumEstimate estimate_spectrum(const Coords& centered) {
  const Eigen::Index n = centered.rows();
  if (n < 2) throw ArgumentError("spectrum estimation needs at least 2 points");
  if (!centered.allFinite()) throw ArgumentError("centered matrix has non-finite entries");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);

  SpectrumEstimate spectrum;
  spectrum.components = svd.matrixU();
  spectrum.gram_eigenvalues =
      svd.singularValues().array().square().max(0.0).matrix();

  const double threshold = 1e-12 * static_cast<double>(n);
  if ((spectrum.gram_eigenvalues.array() < threshold).all()) {
    throw DegenerateSpectrumError("all Gram eigenvalues below " + std::to_string(threshold) +
                                  "; cloud carries no signal");
  }

  canonicalize_signs(spectrum.components);
  return spectrum;
}

namespace {

Eigen::VectorXd weighted_projection(const Eigen::VectorXd& signal,
                                    const SpectrumEstimate& spectrum,
                                    const Eigen::VectorXd& weights) {
  if (!spectrum.has_coefficients()) {
    throw StateError("spectrum coefficients are not populated");
  }
  if (signal.size() != spectrum.n_points()) {
    throw ArgumentError("signal length " + std::to_string(signal.size()) +
                        " does not match spectrum size " +
                        std::to_string(spectrum.n_points()));
  }
  return spectrum.components *
         (weights.asDiagonal() * (spectrum.components.transpose() * signal));
}

}  // namespace

Eigen::VectorXd apply_supporting_matrix(const Eigen::VectorXd& signal,
                                        const SpectrumEstimate& spectrum) {
  return weighted_projection(signal, spectrum, spectrum.coefficients);
}

Eigen::VectorXd shift(const Eigen::VectorXd& signal, const SpectrumEstimate& spectrum,
                      int tau) {
  if (tau < 0) throw ArgumentError("shift steps must be nonnegative");
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(spectrum.basis_size());
  for (int step = 0; step < tau; ++step) {
    weights.array() *= spectrum.coefficients.array();
  }
  return weighted_projection(signal, spectrum, weights);
}

StationarityDiagnostic check_stationarity(const Eigen::MatrixXd& ensemble,
                                          const SpectrumEstimate& spectrum, double tol) {
  if (ensemble.cols() < 2) throw ArgumentError("stationarity check needs >= 2 observations");
  if (ensemble.rows() != spectrum.n_points()) {
    throw ArgumentError("ensemble row count does not match spectrum size");
  }

  StationarityDiagnostic diag;
  diag.mean_norm = ensemble.rowwise().mean().lpNorm<Eigen::Infinity>();

  // Projected covariance V^T C V computed as (V^T X)(V^T X)^T / m; the
  // N x N covariance itself is never formed.
  const Eigen::MatrixXd projected = spectrum.components.transpose() * ensemble;
  const Eigen::MatrixXd cov =
      projected * projected.transpose() / static_cast<double>(ensemble.cols());

  const double diag_norm = cov.diagonal().norm();
  const double offdiag_norm =
      std::sqrt(std::max(0.0, cov.squaredNorm() - cov.diagonal().squaredNorm()));
  if (diag_norm > 0.0) {
    diag.offdiag_ratio = offdiag_norm / diag_norm;
  } else {
    diag.offdiag_ratio = offdiag_norm > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }

  diag.pass = diag.mean_norm <= tol && diag.offdiag_ratio <= tol;
  return diag;
}

}  // namespace hyperseg
