#pragma once

#include <Eigen/Core>

#include "hyperseg/cloud.hpp"

namespace hyperseg {

/// Estimated hypergraph spectral space of a point cloud.
///
/// `components` holds the retained orthonormal spectral components as
/// columns, ordered by non-increasing Gram eigenvalue. Because every
/// row-centered cloud has a Gram matrix of rank <= 2, at most min(N, 3)
/// components carry information and only those are kept; the N x N Gram
/// matrix is never formed.
///
/// `coefficients` (the normalized frequency coefficients sigma_r, with
/// sigma_1 = 1) start empty and are populated by coefficient estimation.
struct SpectrumEstimate {
  Eigen::MatrixXd components;        // N x E_basis, orthonormal columns
  Eigen::VectorXd gram_eigenvalues;  // E_basis, non-increasing, >= 0
  Eigen::VectorXd coefficients;      // empty until estimated; values in [0, 1]

  Eigen::Index n_points() const { return components.rows(); }
  Eigen::Index basis_size() const { return components.cols(); }
  bool has_coefficients() const {
    return coefficients.size() == components.cols() && coefficients.size() > 0;
  }
};

struct CenteredCloud {
  Coords values;              // each row sums to zero
  Eigen::VectorXd row_means;  // subtracted per-point means
};

/// Subtracts each point's mean coordinate from its row.
CenteredCloud center_rows(const PointCloud& cloud);

/// Estimates the spectral components and Gram eigenvalues from the row
/// centered observation matrix via its thin SVD: if centered = U S W^T,
/// the Gram matrix centered * centered^T has eigenvectors U and
/// eigenvalues S^2. Columns are sign-fixed so the entry of largest
/// magnitude is positive (ties: lowest index), which makes the result
/// reproducible bit for bit.
SpectrumEstimate estimate_spectrum(const Coords& centered);

/// Applies the supporting-matrix operator V diag(sigma) V^T to a signal,
/// component by component. Requires populated coefficients.
Eigen::VectorXd apply_supporting_matrix(const Eigen::VectorXd& signal,
                                        const SpectrumEstimate& spectrum);

/// tau-step spectral shift V diag(sigma)^tau V^T applied to a signal.
/// tau = 0 projects onto the retained span with unit weights.
Eigen::VectorXd shift(const Eigen::VectorXd& signal, const SpectrumEstimate& spectrum,
                      int tau);

struct StationarityDiagnostic {
  double mean_norm = 0.0;      // max-norm of the per-node ensemble means
  double offdiag_ratio = 0.0;  // off-diagonal vs diagonal energy of V^T C V
  bool pass = false;
};

/// Tests an ensemble of signal observations (columns) for weak-sense
/// stationarity against the estimated spectrum: the mean must vanish and
/// the empirical covariance must be diagonalized by the retained
/// components, both within tol.
StationarityDiagnostic check_stationarity(const Eigen::MatrixXd& ensemble,
                                          const SpectrumEstimate& spectrum, double tol);

}  // namespace hyperseg
