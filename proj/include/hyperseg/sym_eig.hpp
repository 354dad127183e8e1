#pragma once

#include <Eigen/Core>

namespace hyperseg {

/// Eigendecomposition of a dense symmetric matrix, eigenvalues ascending.
/// Columns of `vectors` follow the sign convention used everywhere in this
/// library: the entry of largest magnitude is positive (ties broken by the
/// lowest index).
struct SymEig {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Full eigendecomposition via LAPACK dsyevd (divide and conquer). The
/// lower triangle of `a` is read. Throws NumericalError if the input has
/// non-finite entries or LAPACK fails to converge.
SymEig sym_eig(const Eigen::MatrixXd& a);

/// Eigenvalues only, ascending. Same error contract as sym_eig.
Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a);

/// Flip column signs in place so each column's largest-magnitude entry is
/// positive (ties to the lowest row index). Zero columns are untouched.
void canonicalize_signs(Eigen::MatrixXd& vectors);

}  // namespace hyperseg
