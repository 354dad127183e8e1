#include "hyperseg/sym_eig.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "hyperseg/errors.hpp"

namespace hyperseg {

namespace {

void check_input(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw ArgumentError("eigensolver needs a non-empty square matrix");
  }
  if (!a.allFinite()) throw NumericalError("eigensolver input has non-finite entries");
}

}  // namespace

void canonicalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index lead = 0;
    double best = 0.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double mag = std::abs(vectors(r, c));
      if (mag > best) {
        best = mag;
        lead = r;
      }
    }
    if (best > 0.0 && vectors(lead, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

SymEig sym_eig(const Eigen::MatrixXd& a) {
  check_input(a);
  const auto n = static_cast<lapack_int>(a.rows());

  SymEig out;
  out.vectors = a;  // dsyevd overwrites the input with the eigenvectors
  out.values.resize(a.rows());
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         out.vectors.data(), n, out.values.data());
  if (info != 0) {
    throw NumericalError("dsyevd failed with info=" + std::to_string(info));
  }
  canonicalize_signs(out.vectors);
  return out;
}

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a) {
  check_input(a);
  const auto n = static_cast<lapack_int>(a.rows());

  Eigen::MatrixXd work = a;
  Eigen::VectorXd values(a.rows());
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, values.data());
  if (info != 0) {
    throw NumericalError("dsyevd failed with info=" + std::to_string(info));
  }
  return values;
}

}  // namespace hyperseg
