#pragma once

#include <stdexcept>

#include <Eigen/SparseCore>

namespace sgiga {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves A c = b for sparse symmetric positive definite A, to relative
/// residual ||A c - b|| / ||b|| <= tol.
///
/// Sparse Cholesky (AMD ordering) followed by at most a few steps of
/// iterative refinement. Throws SolverError on a non-positive pivot or if the
/// residual contract cannot be met.
Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                          double tol = 1e-10);

}  // namespace sgiga
