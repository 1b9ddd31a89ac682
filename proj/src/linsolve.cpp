#include "sgiga/linsolve.hpp"

#include <string>

#include <Eigen/SparseCholesky>

namespace sgiga {

Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                          double tol) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("solve_spd: dimension mismatch");
  const double bnorm = b.norm();
  if (bnorm == 0.0) return Eigen::VectorXd::Zero(b.size());

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower> llt(A);
  if (llt.info() != Eigen::Success)
    throw SolverError("solve_spd: Cholesky breakdown (matrix not positive definite)");

  Eigen::VectorXd c = llt.solve(b);
  constexpr int kMaxRefinements = 3;
  for (int it = 0;; ++it) {
    const Eigen::VectorXd r = b - A * c;
    const double rel = r.norm() / bnorm;
    if (rel <= tol) return c;
    if (it == kMaxRefinements)
      throw SolverError("solve_spd: relative residual " + std::to_string(rel) +
                        " above tolerance after refinement");
    c += llt.solve(r);
  }
}

}  // namespace sgiga
