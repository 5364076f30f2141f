#pragma once

#include <functional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace photomech {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using TangentFn = std::function<Eigen::SparseMatrix<double>(const Eigen::VectorXd&)>;

struct NewtonResult {
  int iterations = 0;
  double residual_norm = 0;
};

// Damped Newton on a square nonlinear system. The step direction comes from a
// sparse LU solve; the step length is halved (at most max_halvings times)
// while the residual norm increases. Throws SingularMatrix if the tangent
// cannot be factorized and NonConvergence if max_iter steps do not reach tol.
NewtonResult newton_solve(Eigen::VectorXd& x, const ResidualFn& residual,
                          const TangentFn& tangent, double tol, int max_iter,
                          int max_halvings = 8);

}  // namespace photomech
