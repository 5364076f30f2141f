#include "photomech/newton.hpp"

#include <cstdio>

#include <Eigen/SparseLU>

#include "photomech/errors.hpp"

namespace photomech {

NewtonResult newton_solve(Eigen::VectorXd& x, const ResidualFn& residual,
                          const TangentFn& tangent, double tol, int max_iter,
                          int max_halvings) {
  Eigen::VectorXd r = residual(x);
  double rnorm = r.norm();
  if (rnorm < tol) return {0, rnorm};

  for (int it = 1; it <= max_iter; ++it) {
    Eigen::SparseMatrix<double> T = tangent(x);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(T);
    if (lu.info() != Eigen::Success) throw SingularMatrix("Newton tangent factorization failed");
    Eigen::VectorXd dx = lu.solve(-r);

    // Halving line search on the residual norm; the last trial is accepted
    // even without decrease so the outer loop can still make progress. A
    // trial step that inverts an element counts as an increase.
    double alpha = 1.0;
    Eigen::VectorXd xt, rt;
    double rtnorm = 0;
    for (int h = 0;; ++h) {
      xt = x + alpha * dx;
      bool admissible = true;
      try {
        rt = residual(xt);
        rtnorm = rt.norm();
      } catch (const NonPositiveJacobian&) {
        if (h >= max_halvings) throw;
        admissible = false;
      }
      if ((admissible && rtnorm <= rnorm) || h >= max_halvings) break;
      alpha *= 0.5;
    }
    x = xt;
    r = rt;
    rnorm = rtnorm;
    if (rnorm < tol) return {it, rnorm};
  }
  char msg[96];
  std::snprintf(msg, sizeof msg, "Newton stalled after %d iterations, residual %.3e", max_iter,
                rnorm);
  throw NonConvergence(msg, max_iter, rnorm);
}

}  // namespace photomech
