#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace sawkit::lm {

/// Residual callback. Returns false when x is outside the feasible region;
/// the optimizer then treats the point as infinitely costly.
using ResidualFn = std::function<bool(const Eigen::VectorXd& x, Eigen::VectorXd& r)>;
/// Optional in-place projection onto box bounds, applied to every trial point.
using ProjectFn = std::function<void(Eigen::VectorXd& x)>;
/// Optional Jacobian callback (m x n). When absent, numeric_jacobian is used.
/// r is the residual at x.
using JacobianFn =
    std::function<void(const Eigen::VectorXd& x, const Eigen::VectorXd& r, Eigen::MatrixXd& jac)>;

enum class JacobianBackend { serial, openmp };

struct Options {
  int max_iterations = 200;
  double rel_cost_tol = 1e-10;
  double step_tol = 1e-12;
  double initial_lambda = 1e-3;
  /// Relative central-difference step, scaled by max(|x_j|, 1).
  double diff_step = 1e-6;
  JacobianBackend backend = JacobianBackend::openmp;
};

struct Result {
  Eigen::VectorXd x;
  double cost = 0.0;  ///< sum of squared residuals at x
  int iterations = 0;
  bool converged = false;
  int n_residuals = 0;
  Eigen::MatrixXd jacobian;    ///< at x
  Eigen::MatrixXd covariance;  ///< s^2 (J^T J)^-1, s^2 = cost / (m - n)
  std::vector<double> accepted_costs;
};

/// Central-difference Jacobian, one column per parameter. Columns are
/// independent; the OpenMP backend evaluates them concurrently.
/// Falls back to a one-sided difference when one side is infeasible.
Eigen::MatrixXd numeric_jacobian(const ResidualFn& fn, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& r0, double diff_step,
                                 JacobianBackend backend, const ProjectFn& project = {});

/// Levenberg-Marquardt with Marquardt diagonal scaling. Converged when an
/// accepted step lowers the cost by less than rel_cost_tol relatively, or the
/// step norm falls below step_tol * (1 + |x|).
Result minimize(const ResidualFn& fn, Eigen::VectorXd x0, const Options& options = {},
                const ProjectFn& project = {}, const JacobianFn& jacobian = {});

/// Inverse of a symmetric positive semi-definite matrix with eigenvalues
/// floored at max_eig * rel_floor, so unidentified directions come out with
/// very large (not silently small) variance.
Eigen::MatrixXd floored_inverse(const Eigen::MatrixXd& m, double rel_floor = 1e-14);

}  // namespace sawkit::lm
