#include "sawkit/lm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sawkit/error.hpp"

namespace sawkit::lm {

namespace {

Eigen::VectorXd column(const ResidualFn& fn, const Eigen::VectorXd& x, const Eigen::VectorXd& r0,
                       Eigen::Index j, double diff_step, const ProjectFn& project) {
  const double h = diff_step * std::max(std::abs(x[j]), 1.0);
  Eigen::VectorXd xp = x, xm = x;
  xp[j] += h;
  xm[j] -= h;
  if (project) {
    project(xp);
    project(xm);
  }
  Eigen::VectorXd rp(r0.size()), rm(r0.size());
  const bool okp = xp[j] != x[j] && fn(xp, rp);
  const bool okm = xm[j] != x[j] && fn(xm, rm);
  if (okp && okm) return (rp - rm) / (xp[j] - xm[j]);
  if (okp) return (rp - r0) / (xp[j] - x[j]);
  if (okm) return (r0 - rm) / (x[j] - xm[j]);
  return Eigen::VectorXd::Zero(r0.size());
}

}  // namespace

Eigen::MatrixXd numeric_jacobian(const ResidualFn& fn, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& r0, double diff_step,
                                 JacobianBackend backend, const ProjectFn& project) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd jac(r0.size(), n);
  if (backend == JacobianBackend::openmp) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) jac.col(j) = column(fn, x, r0, j, diff_step, project);
  } else {
    for (Eigen::Index j = 0; j < n; ++j) jac.col(j) = column(fn, x, r0, j, diff_step, project);
  }
  return jac;
}

Eigen::MatrixXd floored_inverse(const Eigen::MatrixXd& m, double rel_floor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  const double top = std::max(ev.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double floor = top * rel_floor;
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = 1.0 / std::max(ev[i], floor);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

Result minimize(const ResidualFn& fn, Eigen::VectorXd x0, const Options& options,
                const ProjectFn& project, const JacobianFn& jacobian) {
  auto jac_at = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& r) {
    Eigen::MatrixXd j;
    if (jacobian)
      jacobian(x, r, j);
    else
      j = numeric_jacobian(fn, x, r, options.diff_step, options.backend, project);
    return j;
  };

  Result res;
  if (project) project(x0);
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd r;
  if (!fn(x, r)) throw FitError("initial parameters are infeasible");
  double cost = r.squaredNorm();
  if (!std::isfinite(cost)) throw FitError("non-finite residual at initial parameters");
  res.accepted_costs.push_back(cost);

  double lambda = options.initial_lambda;
  const double lambda_max = 1e16;
  int it = 0;
  bool converged = cost == 0.0;

  while (!converged && it < options.max_iterations) {
    ++it;
    const Eigen::MatrixXd jac = jac_at(x, r);
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    Eigen::VectorXd d = a.diagonal();
    const double dmax = std::max(d.maxCoeff(), std::numeric_limits<double>::min());
    for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = std::max(d[i], 1e-12 * dmax);

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd damped = a;
      damped.diagonal() += lambda * d;
      Eigen::VectorXd step = damped.ldlt().solve(-g);
      Eigen::VectorXd trial = x + step;
      if (project) {
        project(trial);
        // Coordinates the projection held in place are frozen and the step is
        // re-solved over the rest; otherwise a bound soaks up the step.
        Eigen::VectorXd rhs = -g;
        bool blocked = false;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
          if (trial[i] == x[i] && step[i] != 0.0) {
            damped.row(i).setZero();
            damped.col(i).setZero();
            damped(i, i) = 1.0;
            rhs[i] = 0.0;
            blocked = true;
          }
        }
        if (blocked) {
          step = damped.ldlt().solve(rhs);
          trial = x + step;
          project(trial);
        }
      }
      const double step_norm = (trial - x).norm();
      if (!std::isfinite(step_norm)) {
        lambda *= 10.0;
        if (lambda > lambda_max) break;
        continue;
      }
      if (step_norm < options.step_tol * (1.0 + x.norm())) {
        converged = true;
        break;
      }
      Eigen::VectorXd r_trial(r.size());
      const bool ok = fn(trial, r_trial);
      const double cost_trial = ok ? r_trial.squaredNorm() : std::numeric_limits<double>::infinity();
      if (ok && std::isfinite(cost_trial) && cost_trial < cost) {
        const double rel = (cost - cost_trial) / cost;
        x = std::move(trial);
        r = std::move(r_trial);
        cost = cost_trial;
        res.accepted_costs.push_back(cost);
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
        if (rel < options.rel_cost_tol || cost == 0.0) converged = true;
      } else {
        lambda *= 10.0;
        if (lambda > lambda_max) break;
      }
    }
    // No downhill direction left at any damping: x is stationary to working precision.
    if (!accepted && !converged) converged = true;
  }

  res.x = x;
  res.cost = cost;
  res.iterations = it;
  res.converged = converged;
  res.n_residuals = static_cast<int>(r.size());
  res.jacobian = jac_at(x, r);
  const auto m = r.size();
  const auto n = x.size();
  const double s2 = m > n ? cost / static_cast<double>(m - n) : 0.0;
  res.covariance = s2 * floored_inverse(res.jacobian.transpose() * res.jacobian);
  return res;
}

}  // namespace sawkit::lm
