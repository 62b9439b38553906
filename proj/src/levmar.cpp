#include "symdec/levmar.hpp"

#include <cmath>

namespace symdec {

Eigen::VectorXd split(const CVector& z) {
  Eigen::VectorXd x(2 * z.size());
  x.head(z.size()) = z.real();
  x.tail(z.size()) = z.imag();
  return x;
}

CVector merge(const Eigen::VectorXd& x) {
  const Eigen::Index k = x.size() / 2;
  CVector z(k);
  z.real() = x.head(k);
  z.imag() = x.tail(k);
  return z;
}

Eigen::MatrixXd split_jacobian(const CMatrix& jac) {
  const Eigen::Index r = jac.rows(), c = jac.cols();
  Eigen::MatrixXd out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = jac.real();
  out.topRightCorner(r, c) = -jac.imag();
  out.bottomLeftCorner(r, c) = jac.imag();
  out.bottomRightCorner(r, c) = jac.real();
  return out;
}

RealLmResult levenberg_marquardt(const RealResidualFn& fn, Eigen::VectorXd x0,
                                 const LmOptions& opts) {
  RealLmResult res;
  res.x = std::move(x0);
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  fn(res.x, f, &jac);
  res.residual = f.norm();
  if (!std::isfinite(res.residual)) return res;
  if (res.residual <= opts.abs_tol || res.x.size() == 0) {
    res.converged = res.residual <= opts.abs_tol;
    return res;
  }

  Eigen::MatrixXd jtj = jac.transpose() * jac;
  Eigen::VectorXd grad = jac.transpose() * f;
  double mu = opts.damping_init * std::max(jtj.diagonal().maxCoeff(), 1e-300);
  Eigen::VectorXd trial_f;
  int rejects = 0;
  for (int it = 0; it < opts.max_iters; ++it) {
    res.iterations = it + 1;
    Eigen::MatrixXd lhs = jtj;
    lhs.diagonal().array() += mu;
    const Eigen::VectorXd step = lhs.ldlt().solve(-grad);
    if (!step.allFinite()) break;
    const Eigen::VectorXd trial = res.x + step;
    fn(trial, trial_f, nullptr);
    const double tr = trial_f.norm();
    if (std::isfinite(tr) && tr < res.residual) {
      res.x = trial;
      res.residual = tr;
      mu = std::max(mu / 10.0, 1e-300);
      rejects = 0;
      if (res.residual <= opts.abs_tol) break;
      fn(res.x, f, &jac);
      jtj.noalias() = jac.transpose() * jac;
      grad.noalias() = jac.transpose() * f;
    } else {
      mu *= 10.0;
      // Stagnation: the step no longer changes x at working precision.
      if (step.norm() <= 1e-15 * (1.0 + res.x.norm()) || ++rejects > 30) break;
    }
  }
  res.converged = res.residual <= opts.abs_tol;
  return res;
}

LmResult levenberg_marquardt(const ResidualFn& fn, CVector z0, const LmOptions& opts) {
  CVector zf;
  CMatrix zj;
  const RealResidualFn real = [&](const Eigen::VectorXd& x, Eigen::VectorXd& f,
                                  Eigen::MatrixXd* jac) {
    fn(merge(x), zf, jac ? &zj : nullptr);
    f = split(zf);
    if (jac) *jac = split_jacobian(zj);
  };
  auto r = levenberg_marquardt(real, split(z0), opts);
  return {merge(r.x), r.residual, r.iterations, r.converged};
}

}  // namespace symdec
