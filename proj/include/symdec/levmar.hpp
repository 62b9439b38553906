#pragma once

#include <functional>

#include "symdec/types.hpp"

namespace symdec {

/// Fills f(x) and, when jac is non-null, the Jacobian df/dx (real unknowns).
using RealResidualFn =
    std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& f, Eigen::MatrixXd* jac)>;

/// Complex residual holomorphic in x, with its complex Jacobian.
using ResidualFn = std::function<void(const CVector& x, CVector& f, CMatrix* jac)>;

struct LmOptions {
  int max_iters = 200;
  // Stop once ||f|| <= abs_tol.
  double abs_tol = 0.0;
  double damping_init = 1e-3;
};

struct RealLmResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct LmResult {
  CVector x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Levenberg-Marquardt minimisation of ||f(x)||. Damping starts at
/// damping_init * max diag(J^T J), shrinks by 10 on an accepted step and grows
/// by 10 on a rejected one.
RealLmResult levenberg_marquardt(const RealResidualFn& fn, Eigen::VectorXd x0,
                                 const LmOptions& opts);

/// Runs the real iteration on the split x = (Re z, Im z), f = (Re g, Im g).
LmResult levenberg_marquardt(const ResidualFn& fn, CVector z0, const LmOptions& opts);

/// Real split of a complex vector and its inverse.
Eigen::VectorXd split(const CVector& z);
CVector merge(const Eigen::VectorXd& x);

/// Real Jacobian [[Re J, -Im J], [Im J, Re J]] of a holomorphic map.
Eigen::MatrixXd split_jacobian(const CMatrix& jac);

}  // namespace symdec
