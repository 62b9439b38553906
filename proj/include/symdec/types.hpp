#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace symdec {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Error hierarchy. Everything the library throws derives from Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape or length mismatch between arguments.
struct DimensionError : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

struct IndexError : Error {
  using Error::Error;
};

// Some column system A[F,a] x = b[F,a] has no solution; r is likely below the rank.
struct InconsistentSystem : Error {
  InconsistentSystem(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

// Points whose B0-Vandermonde matrix is (numerically) singular.
struct SingularVandermonde : Error {
  SingularVandermonde(const std::string& what, double condition)
      : Error(what), condition(condition) {}
  double condition;
};

// Iterative solve stopped above its tolerance. Carries the best iterate found
// and, when a caller could assemble one, a best-effort decomposition.
struct NoConvergence : Error {
  NoConvergence(const std::string& what, double best_residual)
      : Error(what), best_residual(best_residual) {}
  double best_residual;
  Eigen::VectorXcd best_omega;
  std::vector<Eigen::VectorXcd> best_vectors;
  double best_error = -1.0;
};

struct NumericalError : Error {
  using Error::Error;
};

// Monomial that cannot be reached by the recovery recursion.
struct StructureError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace symdec
