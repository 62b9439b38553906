#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symdec/genmat.hpp"

namespace symdec {

/// Rows a_k^T omega = b_k slicing the solution set of the commutator system.
struct AffineConstraints {
  CMatrix a;  // d x ell
  CVector b;  // d

  Eigen::Index count() const { return a.rows(); }
};

struct SolveConfig {
  std::uint64_t seed = 0;
  int max_iters = 200;
  // Commutator residual target, relative to 1 + ||C||.
  double residual_tol = 1e-12;
  // Fallback acceptance when the iteration stalls at rounding level.
  double accept_tol = 1e-9;
  int max_restarts = 20;
  double dedup_tol = 1e-6;
  double damping_init = 1e-3;
  double cluster_tol = 1e-6;
  // Monodromy completion in all_solve (slices with d > 0): at most this many
  // loops, stopping after monodromy_stale loops without a new solution.
  int monodromy_loops = 300;
  int monodromy_stale = 40;
  // Decomposition-level knobs.
  int nls_max_iters = 500;
  // Target decomposition error, relative to ||F||.
  double fit_tol = 1e-10;
  // Full pipeline attempts (fresh seed streams) before giving up.
  int attempts = 3;
  bool random_transform = false;
};

/// Stacked commutators [M_i, M_j] of companion(C + N(omega)) followed by a omega - b.
CVector residual_map(const GenMatrixParam& param, const AffineConstraints& ac, const CVector& omega);

/// Analytic (complex) Jacobian of residual_map; exact since the map is quadratic.
CMatrix residual_jacobian(const GenMatrixParam& param, const AffineConstraints& ac,
                          const CVector& omega);

/// Levenberg-Marquardt from omega0, then from seeded random starts, until
/// ||residual|| <= residual_tol * (1 + ||C||). Throws NoConvergence otherwise.
CVector numeric_solve(const GenMatrixParam& param, const AffineConstraints& ac,
                      const CVector& omega0, const SolveConfig& cfg);

/// Multi-start solve from cfg.max_restarts complex-normal starts at log-uniform
/// scales, then, when constraints are present, monodromy loops of the right-hand
/// side b that carry known solutions to new ones. Solutions whose companion zero
/// sets agree within dedup_tol (optimal matching) are merged.
/// Extra starting points (e.g. projected warm starts) are tried before the random ones.
std::vector<CVector> all_solve(const GenMatrixParam& param, const AffineConstraints& ac,
                               const SolveConfig& cfg, std::span<const CVector> warm_starts = {});

/// Follows the solution omega of the system with right-hand side b_from along the
/// straight segment to b_to (predictor-corrector). Empty on path failure.
std::optional<CVector> track_slice(const GenMatrixParam& param, const CMatrix& a,
                                   const CVector& b_from, const CVector& b_to, CVector omega,
                                   double tol);

AffineConstraints random_affine(std::size_t ell, std::size_t d, std::uint64_t seed);

/// Distance between two point sets of equal size under the optimal matching,
/// each pair measured as |a - b| / (1 + |a|) (infinity on size mismatch).
double zero_set_distance(const std::vector<CVector>& a, const std::vector<CVector>& b);

}  // namespace symdec
