#pragma once

#include <cstdint>
#include <vector>

#include "symdec/genmat.hpp"

namespace symdec {

struct ZeroPoint {
  CVector v;
  int multiplicity = 1;
};

struct ZeroSet {
  std::vector<ZeroPoint> points;
  int total = 0;
  // Largest relative mass of Q* M_i Q below the block-diagonal pattern of T.
  double off_pattern = 0.0;

  bool nondefective() const;
  std::vector<CVector> distinct_points() const;
};

/// Common zeros of the companion family from the Schur form of a random convex
/// combination sum xi_i M_i. Diagonal entries within cluster_tol * (1 + |t|) of
/// each other are merged into one zero whose multiplicity is the cluster size.
ZeroSet cgt_zeros(const CompanionSet& cs, std::uint64_t seed, double cluster_tol = 1e-6);

/// True iff every point v has a unit w with max_i ||M_i^T w - v_i w|| <= tol.
bool stickelberger_check(const CompanionSet& cs, const ZeroSet& zs, double tol);

}  // namespace symdec
