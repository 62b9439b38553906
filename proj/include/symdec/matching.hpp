#pragma once

#include <vector>

#include <Eigen/Dense>

namespace symdec {

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method).
/// Returns assignment[row] = column.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

/// Largest entry of the cost matrix along the optimal assignment.
double matched_max_cost(const Eigen::MatrixXd& cost);

}  // namespace symdec
