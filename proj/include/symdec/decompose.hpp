#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symdec/syssolve.hpp"

namespace symdec {

enum class DecompositionMode { numeric, all_solutions, reduced };

/// F ~ sum_i (u_i)^{(x)m}.
struct Decomposition {
  std::vector<CVector> vectors;
  double error = 0.0;
  DecompositionMode mode = DecompositionMode::numeric;

  std::size_t length() const { return vectors.size(); }
};

struct NlsResult {
  std::vector<CVector> vectors;
  double residual = 0.0;
};

/// ||sum_i (u_i)^{(x)m} - F|| in the index-cube norm.
double decomposition_error(const SymTensor& F, std::span<const CVector> vectors);

/// Local least-squares fit of r rank-one terms, warm-started from `start`.
NlsResult nls_fit(const SymTensor& F, std::span<const CVector> start, int max_iters = 500,
                  double abs_tol = 0.0);

/// Same, from a seeded complex-normal start.
NlsResult nls_fit(const SymTensor& F, std::size_t r, std::uint64_t seed, int max_iters = 500,
                  double abs_tol = 0.0);

/// Least-squares lambda in sum_i lambda_i (1, v_i)^{(x)m} = F.
CVector weights_from_points(const SymTensor& F, std::span<const CVector> points);

/// u_i = lambda_i^{1/m} (1, v_i) with the principal root, arg in (-pi/m, pi/m].
std::vector<CVector> assemble(const CVector& lambda, std::span<const CVector> points, int m);

/// Numerical decomposition of length r (generic rank when r is empty).
Decomposition decompose_numeric(const SymTensor& F, std::optional<int> r, const SolveConfig& cfg);

/// All decomposing classes reachable by multi-start solving at length r.
std::vector<Decomposition> decompose_all(const SymTensor& F, int r, const SolveConfig& cfg);

/// Repeatedly drops the smallest vector and refits until a fit fails.
Decomposition reduce_length(const SymTensor& F, const Decomposition& dec, const SolveConfig& cfg);

/// Distance between two decompositions modulo permutation and u -> tau u, tau^m = 1:
/// the largest relative vector mismatch under the optimal matching.
double equivalence_distance(std::span<const CVector> a, std::span<const CVector> b, int m);

bool equivalent(std::span<const CVector> a, std::span<const CVector> b, int m, double tol = 1e-6);

/// Haar-random unitary matrix of size k.
CMatrix random_unitary(std::size_t k, std::uint64_t seed);

}  // namespace symdec
