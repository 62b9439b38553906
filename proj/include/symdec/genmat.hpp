#pragma once

#include <span>
#include <vector>

#include "symdec/symtensor.hpp"

namespace symdec {

/// B0 = first r monomials in grlex order; B1 = its border (x_i B0 \ B0), grlex ordered.
struct BasisPair {
  std::size_t n = 0;
  std::vector<MonomialPower> b0;
  std::vector<MonomialPower> b1;

  std::size_t r() const { return b0.size(); }
  long find_b0(const MonomialPower& a) const;
  long find_b1(const MonomialPower& a) const;
};

BasisPair basis_pair(std::size_t n, std::size_t r);

/// Coefficient matrix indexed (beta in B0) x (alpha in B1). Column alpha encodes
/// phi[G,alpha] = sum_beta G(beta,alpha) x^beta - x^alpha.
struct GenMatrix {
  BasisPair basis;
  CMatrix data;

  Poly phi(std::size_t col) const;
};

/// The linear system A[F,alpha] G(:,alpha) = b[F,alpha]: rows gamma in N^n_{m-|alpha|},
/// columns beta in B0.
struct ColumnSystem {
  CMatrix a;
  CVector b;
};

ColumnSystem gen_system(const SymTensor& F, const MonomialPower& alpha, const BasisPair& basis);

/// Affine parameterization G(omega) = C + N(omega) of all generating matrices of F.
struct GenMatrixParam {
  BasisPair basis;
  GenMatrix c;
  // Orthonormal kernel basis of A[F,alpha] per border column.
  std::vector<CMatrix> null_bases;
  // Offset of column alpha's parameters inside omega.
  std::vector<std::size_t> offsets;
  std::size_t omega_len = 0;

  GenMatrix at(const CVector& omega) const;
  /// Least-squares coordinates omega with C + N(omega) closest to G.
  CVector project(const GenMatrix& g) const;
};

GenMatrixParam parameterize(const SymTensor& F, std::size_t r, double tol = 1e-8);

/// Multiplication matrices M_{x_1}(G), ..., M_{x_n}(G), each r x r.
struct CompanionSet {
  std::vector<CMatrix> mats;

  std::size_t num_vars() const { return mats.size(); }
  std::size_t r() const { return mats.empty() ? 0 : static_cast<std::size_t>(mats[0].rows()); }
};

CompanionSet companion(const GenMatrix& g);

/// Stacked entries of [M_i, M_j] for 1 <= i < j <= n (column-major per block).
CVector commutator_residual(const CompanionSet& cs);

/// G with (V) G = W, V rows [v_i]_{B0}, W rows [v_i]_{B1}. Throws SingularVandermonde
/// when cond(V) exceeds 1/tol.
GenMatrix from_points(std::span<const CVector> points, const BasisPair& basis,
                      double tol = 1e-12);

/// [v]_B: the monomials of the list evaluated at v.
CVector monomial_vector(const CVector& v, std::span<const MonomialPower> monomials);

/// Every |<phi[G,alpha] x^gamma, F>| <= tol * ||F||.
bool is_generating(const SymTensor& F, const GenMatrix& g, double tol = 1e-8);

struct RecoveryReport {
  SymTensor tensor;
  // Largest relative disagreement between alternative recursion splittings.
  double max_disagreement = 0.0;
};

/// Rebuild F from its B0 entries and a generating matrix, filling monomials in
/// increasing grlex order via F_{alpha+gamma} = sum_beta G(beta,alpha) F_{beta+gamma}.
RecoveryReport recover_tensor_report(const GenMatrix& g, std::span<const cplx> first_entries,
                                     std::size_t n, int m);

SymTensor recover_tensor(const GenMatrix& g, std::span<const cplx> first_entries, std::size_t n,
                         int m);

}  // namespace symdec
