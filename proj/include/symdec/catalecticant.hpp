#pragma once

#include "symdec/symtensor.hpp"

namespace symdec {

/// Dehomogenized catalecticant Cat^{m-k,k}(F): rows beta with |beta| <= m-k,
/// columns alpha with |alpha| <= k, entry F_{alpha+beta}.
struct CatMatrix {
  int rows_degree = 0;
  int cols_degree = 0;
  CMatrix data;
};

CatMatrix cat_matrix(const SymTensor& F, int k);

/// Numerical rank of the most square catalecticant (k = ceil(m/2)): the number of
/// singular values above tol * sigma_max.
int cat_rank(const SymTensor& F, double tol = 1e-8);

struct GenericRank {
  int rank = 0;
  // m = 2 lies outside the Alexander-Hirschowitz formula; rank is then n+1.
  bool quadratic_case = false;
};

/// Generic symmetric rank of S^m(C^{n+1}).
GenericRank generic_rank_info(int n, int m);
int generic_rank(int n, int m);

/// Dimension of the projective secant variety sigma_r of the degree-m Veronese in P^n.
int secant_dim(int n, int m, int r);

/// r(n+1) - 1 - dim sigma_r, clamped at 0; also 0 above the generic rank.
int dimension_gap(int n, int m, int r);

}  // namespace symdec
