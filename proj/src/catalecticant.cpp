#include "symdec/catalecticant.hpp"

#include <algorithm>

namespace symdec {

CatMatrix cat_matrix(const SymTensor& F, int k) {
  const int m = F.order();
  if (k < 0 || k > m) throw DomainError("catalecticant split k must lie in [0, m]");
  const auto rows = monomial_space(F.num_vars(), m - k);
  const auto cols = monomial_space(F.num_vars(), k);
  CatMatrix cat{m - k, k, CMatrix(rows->size(), cols->size())};
  for (std::size_t b = 0; b < rows->size(); ++b)
    for (std::size_t a = 0; a < cols->size(); ++a)
      cat.data(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) =
          F.at((*rows)[b] + (*cols)[a]);
  return cat;
}

int cat_rank(const SymTensor& F, double tol) {
  if (tol <= 0) throw DomainError("rank tolerance must be positive");
  const auto cat = cat_matrix(F, (F.order() + 1) / 2);
  Eigen::JacobiSVD<CMatrix> svd(cat.data);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

GenericRank generic_rank_info(int n, int m) {
  if (n < 0 || m < 1) throw DomainError("generic rank needs n >= 0 and m >= 1");
  if (m == 1) return {1, false};
  if (m == 2) return {n + 1, true};
  const std::size_t dim = binomial(static_cast<std::size_t>(n + m), static_cast<std::size_t>(m));
  const std::size_t amb = static_cast<std::size_t>(n + 1);
  int r = static_cast<int>((dim + amb - 1) / amb);
  const bool exceptional =
      (m == 3 && n == 4) || (m == 4 && (n == 2 || n == 3 || n == 4));
  if (exceptional) ++r;
  return {r, false};
}

int generic_rank(int n, int m) { return generic_rank_info(n, m).rank; }

int secant_dim(int n, int m, int r) {
  if (r < 1) throw DomainError("secant dimension needs r >= 1");
  const int full = static_cast<int>(binomial(static_cast<std::size_t>(n + m), static_cast<std::size_t>(m))) - 1;
  if (m == 2 && r >= 2 && r <= n)
    return static_cast<int>(binomial(static_cast<std::size_t>(r + 1), 2)) + r * (n + 1 - r) - 1;
  if (m == 3 && n == 4 && r == 7) return full - 1;
  if (m == 4 && n >= 2 && n <= 4 &&
      r == static_cast<int>(binomial(static_cast<std::size_t>(n + 2), 2)) - 1)
    return full - 1;
  return std::min(r * (n + 1) - 1, full);
}

int dimension_gap(int n, int m, int r) {
  if (r < 1) throw DomainError("dimension gap needs r >= 1");
  if (m >= 3 && r > generic_rank(n, m)) return 0;
  return std::max(0, r * (n + 1) - 1 - secant_dim(n, m, r));
}

}  // namespace symdec
