#include "symdec/genmat.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

namespace symdec {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

long BasisPair::find_b0(const MonomialPower& a) const {
  auto it = std::find(b0.begin(), b0.end(), a);
  return it == b0.end() ? -1 : static_cast<long>(it - b0.begin());
}

long BasisPair::find_b1(const MonomialPower& a) const {
  auto it = std::find(b1.begin(), b1.end(), a);
  return it == b1.end() ? -1 : static_cast<long>(it - b1.begin());
}

BasisPair basis_pair(std::size_t n, std::size_t r) {
  if (n < 1 || r < 1) throw DomainError("basis_pair needs n >= 1 and r >= 1");
  BasisPair bp;
  bp.n = n;
  for (int d = 0; bp.b0.size() < r; ++d) {
    for (auto& a : monomials_of_degree(n, d)) {
      if (bp.b0.size() == r) break;
      bp.b0.push_back(std::move(a));
    }
  }
  std::vector<MonomialPower> border;
  for (const auto& b : bp.b0) {
    for (std::size_t i = 0; i < n; ++i) {
      auto c = b + MonomialPower::unit(n, i);
      if (bp.find_b0(c) < 0 && std::find(border.begin(), border.end(), c) == border.end())
        border.push_back(std::move(c));
    }
  }
  std::sort(border.begin(), border.end(), GrlexLess{});
  bp.b1 = std::move(border);
  return bp;
}

Poly GenMatrix::phi(std::size_t col) const {
  Poly p(basis.n);
  for (std::size_t b = 0; b < basis.b0.size(); ++b) p.add_term(basis.b0[b], data(ix(b), ix(col)));
  p.add_term(basis.b1.at(col), -1.0);
  return p;
}

ColumnSystem gen_system(const SymTensor& F, const MonomialPower& alpha, const BasisPair& basis) {
  const int m = F.order();
  if (alpha.degree() > m)
    throw DomainError("border monomial " + alpha.to_string() + " has degree above m; r is too large for this order");
  const auto rows = monomial_space(F.num_vars(), m - alpha.degree());
  ColumnSystem sys{CMatrix(ix(rows->size()), ix(basis.b0.size())), CVector(ix(rows->size()))};
  for (std::size_t g = 0; g < rows->size(); ++g) {
    const auto& gamma = (*rows)[g];
    for (std::size_t b = 0; b < basis.b0.size(); ++b) sys.a(ix(g), ix(b)) = F.at(basis.b0[b] + gamma);
    sys.b(ix(g)) = F.at(alpha + gamma);
  }
  return sys;
}

GenMatrix GenMatrixParam::at(const CVector& omega) const {
  if (static_cast<std::size_t>(omega.size()) != omega_len)
    throw DimensionError("omega has wrong length");
  GenMatrix g = c;
  for (std::size_t col = 0; col < null_bases.size(); ++col) {
    const auto& nb = null_bases[col];
    if (nb.cols() == 0) continue;
    g.data.col(ix(col)) += nb * omega.segment(ix(offsets[col]), nb.cols());
  }
  return g;
}

CVector GenMatrixParam::project(const GenMatrix& g) const {
  CVector omega(ix(omega_len));
  for (std::size_t col = 0; col < null_bases.size(); ++col) {
    const auto& nb = null_bases[col];
    if (nb.cols() == 0) continue;
    omega.segment(ix(offsets[col]), nb.cols()) =
        nb.adjoint() * (g.data.col(ix(col)) - c.data.col(ix(col)));
  }
  return omega;
}

GenMatrixParam parameterize(const SymTensor& F, std::size_t r, double tol) {
  if (r < 1) throw DomainError("parameterize needs r >= 1");
  GenMatrixParam p;
  p.basis = basis_pair(F.num_vars(), r);
  for (const auto& a : p.basis.b1)
    if (a.degree() > F.order())
      throw DomainError("r = " + std::to_string(r) + " is too large for order " +
                        std::to_string(F.order()) + ": border monomial " + a.to_string() +
                        " exceeds degree m");
  const double fnorm = norm(F);
  p.c.basis = p.basis;
  p.c.data = CMatrix::Zero(ix(r), ix(p.basis.b1.size()));
  for (std::size_t col = 0; col < p.basis.b1.size(); ++col) {
    auto sys = gen_system(F, p.basis.b1[col], p.basis);
    Eigen::JacobiSVD<CMatrix> svd(sys.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0)
      while (rank < sv.size() && sv(rank) > tol * sv(0)) ++rank;
    CVector x = CVector::Zero(ix(r));
    if (rank > 0) {
      CVector ub = svd.matrixU().leftCols(rank).adjoint() * sys.b;
      for (Eigen::Index k = 0; k < rank; ++k) ub(k) /= sv(k);
      x = svd.matrixV().leftCols(rank) * ub;
    }
    const double res = (sys.a * x - sys.b).norm();
    if (res > tol * fnorm)
      throw InconsistentSystem("linear system for border column " + p.basis.b1[col].to_string() +
                                   " is inconsistent (residual " + std::to_string(res) +
                                   "); the rank is most likely above r, increase the value of r",
                               res);
    p.c.data.col(ix(col)) = x;
    p.offsets.push_back(p.omega_len);
    p.null_bases.push_back(svd.matrixV().rightCols(ix(r) - rank));
    p.omega_len += static_cast<std::size_t>(ix(r) - rank);
  }
  return p;
}

CompanionSet companion(const GenMatrix& g) {
  const auto& bp = g.basis;
  const std::size_t r = bp.r();
  CompanionSet cs;
  for (std::size_t i = 0; i < bp.n; ++i) {
    CMatrix mat = CMatrix::Zero(ix(r), ix(r));
    const auto e = MonomialPower::unit(bp.n, i);
    for (std::size_t nu = 0; nu < r; ++nu) {
      const auto shifted = bp.b0[nu] + e;
      const long mu = bp.find_b0(shifted);
      if (mu >= 0) {
        mat(mu, ix(nu)) = 1.0;
      } else {
        const long col = bp.find_b1(shifted);
        mat.col(ix(nu)) = g.data.col(col);
      }
    }
    cs.mats.push_back(std::move(mat));
  }
  return cs;
}

CVector commutator_residual(const CompanionSet& cs) {
  const std::size_t n = cs.num_vars();
  const std::size_t r = cs.r();
  const std::size_t blocks = n * (n - 1) / 2;
  CVector out(ix(blocks * r * r));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      CMatrix c = cs.mats[i] * cs.mats[j] - cs.mats[j] * cs.mats[i];
      out.segment(ix(pos), ix(r * r)) = Eigen::Map<const CVector>(c.data(), c.size());
      pos += r * r;
    }
  }
  return out;
}

CVector monomial_vector(const CVector& v, std::span<const MonomialPower> monomials) {
  CVector out(ix(monomials.size()));
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    cplx t = 1.0;
    for (std::size_t j = 0; j < monomials[k].num_vars(); ++j)
      for (int e = 0; e < monomials[k][j]; ++e) t *= v(ix(j));
    out(ix(k)) = t;
  }
  return out;
}

GenMatrix from_points(std::span<const CVector> points, const BasisPair& basis, double tol) {
  const std::size_t r = basis.r();
  if (points.size() != r)
    throw DimensionError("from_points needs exactly r = " + std::to_string(r) + " points");
  CMatrix v(ix(r), ix(r)), w(ix(r), ix(basis.b1.size()));
  for (std::size_t i = 0; i < r; ++i) {
    if (static_cast<std::size_t>(points[i].size()) != basis.n)
      throw DimensionError("point must lie in C^n");
    v.row(ix(i)) = monomial_vector(points[i], basis.b0).transpose();
    w.row(ix(i)) = monomial_vector(points[i], basis.b1).transpose();
  }
  Eigen::JacobiSVD<CMatrix> svd(v);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(cond * tol < 1.0))
    throw SingularVandermonde("B0-Vandermonde matrix of the points is singular (cond " +
                                  std::to_string(cond) + ")",
                              cond);
  GenMatrix g{basis, v.partialPivLu().solve(w)};
  return g;
}

bool is_generating(const SymTensor& F, const GenMatrix& g, double tol) {
  const double bound = tol * norm(F);
  const auto& bp = g.basis;
  for (std::size_t col = 0; col < bp.b1.size(); ++col) {
    const auto& alpha = bp.b1[col];
    if (alpha.degree() > F.order()) continue;
    const auto gammas = monomial_space(F.num_vars(), F.order() - alpha.degree());
    for (const auto& gamma : gammas->list()) {
      cplx s = -F.at(alpha + gamma);
      for (std::size_t b = 0; b < bp.b0.size(); ++b) s += g.data(ix(b), ix(col)) * F.at(bp.b0[b] + gamma);
      if (std::abs(s) > bound) return false;
    }
  }
  return true;
}

RecoveryReport recover_tensor_report(const GenMatrix& g, std::span<const cplx> first_entries,
                                     std::size_t n, int m) {
  const auto& bp = g.basis;
  if (bp.n != n) throw DimensionError("generating matrix has a different variable count");
  if (first_entries.size() != bp.r()) throw DimensionError("need one entry per B0 monomial");
  for (const auto& b : bp.b0)
    if (b.degree() > m) throw DomainError("B0 contains monomials above degree m");

  const auto space = monomial_space(n, m);
  std::vector<std::optional<cplx>> val(space->size());
  for (std::size_t b = 0; b < bp.r(); ++b) val[space->index(bp.b0[b])] = first_entries[b];

  double max_dis = 0.0;
  // Evaluates column col shifted by gamma, if every needed entry is known.
  auto eval = [&](std::size_t col, const MonomialPower& gamma) -> std::optional<cplx> {
    cplx s = 0.0;
    for (std::size_t b = 0; b < bp.r(); ++b) {
      const long k = space->find(bp.b0[b] + gamma);
      if (k < 0 || !val[static_cast<std::size_t>(k)]) return std::nullopt;
      s += g.data(ix(b), ix(col)) * *val[static_cast<std::size_t>(k)];
    }
    return s;
  };

  bool progress = true;
  std::size_t unknown = space->size() - bp.r();
  while (unknown > 0 && progress) {
    progress = false;
    for (std::size_t k = 0; k < space->size(); ++k) {
      if (val[k]) continue;
      const auto& target = (*space)[k];
      std::optional<cplx> chosen;
      for (std::size_t col = 0; col < bp.b1.size(); ++col) {
        const auto& a = bp.b1[col];
        if (!a.divides(target)) continue;
        auto v = eval(col, target - a);
        if (!v) continue;
        if (!chosen) {
          chosen = v;
        } else {
          const double scale = std::max(std::abs(*chosen), 1.0);
          max_dis = std::max(max_dis, std::abs(*v - *chosen) / scale);
        }
      }
      if (chosen) {
        val[k] = chosen;
        --unknown;
        progress = true;
      }
    }
  }
  if (unknown > 0) {
    for (std::size_t k = 0; k < space->size(); ++k)
      if (!val[k])
        throw StructureError("monomial " + (*space)[k].to_string() +
                             " is unreachable from B0 through the border recursion");
  }
  std::vector<cplx> coeffs(space->size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] = *val[k];
  return {SymTensor(n, m, std::move(coeffs)), max_dis};
}

SymTensor recover_tensor(const GenMatrix& g, std::span<const cplx> first_entries, std::size_t n,
                         int m) {
  auto rep = recover_tensor_report(g, first_entries, n, m);
  if (rep.max_disagreement > 1e-6)
    std::cerr << "symdec: warning: recovery splittings disagree by " << rep.max_disagreement
              << " (relative); G may not be a generating matrix\n";
  return std::move(rep.tensor);
}

}  // namespace symdec
