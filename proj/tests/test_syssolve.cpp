#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "symdec/decompose.hpp"
#include "symdec/levmar.hpp"
#include "symdec/matching.hpp"
#include "symdec/syssolve.hpp"
#include "symdec/zerosolve.hpp"

using namespace symdec;
using namespace testing;

namespace {

struct Instance {
  SymTensor F;
  GenMatrixParam param;
  std::vector<CVector> points;
};

// Rank-r tensor in S^m(C^{n+1}) with parameterization at r.
Instance rank_r_instance(std::size_t n, int m, std::size_t r, Rng& rng) {
  const auto pts = random_points(n, r, rng);
  const CVector lambda = complex_normal_vector(rng, static_cast<Eigen::Index>(r));
  const SymTensor F = from_rank_one_sum(n, m, lift(pts, lambda, m));
  return {F, parameterize(F, static_cast<int>(r)), pts};
}

}  // namespace

TEST_CASE("residual vanishes at a from_points parameter") {
  auto rng = make_rng(61);
  for (int t = 0; t < 10; ++t) {
    const auto inst = rank_r_instance(2, 4, 4 + t % 3, rng);
    const CVector w = inst.param.project(from_points(inst.points, inst.param.basis));
    CHECK((inst.param.at(w).data - from_points(inst.points, inst.param.basis).data).norm() <
          1e-8 * (1 + inst.param.c.data.norm()));
    CHECK(residual_map(inst.param, {}, w).norm() <= 1e-10 * (1 + inst.param.c.data.norm()));
  }
}

TEST_CASE("residual sizes and the ell = 0 case") {
  const auto p = parameterize(cubic_rank3(), 3);
  const CVector res = residual_map(p, {}, CVector());
  CHECK(res.size() == 9);
  CHECK(res.norm() < 1e-12);

  const auto q = parameterize(fixture("cubic3-generic").tensor, 4);
  const auto ac = random_affine(q.omega_len, 2, 7);
  CHECK(residual_map(q, {}, CVector::Zero(8)).size() == 16);
  CHECK(residual_map(q, ac, CVector::Zero(8)).size() == 18);

  SolveConfig cfg;
  CHECK(numeric_solve(p, {}, CVector(), cfg).size() == 0);
  const auto all = all_solve(p, {}, cfg);
  REQUIRE(all.size() == 1);
  CHECK(all[0].size() == 0);
}

TEST_CASE("residual_map is exactly quadratic") {
  auto rng = make_rng(62);
  const auto q = parameterize(fixture("quartic3-generic").tensor, 6);
  const auto ac = random_affine(q.omega_len, 3, 5);
  const auto L = static_cast<Eigen::Index>(q.omega_len);
  for (int t = 0; t < 5; ++t) {
    const CVector w = complex_normal_vector(rng, L);
    const CVector dir = complex_normal_vector(rng, L);
    const double h = 0.7;
    auto f = [&](double s) { return residual_map(q, ac, w + s * dir); };
    const CVector d2a = f(2 * h) - 2.0 * f(h) + f(0);
    const CVector d2b = f(3 * h) - 2.0 * f(2 * h) + f(h);
    const CVector d3 = f(3 * h) - 3.0 * f(2 * h) + 3.0 * f(h) - f(0);
    CHECK((d2a - d2b).norm() <= 1e-10 * d2a.norm());
    CHECK(d3.norm() <= 1e-10 * (d2a.norm() + f(0).norm()));
  }
}

TEST_CASE("analytic Jacobian matches central differences") {
  auto rng = make_rng(63);
  const auto check = [&](const GenMatrixParam& p, const AffineConstraints& ac) {
    const auto L = static_cast<Eigen::Index>(p.omega_len);
    const CVector w = complex_normal_vector(rng, L);
    const CMatrix J = residual_jacobian(p, ac, w);
    const double h = 1e-5;
    for (Eigen::Index k = 0; k < L; ++k) {
      CVector e = CVector::Zero(L);
      e(k) = h;
      const CVector fd = (residual_map(p, ac, w + e) - residual_map(p, ac, w - e)) / (2 * h);
      CHECK((fd - J.col(k)).norm() <= 1e-6 * (1 + J.col(k).norm()));
      // Holomorphic: the derivative along i e_k is i times the column.
      const CVector fdi = (residual_map(p, ac, w + cplx(0, 1) * e) - residual_map(p, ac, w - cplx(0, 1) * e)) / (2 * h);
      CHECK((fdi - cplx(0, 1) * J.col(k)).norm() <= 1e-6 * (1 + J.col(k).norm()));
    }
  };
  const auto p51 = parameterize(fixture("cubic3-generic").tensor, 4);
  check(p51, random_affine(p51.omega_len, 2, 1));
  for (int t = 0; t < 3; ++t) {
    const auto inst = rank_r_instance(3, 3, 5, rng);
    check(inst.param, {});
  }
}

TEST_CASE("random affine constraints") {
  CHECK(random_affine(8, 0, 1).count() == 0);
  const auto a = random_affine(8, 2, 11), b = random_affine(8, 2, 11);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  CHECK(a.count() == 2);
  CHECK(Eigen::FullPivLU<CMatrix>(a.a).rank() == 2);
  CHECK(random_affine(8, 2, 12).a != a.a);
  CHECK_THROWS_AS(random_affine(2, 3, 1), DomainError);
}

TEST_CASE("numeric_solve from a least-squares warm start") {
  const SymTensor F = fixture("cubic3-generic").tensor;
  const auto p = parameterize(F, 4);
  const auto fit = nls_fit(F, 4, 3);
  std::vector<CVector> pts;
  for (const auto& u : fit.vectors) pts.push_back(u.tail(2) / u(0));
  const CVector w0 = p.project(from_points(pts, p.basis));
  const AffineConstraints ac{random_affine(p.omega_len, 2, 3).a, CVector()};
  AffineConstraints fixed = ac;
  fixed.b = ac.a * w0;
  SolveConfig cfg;
  const CVector w = numeric_solve(p, fixed, w0, cfg);
  CHECK(residual_map(p, fixed, w).norm() <= 1e-10 * (1 + p.c.data.norm()));
  const CVector again = numeric_solve(p, fixed, w0, cfg);
  CHECK(again == w);
}

TEST_CASE("numeric_solve reports an infeasible system") {
  // Three commutator blocks, one unknown: no solution for generic data.
  auto rng = make_rng(64);
  GenMatrixParam p;
  p.basis = basis_pair(2, 3);
  p.c = GenMatrix{p.basis, complex_normal_matrix(rng, 3, 3)};
  p.null_bases = {complex_normal_matrix(rng, 3, 1).normalized(), CMatrix(3, 0), CMatrix(3, 0)};
  p.offsets = {0, 1, 1};
  p.omega_len = 1;
  SolveConfig cfg;
  cfg.max_restarts = 3;
  try {
    numeric_solve(p, {}, CVector::Zero(1), cfg);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.best_residual > 1e-3);
    CHECK(e.best_omega.size() == 1);
  }
}

TEST_CASE("track_slice follows a solution between right-hand sides") {
  auto rng = make_rng(65);
  const auto p = parameterize(fixture("cubic3-generic").tensor, 4);
  auto ac = random_affine(p.omega_len, 2, 4);
  SolveConfig cfg;
  const auto sols = all_solve(p, ac, cfg);
  REQUIRE(!sols.empty());
  const CVector b2 = ac.b + 0.5 * complex_normal_vector(rng, 2);
  const auto moved = track_slice(p, ac.a, ac.b, b2, sols[0], 1e-11);
  REQUIRE(moved.has_value());
  AffineConstraints ac2{ac.a, b2};
  CHECK(residual_map(p, ac2, *moved).norm() <= 1e-9 * (1 + p.c.data.norm()));
}

TEST_CASE("all_solve returns well separated solutions") {
  const auto p = parameterize(fixture("cubic3-generic").tensor, 4);
  const auto ac = random_affine(p.omega_len, 2, 9);
  SolveConfig cfg;
  cfg.max_restarts = 40;
  const auto sols = all_solve(p, ac, cfg);
  CHECK(sols.size() >= 2);
  std::vector<std::vector<CVector>> zero_sets;
  for (const auto& w : sols) {
    CHECK(residual_map(p, ac, w).norm() <= 1e-9 * (1 + p.c.data.norm()));
    zero_sets.push_back(cgt_zeros(companion(p.at(w)), 1).distinct_points());
  }
  for (std::size_t i = 0; i < zero_sets.size(); ++i)
    for (std::size_t j = i + 1; j < zero_sets.size(); ++j)
      CHECK(zero_set_distance(zero_sets[i], zero_sets[j]) > cfg.dedup_tol);
}

TEST_CASE("zero set distance") {
  const std::vector<CVector> a{vec({1, 2}), vec({3, 4})}, b{vec({3, 4}), vec({1, 2})};
  CHECK(zero_set_distance(a, b) == 0.0);
  CHECK(std::isinf(zero_set_distance(a, {vec({1, 2})})));
  const std::vector<CVector> c{vec({1, 2.5}), vec({3, 4})};
  CHECK(zero_set_distance(a, c) > 0.1);
}

TEST_CASE("Hungarian matching against exhaustive search") {
  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 30; ++t) {
    const int k = 1 + t % 6;
    Eigen::MatrixXd cost(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) cost(i, j) = u(rng);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double s = 0;
      for (int i = 0; i < k; ++i) s += cost(i, perm[static_cast<std::size_t>(i)]);
      best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto as = min_cost_assignment(cost);
    double got = 0;
    std::vector<int> seen(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      got += cost(i, as[static_cast<std::size_t>(i)]);
      ++seen[static_cast<std::size_t>(as[static_cast<std::size_t>(i)])];
    }
    CHECK(got == doctest::Approx(best).epsilon(1e-12));
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
  }
}

TEST_CASE("Levenberg-Marquardt on small problems") {
  const RealResidualFn rosen = [](const Eigen::VectorXd& x, Eigen::VectorXd& f, Eigen::MatrixXd* jac) {
    f.resize(2);
    f << 10 * (x(1) - x(0) * x(0)), 1 - x(0);
    if (jac) {
      jac->resize(2, 2);
      *jac << -20 * x(0), 10, -1, 0;
    }
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1;
  const auto r = levenberg_marquardt(rosen, x0, {});
  CHECK(r.residual < 1e-10);
  CHECK(std::abs(r.x(0) - 1) < 1e-8);

  // z^2 = 3 + 4i over the complex numbers.
  const ResidualFn sq = [](const CVector& z, CVector& f, CMatrix* jac) {
    f.resize(1);
    f(0) = z(0) * z(0) - cplx(3, 4);
    if (jac) {
      jac->resize(1, 1);
      (*jac)(0, 0) = 2.0 * z(0);
    }
  };
  LmOptions opts;
  opts.abs_tol = 1e-13;
  const auto c = levenberg_marquardt(sq, vec({cplx(1, 1)}), opts);
  CHECK(c.converged);
  CHECK(std::abs(c.x(0) - cplx(2, 1)) < 1e-10);

  auto rng = make_rng(67);
  const CVector z = complex_normal_vector(rng, 4);
  CHECK(merge(split(z)) == z);
  const CMatrix J = complex_normal_matrix(rng, 3, 4);
  const Eigen::MatrixXd S = split_jacobian(J);
  CHECK((S * split(z) - split(J * z)).norm() < 1e-13);
}
