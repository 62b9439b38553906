#include "doctest.h"
#include "support.hpp"
#include "symdec/syssolve.hpp"
#include "symdec/zerosolve.hpp"

using namespace symdec;
using namespace testing;

TEST_CASE("zeros of the rank-3 cubic's generating polynomials") {
  const auto p = parameterize(cubic_rank3(), 3);
  const auto cs = companion(p.c);
  const auto zs = cgt_zeros(cs, 1);
  CHECK(zs.total == 3);
  CHECK(zs.nondefective());
  for (const auto& z : zs.points) CHECK(z.multiplicity == 1);
  CHECK(zero_set_distance(zs.distinct_points(), cubic_rank3_points()) < 1e-9);
  CHECK(stickelberger_check(cs, zs, 1e-8));
}

TEST_CASE("double root of a univariate companion") {
  CompanionSet cs;
  CMatrix m(2, 2);
  m << 0, -1, 1, 2;
  cs.mats.push_back(m);
  const auto zs = cgt_zeros(cs, 3);
  REQUIRE(zs.points.size() == 1);
  CHECK(zs.points[0].multiplicity == 2);
  CHECK(std::abs(zs.points[0].v(0) - 1.0) < 1e-7);
  CHECK(zs.total == 2);
  CHECK_FALSE(zs.nondefective());
}

TEST_CASE("zeros of from_points companions are the points") {
  auto rng = make_rng(51);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 3, r = 2 + t % 6;
    const auto pts = random_points(n, r, rng);
    const auto cs = companion(from_points(pts, basis_pair(n, r)));
    const auto zs = cgt_zeros(cs, static_cast<std::uint64_t>(t));
    CHECK(zs.total == static_cast<int>(r));
    CHECK(zs.nondefective());
    CHECK(zero_set_distance(zs.distinct_points(), pts) < 1e-9);
    CHECK(zs.off_pattern < 1e-8);
  }
}

TEST_CASE("stickelberger check") {
  const auto cs = companion(parameterize(cubic_rank3(), 3).c);
  auto zs = cgt_zeros(cs, 2);
  CHECK(stickelberger_check(cs, zs, 1e-8));
  ZeroSet moved = zs;
  for (auto& z : moved.points) z.v.array() += 0.1;
  CHECK_FALSE(stickelberger_check(cs, moved, 1e-8));

  CompanionSet one;
  CMatrix a(1, 1), b(1, 1);
  a << cplx(2, 1);
  b << -3.5;
  one.mats = {a, b};
  const auto z1 = cgt_zeros(one, 0);
  REQUIRE(z1.points.size() == 1);
  CHECK(z1.points[0].v == vec({cplx(2, 1), -3.5}));
  CHECK(stickelberger_check(one, z1, 1e-12));
}

TEST_CASE("seed determinism is bitwise") {
  auto rng = make_rng(52);
  const auto pts = random_points(3, 6, rng);
  const auto cs = companion(from_points(pts, basis_pair(3, 6)));
  const auto a = cgt_zeros(cs, 99), b = cgt_zeros(cs, 99);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].v == b.points[i].v);
    CHECK(a.points[i].multiplicity == b.points[i].multiplicity);
  }
  CHECK(a.off_pattern == b.off_pattern);
}

TEST_CASE("zero sets do not depend on the seed (50 trials)") {
  auto rng = make_rng(53);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t % 3, r = 1 + t % 8;
    const auto cs = companion(from_points(random_points(n, r, rng), basis_pair(n, r)));
    const auto a = cgt_zeros(cs, 1000 + static_cast<std::uint64_t>(t));
    const auto b = cgt_zeros(cs, 5000 + static_cast<std::uint64_t>(t));
    CHECK(a.nondefective());
    CHECK(zero_set_distance(a.distinct_points(), b.distinct_points()) < 1e-8);
  }
}

TEST_CASE("multiplicities sum to r and coordinates are eigenvalues") {
  auto rng = make_rng(54);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2, r = 3 + t % 4;
    // Repeated points give a commuting but defective family.
    auto pts = random_points(n, r, rng);
    CompanionSet cs;
    if (t % 2 == 0) {
      cs = companion(from_points(pts, basis_pair(n, r)));
    } else {
      // Upper triangular matrices with one shared repeated diagonal entry commute
      // when they are polynomials in the same matrix.
      CMatrix base = complex_normal_matrix(rng, static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r))
                         .triangularView<Eigen::Upper>();
      base(1, 1) = base(0, 0);
      cs.mats = {base, base * base + 2.0 * base};
    }
    const auto zs = cgt_zeros(cs, static_cast<std::uint64_t>(t));
    CHECK(zs.total == static_cast<int>(r));
    int sum = 0;
    for (const auto& z : zs.points) sum += z.multiplicity;
    CHECK(sum == static_cast<int>(r));
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::ComplexEigenSolver<CMatrix> es(cs.mats[i]);
      const double tol = 1e-8 * (1 + cs.mats[i].norm());
      for (const auto& z : zs.points) {
        double best = 1e300;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
          best = std::min(best, std::abs(es.eigenvalues()(k) - z.v(static_cast<Eigen::Index>(i))));
        CHECK(best <= std::max(tol, z.multiplicity > 1 ? 1e-6 * (1 + cs.mats[i].norm()) : tol));
      }
    }
    if (t % 2 == 1) CHECK_FALSE(zs.nondefective());
  }
}
