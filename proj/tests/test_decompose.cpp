#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "symdec/catalecticant.hpp"
#include "symdec/decompose.hpp"
#include "symdec/syssolve.hpp"

using namespace symdec;
using namespace testing;

namespace {

std::vector<CVector> dehomogenized(const std::vector<CVector>& us) {
  std::vector<CVector> out;
  for (const auto& u : us) out.push_back(u.tail(u.size() - 1) / u(0));
  return out;
}

}  // namespace

TEST_CASE("decomposition error") {
  const auto us = lift(cubic_rank3_points(), vec({3, 5, -1}), 3);
  const SymTensor F = cubic_rank3();
  CHECK(decomposition_error(F, us) <= 1e-12 * norm(F));
  CHECK(decomposition_error(F, {}) == doctest::Approx(norm(F)));
}

TEST_CASE("least-squares fits") {
  const SymTensor ones = from_rank_one_sum(2, 3, std::vector<CVector>{vec({1, 1, 1})});
  CHECK(nls_fit(ones, 1, 5).residual <= 1e-10);

  int good = 0;
  for (std::uint64_t s = 0; s < 20; ++s) good += nls_fit(cubic_rank3(), 3, s).residual <= 1e-8;
  CHECK(good >= 16);

  auto rng = make_rng(71);
  for (int t = 0; t < 3; ++t) {
    const SymTensor F = random_tensor(1, 3, rng);
    CHECK(nls_fit(F, 4, static_cast<std::uint64_t>(t)).residual <= 1e-8 * (1 + norm(F)));
  }
  CHECK(nls_fit(ones, {}).residual == doctest::Approx(norm(ones)));
}

TEST_CASE("weights from points") {
  const CVector l = weights_from_points(cubic_rank3(), cubic_rank3_points());
  CHECK((l - vec({3, 5, -1})).norm() < 1e-9);
  CHECK(weights_from_points(SymTensor(2, 3), cubic_rank3_points()).norm() == 0.0);

  const CVector v = vec({cplx(0.5, -1), 2});
  const SymTensor R = from_rank_one_sum(2, 4, lift({v}, vec({cplx(-2, 3)}), 4));
  CHECK(std::abs(weights_from_points(R, std::vector<CVector>{v})(0) - cplx(-2, 3)) < 1e-12);
}

TEST_CASE("assemble uses the principal root") {
  const auto a = assemble(vec({8}), std::vector<CVector>{vec({0, 0})}, 3);
  CHECK((a[0] - vec({2, 0, 0})).norm() < 1e-14);
  const auto b = assemble(vec({-1}), std::vector<CVector>{vec({1, 1})}, 3);
  CHECK(std::abs(b[0](0) - std::polar(1.0, std::numbers::pi / 3)) < 1e-14);
  const auto c = assemble(vec({3, 5, -1}), cubic_rank3_points(), 3);
  CHECK(decomposition_error(cubic_rank3(), c) <= 1e-12 * norm(cubic_rank3()));
  CHECK_THROWS_AS(assemble(vec({1, 2}), cubic_rank3_points(), 3), DimensionError);
}

TEST_CASE("numeric decomposition of the reference cubics") {
  SolveConfig cfg;
  const SymTensor F = cubic_rank3();
  const auto d = decompose_numeric(F, 3, cfg);
  CHECK(d.length() == 3);
  CHECK(d.error <= 1e-10);
  CHECK(zero_set_distance(dehomogenized(d.vectors), cubic_rank3_points()) < 1e-8);
  // Principal branch: the leading coordinate has argument in (-pi/3, pi/3].
  for (const auto& u : d.vectors) {
    CHECK(std::arg(u(0)) > -std::numbers::pi / 3 - 1e-12);
    CHECK(std::arg(u(0)) <= std::numbers::pi / 3 + 1e-12);
  }

  const SymTensor G = fixture("cubic3-generic").tensor;
  const auto g = decompose_numeric(G, std::nullopt, cfg);
  CHECK(g.length() == 4);
  CHECK(g.error <= 1e-8);

  CHECK(decompose_numeric(SymTensor(2, 3), 2, cfg).error == 0.0);
  CHECK_THROWS_AS(decompose_numeric(F, 0, cfg), DomainError);
}

TEST_CASE("numeric decomposition round trip (n <= 3, m <= 5)") {
  struct Case {
    std::size_t n;
    int m;
  };
  const Case cases[] = {{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 3}, {3, 4}};
  int ok = 0, total = 0;
  auto rng = make_rng(72);
  for (int rep = 0; rep < 3; ++rep)
    for (const auto& c : cases) {
      const int gr = generic_rank(static_cast<int>(c.n), c.m);
      const std::size_t r = 1 + static_cast<std::size_t>(rep + c.m) % static_cast<std::size_t>(gr);
      const auto pts = random_points(c.n, r, rng);
      const CVector lambda = complex_normal_vector(rng, static_cast<Eigen::Index>(r));
      const SymTensor F = from_rank_one_sum(c.n, c.m, lift(pts, lambda, c.m));
      SolveConfig cfg;
      cfg.seed = static_cast<std::uint64_t>(total);
      ++total;
      try {
        const auto d = decompose_numeric(F, static_cast<int>(r), cfg);
        const bool fits = d.error <= 1e-8 * norm(F);
        // Points are only determined when the decomposition is unique.
        const bool unique = static_cast<int>(r) < gr &&
                            dimension_gap(static_cast<int>(c.n), c.m, static_cast<int>(r)) == 0;
        const bool points = !unique || zero_set_distance(dehomogenized(d.vectors), pts) < 1e-6;
        CAPTURE(c.n);
        CAPTURE(c.m);
        CAPTURE(r);
        CHECK(fits);
        CHECK(points);
        ok += fits && points;
      } catch (const Error& e) {
        MESSAGE("round trip failed: " << e.what());
      }
    }
  CHECK(ok * 10 >= total * 9);
}

TEST_CASE("unique decomposition at the generic rank of S^3(C^4)") {
  auto rng = make_rng(73);
  std::vector<cplx> c(SymTensor(3, 3).size());
  for (auto& x : c) x = std::round(20 * std::uniform_real_distribution<double>(-1, 1)(rng));
  const SymTensor F(3, 3, c);
  SolveConfig cfg;
  cfg.max_restarts = 100;
  const auto all = decompose_all(F, 5, cfg);
  REQUIRE(all.size() == 1);
  CHECK(all[0].error <= 1e-8);
  CHECK(all[0].mode == DecompositionMode::all_solutions);
}

TEST_CASE("reduce_length") {
  SolveConfig cfg;
  auto rng = make_rng(74);

  // Generic rank-3 ternary cubic: length 2 does not fit, so nothing changes.
  const auto pts = random_points(2, 3, rng);
  const SymTensor F = from_rank_one_sum(2, 3, lift(pts, vec({1, 2, -1}), 3));
  CHECK(nls_fit(F, 2, 1).residual > 1e-4 * norm(F));
  const Decomposition exact{lift(pts, vec({1, 2, -1}), 3), 0.0};
  const auto same = reduce_length(F, exact, cfg);
  CHECK(same.length() == 3);

  // u^3 + w^3 + (-w)^3 collapses to u^3.
  const CVector u = complex_normal_vector(rng, 3), w = 0.05 * complex_normal_vector(rng, 3);
  const SymTensor U = from_rank_one_sum(2, 3, std::vector<CVector>{u});
  const Decomposition three{{u, w, CVector(-w)}, decomposition_error(U, std::vector<CVector>{u, w, CVector(-w)})};
  const auto one = reduce_length(U, three, cfg);
  CHECK(one.length() == 1);
  CHECK(one.error <= cfg.fit_tol * norm(U));
  CHECK(one.mode == DecompositionMode::reduced);
}

TEST_CASE("reduce_length never grows and always fits after a reduction") {
  SolveConfig cfg;
  auto rng = make_rng(75);
  for (int t = 0; t < 5; ++t) {
    const std::size_t r = 2 + static_cast<std::size_t>(t) % 2;
    const SymTensor F = from_rank_one_sum(2, 4, lift(random_points(2, r, rng), complex_normal_vector(rng, static_cast<Eigen::Index>(r)), 4));
    cfg.seed = static_cast<std::uint64_t>(t);
    const auto d = decompose_numeric(F, 6, cfg);
    const auto red = reduce_length(F, d, cfg);
    CHECK(red.length() <= d.length());
    if (red.length() < d.length()) CHECK(red.error <= cfg.fit_tol * norm(F));
    CHECK(red.length() >= r);
  }
}

TEST_CASE("equivalence of decompositions is an equivalence relation") {
  auto rng = make_rng(76);
  const int m = 4;
  const auto base = random_points(3, 4, rng);
  auto twist = [&](std::vector<CVector> vs, int shift) {
    std::rotate(vs.begin(), vs.begin() + shift, vs.end());
    for (std::size_t i = 0; i < vs.size(); ++i)
      vs[i] *= std::polar(1.0, 2 * std::numbers::pi * static_cast<double>((i + static_cast<std::size_t>(shift)) % m) / m);
    return vs;
  };
  const auto a = base, b = twist(base, 1), c = twist(b, 3);
  auto d = base;
  d[2] *= std::polar(1.0, 0.3);
  const std::vector<std::vector<CVector>> all{a, b, c, d};
  for (const auto& x : all) CHECK(equivalent(x, x, m));
  for (const auto& x : all)
    for (const auto& y : all) {
      CHECK(equivalent(x, y, m) == equivalent(y, x, m));
      for (const auto& z : all)
        if (equivalent(x, y, m) && equivalent(y, z, m)) CHECK(equivalent(x, z, m));
    }
  CHECK(equivalent(a, b, m));
  CHECK(equivalent(a, c, m));
  CHECK_FALSE(equivalent(a, d, m));
  CHECK(std::isinf(equivalence_distance(a, std::span(a).first(3), m)));
  CHECK(equivalence_distance(a, b, m) < 1e-14);
}

TEST_CASE("decompositions transform with the tensor") {
  auto rng = make_rng(77);
  const SymTensor F = random_tensor(2, 3, rng);
  const CMatrix Q = random_unitary(3, 8);
  CHECK((Q.adjoint() * Q - CMatrix::Identity(3, 3)).norm() < 1e-13);
  SolveConfig cfg;
  const auto d = decompose_numeric(unitary_transform(F, Q), 4, cfg);
  std::vector<CVector> back;
  for (const auto& u : d.vectors) back.push_back(Q.inverse() * u);
  CHECK(decomposition_error(F, back) <= 1e-8 * norm(F));
}

TEST_CASE("transform fallback for vectors at infinity") {
  // (0,1,-5) has no affine representative, so the plain chart is inconsistent at r = 6.
  const SymTensor F = fixture("quartic3-rank2").tensor;
  SolveConfig cfg;
  const auto d = decompose_numeric(F, 6, cfg);
  CHECK(d.error <= 1e-8 * norm(F));
  const auto red = reduce_length(F, d, cfg);
  CHECK(red.length() == 2);
  const std::vector<CVector> expect{vec({0, 1, -5}), vec({3, 2, -1})};
  CHECK(equivalence_distance(red.vectors, expect, 4) < 1e-6);
}
