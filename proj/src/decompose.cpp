#include "symdec/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "symdec/catalecticant.hpp"
#include "symdec/levmar.hpp"
#include "symdec/matching.hpp"
#include "symdec/random.hpp"
#include "symdec/zerosolve.hpp"

namespace symdec {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Row lookups into N^n_{m-1} for d/du_j of u^theta, theta = (m-|alpha|, alpha).
struct DerivativeIndex {
  std::vector<long> idx;  // size * (n+1), -1 where theta_j = 0
  std::vector<double> exponent;
};

DerivativeIndex derivative_index(std::size_t n, int m) {
  const auto top = monomial_space(n, m);
  const auto low = monomial_space(n, m - 1);
  DerivativeIndex di;
  di.idx.assign(top->size() * (n + 1), -1);
  di.exponent.assign(top->size() * (n + 1), 0.0);
  for (std::size_t a = 0; a < top->size(); ++a) {
    const auto& alpha = (*top)[a];
    const int theta0 = m - alpha.degree();
    if (theta0 > 0) {
      di.idx[a * (n + 1)] = low->find(alpha);
      di.exponent[a * (n + 1)] = theta0;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] == 0) continue;
      di.idx[a * (n + 1) + j + 1] = low->find(alpha - MonomialPower::unit(n, j));
      di.exponent[a * (n + 1) + j + 1] = alpha[j];
    }
  }
  return di;
}

std::vector<CVector> unpack(const CVector& x, std::size_t r, std::size_t dim) {
  std::vector<CVector> out(r);
  for (std::size_t i = 0; i < r; ++i) out[i] = x.segment(ix(i * dim), ix(dim));
  return out;
}

CVector pack(std::span<const CVector> vs, std::size_t dim) {
  CVector x(ix(vs.size() * dim));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (static_cast<std::size_t>(vs[i].size()) != dim)
      throw DimensionError("decomposition vectors must have length n+1");
    x.segment(ix(i * dim), ix(dim)) = vs[i];
  }
  return x;
}

std::vector<CVector> random_vectors(Rng& rng, std::size_t count, std::size_t len) {
  std::vector<CVector> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(complex_normal_vector(rng, ix(len)));
  return out;
}

// Dehomogenized points v with u = tau (1, v); random v when u_0 is negligible.
std::vector<CVector> dehomogenize(std::span<const CVector> us, Rng& rng) {
  std::vector<CVector> out;
  for (const auto& u : us) {
    const Eigen::Index n = u.size() - 1;
    if (std::abs(u(0)) <= 1e-6 * u.norm())
      out.push_back(complex_normal_vector(rng, n));
    else
      out.push_back(u.tail(n) / u(0));
  }
  return out;
}

GenMatrix warm_generating_matrix(std::vector<CVector> points, const BasisPair& basis, Rng& rng) {
  for (int tries = 0;; ++tries) {
    try {
      return from_points(points, basis);
    } catch (const SingularVandermonde&) {
      if (tries >= 3) throw;
      for (auto& v : points) {
        const double s = 1e-3 * std::max(1.0, v.norm());
        v += s * complex_normal_vector(rng, v.size());
      }
    }
  }
}

Decomposition decompose_once(const SymTensor& F, std::size_t r, const GenMatrixParam& param,
                             const SolveConfig& cfg, std::uint64_t stream) {
  const std::size_t n = F.num_vars();
  const double tol = cfg.fit_tol * norm(F);
  const double polish_tol = 0.0;
  auto rng = make_rng(cfg.seed, stream);

  auto nls = nls_fit(F, random_vectors(rng, r, n + 1), cfg.nls_max_iters, polish_tol);
  if (nls.residual <= tol) return {std::move(nls.vectors), nls.residual, DecompositionMode::numeric};

  const GenMatrix g0 = warm_generating_matrix(dehomogenize(nls.vectors, rng), param.basis, rng);
  const CVector omega0 = param.project(g0);
  const std::size_t ell = param.omega_len;
  const std::size_t d = std::min<std::size_t>(
      static_cast<std::size_t>(dimension_gap(static_cast<int>(n), F.order(), static_cast<int>(r))),
      ell);
  AffineConstraints ac;
  ac.a = complex_normal_matrix(rng, ix(d), ix(ell));
  ac.b = ac.a * omega0;

  CVector omega;
  SolveConfig sub = cfg;
  sub.seed = rng();
  try {
    omega = numeric_solve(param, ac, omega0, sub);
  } catch (NoConvergence& e) {
    e.best_vectors = nls.vectors;
    e.best_error = nls.residual;
    throw;
  }

  const auto zs = cgt_zeros(companion(param.at(omega)), rng(), cfg.cluster_tol);
  auto points = zs.distinct_points();
  while (points.size() < r) points.push_back(complex_normal_vector(rng, ix(n)));

  const CVector lambda = weights_from_points(F, points);
  auto refined = nls_fit(F, assemble(lambda, points, F.order()), cfg.nls_max_iters, polish_tol);
  return {std::move(refined.vectors), refined.residual, DecompositionMode::numeric};
}

// Working tensor (possibly L_Q(F)) with its parameterization. When the
// dehomogenized systems of F are inconsistent, a random unitary transform is
// tried before giving up, since vectors with u_0 = 0 break the affine chart.
struct Prepared {
  SymTensor work;
  std::optional<CMatrix> q;
  GenMatrixParam param;
};

Prepared prepare(const SymTensor& F, int r, const SolveConfig& cfg) {
  const auto transformed = [&] {
    const CMatrix q = random_unitary(F.dim(), cfg.seed ^ 0x7a11u);
    SymTensor w = unitary_transform(F, q);
    auto param = parameterize(w, static_cast<std::size_t>(r));
    return Prepared{std::move(w), q, std::move(param)};
  };
  if (cfg.random_transform) return transformed();
  try {
    return Prepared{F, std::nullopt, parameterize(F, static_cast<std::size_t>(r))};
  } catch (const InconsistentSystem& first) {
    try {
      return transformed();
    } catch (const InconsistentSystem&) {
      throw first;
    }
  }
}

void map_back(const Prepared& prep, std::vector<CVector>& vectors) {
  if (!prep.q) return;
  for (auto& u : vectors) u = prep.q->adjoint() * u;
}

// Multiplies each u by the m-th root of unity that puts the argument of its
// first non-negligible coordinate into (-pi/m, pi/m].
void canonical_phase(std::vector<CVector>& vectors, int m) {
  constexpr double pi = std::numbers::pi;
  for (auto& u : vectors) {
    const double scale = u.norm();
    if (scale == 0.0) continue;
    Eigen::Index j = 0;
    while (j + 1 < u.size() && std::abs(u(j)) <= 1e-8 * scale) ++j;
    const double step = 2.0 * pi / m;
    const double k = std::ceil((std::arg(u(j)) - pi / m) / step - 1e-12);
    if (k != 0.0) u *= std::polar(1.0, -k * step);
  }
}

}  // namespace

double decomposition_error(const SymTensor& F, std::span<const CVector> vectors) {
  if (vectors.empty()) return norm(F);
  return norm(from_rank_one_sum(F.num_vars(), F.order(), vectors) - F);
}

NlsResult nls_fit(const SymTensor& F, std::span<const CVector> start, int max_iters,
                  double abs_tol) {
  const std::size_t n = F.num_vars();
  const std::size_t dim = n + 1;
  const std::size_t r = start.size();
  const int m = F.order();
  if (r == 0) return {{}, norm(F)};
  if (m < 1) throw DomainError("nls_fit needs order m >= 1");
  const auto& sw = sqrt_multiplicities(n, m);
  const auto di = derivative_index(n, m);
  const std::size_t rows = F.size();

  const ResidualFn fn = [&](const CVector& x, CVector& f, CMatrix* jac) {
    const auto us = unpack(x, r, dim);
    const PowerTable top(us, n, m);
    f.resize(ix(rows));
    for (std::size_t a = 0; a < rows; ++a) {
      cplx s = -F[a];
      for (std::size_t i = 0; i < r; ++i) s += top(a, i);
      f(ix(a)) = sw[a] * s;
    }
    if (!jac) return;
    const PowerTable low(us, n, m - 1);
    jac->setZero(ix(rows), ix(r * dim));
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t j = 0; j < dim; ++j) {
        const long k = di.idx[a * dim + j];
        if (k < 0) continue;
        const double c = sw[a] * di.exponent[a * dim + j];
        for (std::size_t i = 0; i < r; ++i)
          (*jac)(ix(a), ix(i * dim + j)) = c * low(static_cast<std::size_t>(k), i);
      }
  };
  auto res = levenberg_marquardt(fn, pack(start, dim), {max_iters, abs_tol, 1e-3});
  NlsResult out{unpack(res.x, r, dim), 0.0};
  out.residual = decomposition_error(F, out.vectors);
  return out;
}

NlsResult nls_fit(const SymTensor& F, std::size_t r, std::uint64_t seed, int max_iters,
                  double abs_tol) {
  auto rng = make_rng(seed, 0x4e15);
  return nls_fit(F, random_vectors(rng, r, F.dim()), max_iters, abs_tol);
}

CVector weights_from_points(const SymTensor& F, std::span<const CVector> points) {
  const std::size_t n = F.num_vars();
  const std::size_t r = points.size();
  std::vector<CVector> us;
  for (const auto& v : points) {
    if (static_cast<std::size_t>(v.size()) != n) throw DimensionError("point must lie in C^n");
    CVector u(ix(n + 1));
    u(0) = 1.0;
    u.tail(ix(n)) = v;
    us.push_back(std::move(u));
  }
  const auto& sw = sqrt_multiplicities(n, F.order());
  const PowerTable table(us, n, F.order());
  CMatrix a(ix(F.size()), ix(r));
  CVector b(ix(F.size()));
  for (std::size_t k = 0; k < F.size(); ++k) {
    for (std::size_t i = 0; i < r; ++i) a(ix(k), ix(i)) = sw[k] * table(k, i);
    b(ix(k)) = sw[k] * F[k];
  }
  return a.completeOrthogonalDecomposition().solve(b);
}

std::vector<CVector> assemble(const CVector& lambda, std::span<const CVector> points, int m) {
  if (static_cast<std::size_t>(lambda.size()) != points.size())
    throw DimensionError("one weight per point expected");
  if (m < 1) throw DomainError("order must be positive");
  std::vector<CVector> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const cplx l = lambda(ix(i));
    const cplx root = l == cplx(0.0) ? cplx(0.0) : std::pow(l, 1.0 / m);
    CVector u(points[i].size() + 1);
    u(0) = 1.0;
    u.tail(points[i].size()) = points[i];
    out.push_back(root * u);
  }
  return out;
}

Decomposition decompose_numeric(const SymTensor& F, std::optional<int> r, const SolveConfig& cfg) {
  const int n = static_cast<int>(F.num_vars());
  const int rank = r ? *r : generic_rank(n, F.order());
  if (rank < 1) throw DomainError("decomposition length must be at least 1");
  if (norm(F) == 0.0)
    return {std::vector<CVector>(static_cast<std::size_t>(rank), CVector::Zero(ix(F.dim()))), 0.0,
            DecompositionMode::numeric};

  const auto prep = prepare(F, rank, cfg);
  const double tol = cfg.fit_tol * norm(prep.work);
  std::optional<Decomposition> best;
  std::optional<NoConvergence> failure;
  for (int attempt = 0; attempt < std::max(1, cfg.attempts); ++attempt) {
    try {
      auto dec = decompose_once(prep.work, static_cast<std::size_t>(rank), prep.param, cfg,
                                0x100 + static_cast<std::uint64_t>(attempt));
      if (!best || dec.error < best->error) best = std::move(dec);
      if (best->error <= tol) break;
    } catch (const NoConvergence& e) {
      if (!failure || e.best_error < failure->best_error) failure = e;
    } catch (const SingularVandermonde&) {
    }
  }
  if (best) {
    map_back(prep, best->vectors);
    canonical_phase(best->vectors, F.order());
    best->error = decomposition_error(F, best->vectors);
    return std::move(*best);
  }
  if (failure) {
    NoConvergence e = *failure;
    map_back(prep, e.best_vectors);
    if (!e.best_vectors.empty()) e.best_error = decomposition_error(F, e.best_vectors);
    throw e;
  }
  throw NumericalError("no attempt produced a decomposition");
}

std::vector<Decomposition> decompose_all(const SymTensor& F, int r, const SolveConfig& cfg) {
  if (r < 1) throw DomainError("decomposition length must be at least 1");
  const std::size_t n = F.num_vars();
  const auto prep = prepare(F, r, cfg);
  const auto& param = prep.param;
  const SymTensor& work = prep.work;
  const std::size_t d = std::min<std::size_t>(
      static_cast<std::size_t>(dimension_gap(static_cast<int>(n), F.order(), r)), param.omega_len);
  const auto ac = random_affine(param.omega_len, d, cfg.seed);
  const double tol = cfg.fit_tol * norm(work);
  const double polish_tol = 0.0;

  // Warm starts from local fits, projected onto the parameterization.
  std::vector<CVector> warm;
  auto rng = make_rng(cfg.seed, 0xa11);
  for (int k = 0; k < std::max(1, cfg.attempts); ++k) {
    auto nls = nls_fit(work, random_vectors(rng, static_cast<std::size_t>(r), n + 1),
                       cfg.nls_max_iters, 0.0);
    try {
      warm.push_back(param.project(warm_generating_matrix(dehomogenize(nls.vectors, rng),
                                                          param.basis, rng)));
    } catch (const SingularVandermonde&) {
    }
  }

  std::vector<Decomposition> out;
  for (const auto& omega : all_solve(param, ac, cfg, warm)) {
    ZeroSet zs;
    try {
      zs = cgt_zeros(companion(param.at(omega)), cfg.seed, cfg.cluster_tol);
    } catch (const NumericalError&) {
      continue;
    }
    if (!zs.nondefective()) continue;
    const auto points = zs.distinct_points();
    auto us = assemble(weights_from_points(work, points), points, F.order());
    Decomposition dec{us, decomposition_error(work, us), DecompositionMode::all_solutions};
    if (dec.error > tol) {
      auto polished = nls_fit(work, us, cfg.nls_max_iters, polish_tol);
      if (polished.residual < dec.error) {
        dec.vectors = std::move(polished.vectors);
        dec.error = polished.residual;
      }
    }
    if (dec.error > tol) continue;
    map_back(prep, dec.vectors);
    canonical_phase(dec.vectors, F.order());
    dec.error = decomposition_error(F, dec.vectors);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Decomposition& o) {
      return equivalent(o.vectors, dec.vectors, F.order(), cfg.dedup_tol);
    });
    if (!dup) out.push_back(std::move(dec));
  }
  return out;
}

Decomposition reduce_length(const SymTensor& F, const Decomposition& dec, const SolveConfig& cfg) {
  const double tol = cfg.fit_tol * norm(F);
  const double polish_tol = 0.0;
  Decomposition cur = dec;
  while (cur.vectors.size() > 1) {
    auto vs = cur.vectors;
    std::stable_sort(vs.begin(), vs.end(),
                     [](const CVector& a, const CVector& b) { return a.norm() > b.norm(); });
    vs.pop_back();
    auto fit = nls_fit(F, vs, cfg.nls_max_iters, polish_tol);
    if (fit.residual > tol) break;
    cur = {std::move(fit.vectors), fit.residual, DecompositionMode::reduced};
    canonical_phase(cur.vectors, F.order());
  }
  return cur;
}

double equivalence_distance(std::span<const CVector> a, std::span<const CVector> b, int m) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const Eigen::Index k = ix(a.size());
  Eigen::MatrixXd cost(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& x = a[static_cast<std::size_t>(i)];
      const auto& y = b[static_cast<std::size_t>(j)];
      if (x.size() != y.size()) {
        cost(i, j) = std::numeric_limits<double>::infinity();
        continue;
      }
      double best = std::numeric_limits<double>::infinity();
      for (int t = 0; t < m; ++t) {
        const cplx tau = std::polar(1.0, 2.0 * std::numbers::pi * t / m);
        best = std::min(best, (x - tau * y).norm());
      }
      cost(i, j) = best / (1.0 + std::max(x.norm(), y.norm()));
    }
  return matched_max_cost(cost);
}

bool equivalent(std::span<const CVector> a, std::span<const CVector> b, int m, double tol) {
  return equivalence_distance(a, b, m) <= tol;
}

CMatrix random_unitary(std::size_t k, std::uint64_t seed) {
  auto rng = make_rng(seed, 0x0a17);
  const CMatrix z = complex_normal_matrix(rng, ix(k), ix(k));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < ix(k); ++j) {
    const double a = std::abs(rr(j, j));
    if (a > 0.0) q.col(j) *= rr(j, j) / a;
  }
  return q;
}

}  // namespace symdec
