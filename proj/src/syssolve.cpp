#include "symdec/syssolve.hpp"

#include <algorithm>
#include <limits>

#include "symdec/levmar.hpp"
#include "symdec/matching.hpp"
#include "symdec/random.hpp"
#include "symdec/zerosolve.hpp"

namespace symdec {

namespace {

void check_constraints(const GenMatrixParam& param, const AffineConstraints& ac) {
  if (ac.count() > 0 && static_cast<std::size_t>(ac.a.cols()) != param.omega_len)
    throw DimensionError("affine constraint rows must have length ell");
  if (ac.b.size() != ac.count()) throw DimensionError("affine constraint sizes disagree");
}

std::vector<CVector> expanded_points(const ZeroSet& zs) {
  std::vector<CVector> out;
  for (const auto& p : zs.points)
    for (int k = 0; k < p.multiplicity; ++k) out.push_back(p.v);
  return out;
}

}  // namespace

CVector residual_map(const GenMatrixParam& param, const AffineConstraints& ac, const CVector& omega) {
  check_constraints(param, ac);
  const CVector comm = commutator_residual(companion(param.at(omega)));
  CVector out(comm.size() + ac.count());
  out.head(comm.size()) = comm;
  if (ac.count() > 0) out.tail(ac.count()) = ac.a * omega - ac.b;
  return out;
}

CMatrix residual_jacobian(const GenMatrixParam& param, const AffineConstraints& ac,
                          const CVector& omega) {
  check_constraints(param, ac);
  const auto& bp = param.basis;
  const std::size_t n = bp.n;
  const Eigen::Index r = static_cast<Eigen::Index>(bp.r());
  const auto cs = companion(param.at(omega));
  const Eigen::Index blocks = static_cast<Eigen::Index>(n * (n - 1) / 2);
  const Eigen::Index ell = static_cast<Eigen::Index>(param.omega_len);
  CMatrix jac = CMatrix::Zero(blocks * r * r + ac.count(), ell);

  std::vector<long> nu(n);
  std::vector<CVector> mx(n);
  CMatrix d(r, r);
  for (std::size_t col = 0; col < bp.b1.size(); ++col) {
    const auto& alpha = bp.b1[col];
    for (std::size_t i = 0; i < n; ++i)
      nu[i] = alpha[i] > 0 ? bp.find_b0(alpha - MonomialPower::unit(n, i)) : -1;
    const auto& nb = param.null_bases[col];
    for (Eigen::Index k = 0; k < nb.cols(); ++k) {
      const CVector x = nb.col(k);
      for (std::size_t j = 0; j < n; ++j) mx[j] = cs.mats[j] * x;
      Eigen::Index pos = 0;
      const Eigen::Index jcol = static_cast<Eigen::Index>(param.offsets[col]) + k;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, pos += r * r) {
          if (nu[i] < 0 && nu[j] < 0) continue;
          d.setZero();
          if (nu[i] >= 0) {
            d += x * cs.mats[j].row(nu[i]);
            d.col(nu[i]) -= mx[j];
          }
          if (nu[j] >= 0) {
            d.col(nu[j]) += mx[i];
            d -= x * cs.mats[i].row(nu[j]);
          }
          jac.col(jcol).segment(pos, r * r) = Eigen::Map<const CVector>(d.data(), d.size());
        }
      }
    }
  }
  if (ac.count() > 0) jac.bottomRows(ac.count()) = ac.a;
  return jac;
}

namespace {

// Gauss-Newton corrector at fixed right-hand side; returns the final residual norm.
double correct(const GenMatrixParam& param, const AffineConstraints& ac, CVector& omega,
               int iters, double tol) {
  double res = residual_map(param, ac, omega).norm();
  for (int k = 0; k < iters && res > tol; ++k) {
    const CVector f = residual_map(param, ac, omega);
    const CMatrix jac = residual_jacobian(param, ac, omega);
    const CVector step = jac.colPivHouseholderQr().solve(-f);
    const CVector next = omega + step;
    const double nres = residual_map(param, ac, next).norm();
    if (!(nres < res)) break;
    omega = next;
    res = nres;
  }
  return res;
}

}  // namespace

std::optional<CVector> track_slice(const GenMatrixParam& param, const CMatrix& a,
                                   const CVector& b_from, const CVector& b_to, CVector omega,
                                   double tol) {
  AffineConstraints ac{a, b_from};
  const CVector db = b_to - b_from;
  const Eigen::Index rows = residual_map(param, ac, omega).size();
  double t = 0.0;
  double h = 0.05;
  int steps = 0;
  while (t < 1.0) {
    if (++steps > 2000 || h < 1e-9) return std::nullopt;
    h = std::min(h, 1.0 - t);
    // Tangent: J domega/dt = (0, db).
    CVector rhs = CVector::Zero(rows);
    rhs.tail(db.size()) = db;
    ac.b = b_from + t * db;
    const CMatrix jac = residual_jacobian(param, ac, omega);
    const auto qr = jac.colPivHouseholderQr();
    const CVector tangent = qr.solve(rhs);
    CVector trial = omega + h * tangent;
    ac.b = b_from + (t + h) * db;
    const double scale = 1.0 + trial.norm();
    const double res = correct(param, ac, trial, 3, 1e-10 * scale);
    if (res <= 1e-8 * scale && (trial - omega).norm() <= 0.5 * (1.0 + omega.norm())) {
      omega = std::move(trial);
      t += h;
      h *= 1.5;
    } else {
      h *= 0.5;
    }
  }
  ac.b = b_to;
  if (correct(param, ac, omega, 10, tol) > tol) return std::nullopt;
  return omega;
}

AffineConstraints random_affine(std::size_t ell, std::size_t d, std::uint64_t seed) {
  if (d > ell) throw DomainError("cannot impose more affine constraints than unknowns");
  auto rng = make_rng(seed, 0xaff);
  AffineConstraints ac;
  ac.a = complex_normal_matrix(rng, static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(ell));
  ac.b = complex_normal_vector(rng, static_cast<Eigen::Index>(d));
  return ac;
}

CVector numeric_solve(const GenMatrixParam& param, const AffineConstraints& ac,
                      const CVector& omega0, const SolveConfig& cfg) {
  check_constraints(param, ac);
  if (static_cast<std::size_t>(omega0.size()) != param.omega_len)
    throw DimensionError("starting point has wrong length");
  const double scale = 1.0 + param.c.data.norm();
  const double target = cfg.residual_tol * scale;
  const double accept = std::max(cfg.accept_tol, cfg.residual_tol) * scale;

  if (param.omega_len == 0) {
    const double res = residual_map(param, ac, omega0).norm();
    if (res <= accept) return omega0;
    NoConvergence err("generating matrix with no free parameters is inconsistent", res);
    err.best_omega = omega0;
    throw err;
  }

  const ResidualFn fn = [&](const CVector& x, CVector& f, CMatrix* jac) {
    f = residual_map(param, ac, x);
    if (jac) *jac = residual_jacobian(param, ac, x);
  };
  const LmOptions opts{cfg.max_iters, target, cfg.damping_init};
  const Eigen::Index ell = static_cast<Eigen::Index>(param.omega_len);
  const double spread = std::max(1.0, omega0.norm() / std::sqrt(static_cast<double>(ell)));

  LmResult best;
  best.residual = std::numeric_limits<double>::infinity();
  const int attempts = std::max(1, cfg.max_restarts);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    CVector start = omega0;
    if (attempt > 0) {
      auto rng = make_rng(cfg.seed, 0x5000 + static_cast<std::uint64_t>(attempt));
      start = spread * complex_normal_vector(rng, ell);
    }
    auto res = levenberg_marquardt(fn, std::move(start), opts);
    if (res.residual <= accept) return res.x;
    if (res.residual < best.residual) best = std::move(res);
  }
  NoConvergence err("commutator system did not converge (best residual " +
                        std::to_string(best.residual) + ")",
                    best.residual);
  err.best_omega = best.x;
  throw err;
}

double zero_set_distance(const std::vector<CVector>& a, const std::vector<CVector>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const Eigen::Index k = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd cost(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& x = a[static_cast<std::size_t>(i)];
      const auto& y = b[static_cast<std::size_t>(j)];
      cost(i, j) = x.size() == y.size()
                       ? (x - y).norm() / (1.0 + std::max(x.norm(), y.norm()))
                       : std::numeric_limits<double>::infinity();
    }
  return matched_max_cost(cost);
}

std::vector<CVector> all_solve(const GenMatrixParam& param, const AffineConstraints& ac,
                               const SolveConfig& cfg, std::span<const CVector> warm_starts) {
  check_constraints(param, ac);
  const double scale = 1.0 + param.c.data.norm();
  const double accept = std::max(cfg.accept_tol, cfg.residual_tol) * scale;
  if (param.omega_len == 0) {
    const CVector empty(0);
    if (residual_map(param, ac, empty).norm() <= accept) return {empty};
    return {};
  }

  std::vector<CVector> found;
  std::vector<std::vector<CVector>> keys;
  // Adds omega if it solves the system and its zero set is new.
  auto admit = [&](CVector omega) {
    if (residual_map(param, ac, omega).norm() > accept) return false;
    std::vector<CVector> key;
    try {
      key = expanded_points(cgt_zeros(companion(param.at(omega)), cfg.seed, cfg.cluster_tol));
    } catch (const NumericalError&) {
      return false;
    }
    for (const auto& other : keys)
      if (zero_set_distance(key, other) <= cfg.dedup_tol) return false;
    keys.push_back(std::move(key));
    found.push_back(std::move(omega));
    return true;
  };

  const ResidualFn fn = [&](const CVector& x, CVector& f, CMatrix* jac) {
    f = residual_map(param, ac, x);
    if (jac) *jac = residual_jacobian(param, ac, x);
  };
  const LmOptions opts{cfg.max_iters, cfg.residual_tol * scale, cfg.damping_init};
  const Eigen::Index ell = static_cast<Eigen::Index>(param.omega_len);
  for (const auto& start : warm_starts) {
    if (static_cast<std::size_t>(start.size()) != param.omega_len)
      throw DimensionError("warm start has wrong length");
    auto res = levenberg_marquardt(fn, start, opts);
    if (res.residual <= accept) admit(std::move(res.x));
  }
  std::uniform_real_distribution<double> exponent(0.0, 3.0);
  for (int k = 0; k < cfg.max_restarts; ++k) {
    auto rng = make_rng(cfg.seed, 0x10000 + static_cast<std::uint64_t>(k));
    const double s = std::pow(10.0, exponent(rng));
    auto res = levenberg_marquardt(fn, s * complex_normal_vector(rng, ell), opts);
    if (res.residual <= accept) admit(std::move(res.x));
  }

  const Eigen::Index d = ac.count();
  if (d == 0 || found.empty()) return found;
  auto rng = make_rng(cfg.seed, 0x30000);
  std::uniform_real_distribution<double> loop_exponent(0.0, 3.5);
  const double track_tol = accept;
  int stale = 0;
  for (int loop = 0; loop < cfg.monodromy_loops && stale < cfg.monodromy_stale; ++loop) {
    const double radius = std::pow(10.0, loop_exponent(rng)) * (1.0 + ac.b.norm());
    const CVector b1 = radius * complex_normal_vector(rng, d);
    const CVector b2 = radius * complex_normal_vector(rng, d);
    bool added = false;
    const auto known = found;
    for (const auto& omega : known) {
      auto w = track_slice(param, ac.a, ac.b, b1, omega, track_tol);
      if (w) w = track_slice(param, ac.a, b1, b2, std::move(*w), track_tol);
      if (w) w = track_slice(param, ac.a, b2, ac.b, std::move(*w), track_tol);
      if (w && admit(std::move(*w))) added = true;
    }
    stale = added ? 0 : stale + 1;
  }
  return found;
}

}  // namespace symdec
