#include "symdec/zerosolve.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "symdec/random.hpp"

namespace symdec {

bool ZeroSet::nondefective() const {
  for (const auto& p : points)
    if (p.multiplicity != 1) return false;
  return true;
}

std::vector<CVector> ZeroSet::distinct_points() const {
  std::vector<CVector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.v);
  return out;
}

namespace {

std::vector<double> simplex_weights(std::size_t n, std::uint64_t seed) {
  auto rng = make_rng(seed, 0x21);
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> e(n);
  for (auto& x : e) x = ex(rng);
  const double total = std::accumulate(e.begin(), e.end(), 0.0);
  double floor = 0.05;
  if (floor * static_cast<double>(n) >= 1.0) floor = 0.5 / static_cast<double>(n);
  const double rest = 1.0 - floor * static_cast<double>(n);
  std::vector<double> xi(n);
  for (std::size_t i = 0; i < n; ++i) xi[i] = floor + rest * e[i] / total;
  return xi;
}

// Swaps diagonal entries k and k+1 of the upper-triangular T by a unitary
// rotation, updating Q so that Q* N Q = T still holds.
void swap_adjacent(CMatrix& t, CMatrix& q, Eigen::Index k) {
  const cplx a = t(k, k);
  const cplx b = t(k, k + 1);
  const cplx c = t(k + 1, k + 1);
  cplx x1 = b, x2 = c - a;
  const double h = std::hypot(std::abs(x1), std::abs(x2));
  if (h == 0.0) return;
  x1 /= h;
  x2 /= h;
  Eigen::Matrix2cd u;
  u << x1, -std::conj(x2), x2, std::conj(x1);
  t.middleRows(k, 2) = u.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * u;
  q.middleCols(k, 2) = q.middleCols(k, 2) * u;
  t(k + 1, k) = 0.0;
  t(k, k) = c;
  t(k + 1, k + 1) = a;
}

}  // namespace

ZeroSet cgt_zeros(const CompanionSet& cs, std::uint64_t seed, double cluster_tol) {
  const std::size_t n = cs.num_vars();
  const Eigen::Index r = static_cast<Eigen::Index>(cs.r());
  if (n == 0 || r == 0) throw DimensionError("empty companion family");

  const auto xi = simplex_weights(n, seed);
  CMatrix combo = CMatrix::Zero(r, r);
  for (std::size_t i = 0; i < n; ++i) combo += xi[i] * cs.mats[i];

  Eigen::ComplexSchur<CMatrix> schur(combo);
  if (schur.info() != Eigen::Success) throw NumericalError("complex Schur decomposition failed");
  CMatrix t = schur.matrixT();
  CMatrix q = schur.matrixU();

  // Single-linkage clusters of the diagonal (union-find).
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(r));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](Eigen::Index a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = a + 1; b < r; ++b) {
      const double scale = 1.0 + std::max(std::abs(t(a, a)), std::abs(t(b, b)));
      if (std::abs(t(a, a) - t(b, b)) <= cluster_tol * scale) parent[root(a)] = root(b);
    }
  // Cluster label = order of first appearance along the diagonal.
  std::vector<int> label(static_cast<std::size_t>(r), -1);
  std::vector<int> root_label(static_cast<std::size_t>(r), -1);
  int clusters = 0;
  for (Eigen::Index a = 0; a < r; ++a) {
    auto& rl = root_label[root(a)];
    if (rl < 0) rl = clusters++;
    label[a] = rl;
  }

  // Insertion sort by label using adjacent swaps, so each cluster is contiguous.
  for (Eigen::Index a = 1; a < r; ++a)
    for (Eigen::Index k = a; k > 0 && label[k - 1] > label[k]; --k) {
      swap_adjacent(t, q, k - 1);
      std::swap(label[k - 1], label[k]);
    }

  std::vector<Eigen::Index> start{0};
  for (Eigen::Index a = 1; a < r; ++a)
    if (label[a] != label[a - 1]) start.push_back(a);
  start.push_back(r);

  ZeroSet zs;
  std::vector<CVector> coords(start.size() - 1, CVector(static_cast<Eigen::Index>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix conj = q.adjoint() * cs.mats[i] * q;
    double below = 0.0;
    for (Eigen::Index col = 0; col < r; ++col) {
      const auto blk = static_cast<std::size_t>(
          std::upper_bound(start.begin(), start.end(), col) - start.begin() - 1);
      for (Eigen::Index row = start[blk + 1]; row < r; ++row) below += std::norm(conj(row, col));
    }
    const double scale = conj.norm();
    if (scale > 0.0) zs.off_pattern = std::max(zs.off_pattern, std::sqrt(below) / scale);
    for (std::size_t j = 0; j + 1 < start.size(); ++j) {
      const Eigen::Index s = start[j + 1] - start[j];
      coords[j](static_cast<Eigen::Index>(i)) =
          conj.block(start[j], start[j], s, s).trace() / static_cast<double>(s);
    }
  }
  for (std::size_t j = 0; j + 1 < start.size(); ++j) {
    const int mult = static_cast<int>(start[j + 1] - start[j]);
    zs.points.push_back({std::move(coords[j]), mult});
    zs.total += mult;
  }
  if (zs.total != r) throw NumericalError("cluster sizes do not sum to r");
  return zs;
}

bool stickelberger_check(const CompanionSet& cs, const ZeroSet& zs, double tol) {
  const std::size_t n = cs.num_vars();
  const Eigen::Index r = static_cast<Eigen::Index>(cs.r());
  for (const auto& p : zs.points) {
    if (static_cast<std::size_t>(p.v.size()) != n) return false;
    CMatrix stack(static_cast<Eigen::Index>(n) * r, r);
    for (std::size_t i = 0; i < n; ++i)
      stack.middleRows(static_cast<Eigen::Index>(i) * r, r) =
          cs.mats[i].transpose() - p.v(static_cast<Eigen::Index>(i)) * CMatrix::Identity(r, r);
    Eigen::JacobiSVD<CMatrix> svd(stack, Eigen::ComputeThinV);
    const CVector w = svd.matrixV().col(r - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, (stack.middleRows(static_cast<Eigen::Index>(i) * r, r) * w).norm());
    if (worst > tol) return false;
  }
  return true;
}

}  // namespace symdec
