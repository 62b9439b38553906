#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "symdec/fixtures.hpp"
#include "symdec/random.hpp"
#include "symdec/symtensor.hpp"

namespace testing {

using symdec::cplx;
using symdec::CMatrix;
using symdec::CVector;
using symdec::SymTensor;

inline CVector vec(std::initializer_list<cplx> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

inline SymTensor cubic_rank3() { return symdec::fixture("cubic3-rank3").tensor; }

// The three points of the rank-3 cubic, with weights 3, 5, -1.
inline std::vector<CVector> cubic_rank3_points() {
  return {vec({-2, -1}), vec({1, 2}), vec({2, -2})};
}

inline double max_abs_diff(const SymTensor& a, const SymTensor& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs(const SymTensor& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i]));
  return d;
}

inline SymTensor random_tensor(std::size_t n, int m, symdec::Rng& rng) {
  SymTensor shape(n, m);
  std::vector<cplx> c(shape.size());
  for (auto& x : c) x = symdec::complex_normal(rng);
  return SymTensor(n, m, c);
}

inline std::vector<CVector> random_points(std::size_t n, std::size_t r, symdec::Rng& rng) {
  std::vector<CVector> pts;
  for (std::size_t i = 0; i < r; ++i)
    pts.push_back(symdec::complex_normal_vector(rng, static_cast<Eigen::Index>(n)));
  return pts;
}

// lambda_i^{1/m} (1, v_i).
inline std::vector<CVector> lift(const std::vector<CVector>& pts, const CVector& lambda, int m) {
  std::vector<CVector> us;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CVector u(pts[i].size() + 1);
    u(0) = 1.0;
    u.tail(pts[i].size()) = pts[i];
    us.push_back(std::pow(lambda(static_cast<Eigen::Index>(i)), 1.0 / m) * u);
  }
  return us;
}

// Entry (i_1..i_m) of sum_k u_k^{(x)m}, straight from the definition.
inline cplx rank_one_entry(const std::vector<CVector>& us, const std::vector<int>& idx) {
  cplx s = 0.0;
  for (const auto& u : us) {
    cplx p = 1.0;
    for (int i : idx) p *= u(i);
    s += p;
  }
  return s;
}

// Calls f on every index tuple in {0..n}^m.
template <class Fn>
void for_each_tuple(std::size_t n, int m, Fn&& f) {
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  while (true) {
    f(idx);
    int k = m - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == static_cast<int>(n)) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) return;
    ++idx[static_cast<std::size_t>(k)];
  }
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace testing
