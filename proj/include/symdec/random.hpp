#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "symdec/types.hpp"

namespace symdec {

using Rng = std::mt19937_64;

/// Generator for stream `stream` of `seed`; distinct streams are independent.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return Rng(seq);
}

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
inline cplx complex_normal(Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

inline CVector complex_normal_vector(Rng& rng, Eigen::Index len) {
  CVector v(len);
  for (Eigen::Index i = 0; i < len; ++i) v(i) = complex_normal(rng);
  return v;
}

inline CMatrix complex_normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  CMatrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = complex_normal(rng);
  return a;
}

}  // namespace symdec
