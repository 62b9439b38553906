// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "symdec/simd/kernels.hpp"

namespace symdec::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void cmul_avx2(const double* ar, const double* ai, const double* br, const double* bi,
               double* outr, double* outi, std::size_t len) {
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + k);
    const __m256d xi = _mm256_loadu_pd(ai + k);
    const __m256d yr = _mm256_loadu_pd(br + k);
    const __m256d yi = _mm256_loadu_pd(bi + k);
    const __m256d re = _mm256_fmsub_pd(xr, yr, _mm256_mul_pd(xi, yi));
    const __m256d im = _mm256_fmadd_pd(xr, yi, _mm256_mul_pd(xi, yr));
    _mm256_storeu_pd(outr + k, re);
    _mm256_storeu_pd(outi + k, im);
  }
  for (; k < len; ++k) {
    const double re = ar[k] * br[k] - ai[k] * bi[k];
    const double im = ar[k] * bi[k] + ai[k] * br[k];
    outr[k] = re;
    outi[k] = im;
  }
}

void cdotu_avx2(const double* ar, const double* ai, const double* br, const double* bi,
                std::size_t len, double* res_re, double* res_im) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const __m256d xr = _mm256_loadu_pd(ar + k);
    const __m256d xi = _mm256_loadu_pd(ai + k);
    const __m256d yr = _mm256_loadu_pd(br + k);
    const __m256d yi = _mm256_loadu_pd(bi + k);
    sr = _mm256_fmadd_pd(xr, yr, sr);
    sr = _mm256_fnmadd_pd(xi, yi, sr);
    si = _mm256_fmadd_pd(xr, yi, si);
    si = _mm256_fmadd_pd(xi, yr, si);
  }
  double tr = hsum(sr), ti = hsum(si);
  for (; k < len; ++k) {
    tr += ar[k] * br[k] - ai[k] * bi[k];
    ti += ar[k] * bi[k] + ai[k] * br[k];
  }
  *res_re = tr;
  *res_im = ti;
}

double weighted_abs2_avx2(const double* zr, const double* zi, const double* w, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const __m256d xr = _mm256_loadu_pd(zr + k);
    const __m256d xi = _mm256_loadu_pd(zi + k);
    const __m256d mag = _mm256_fmadd_pd(xr, xr, _mm256_mul_pd(xi, xi));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), mag, acc);
  }
  double s = hsum(acc);
  for (; k < len; ++k) s += w[k] * (zr[k] * zr[k] + zi[k] * zi[k]);
  return s;
}

void caxpy_avx2(double alpha_re, double alpha_im, const double* xr, const double* xi, double* yr,
                double* yi, std::size_t len) {
  const __m256d are = _mm256_set1_pd(alpha_re);
  const __m256d aim = _mm256_set1_pd(alpha_im);
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const __m256d vr = _mm256_loadu_pd(xr + k);
    const __m256d vi = _mm256_loadu_pd(xi + k);
    __m256d outr = _mm256_loadu_pd(yr + k);
    __m256d outi = _mm256_loadu_pd(yi + k);
    outr = _mm256_fmadd_pd(are, vr, outr);
    outr = _mm256_fnmadd_pd(aim, vi, outr);
    outi = _mm256_fmadd_pd(are, vi, outi);
    outi = _mm256_fmadd_pd(aim, vr, outi);
    _mm256_storeu_pd(yr + k, outr);
    _mm256_storeu_pd(yi + k, outi);
  }
  for (; k < len; ++k) {
    yr[k] += alpha_re * xr[k] - alpha_im * xi[k];
    yi[k] += alpha_re * xi[k] + alpha_im * xr[k];
  }
}

}  // namespace

namespace detail {
const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", cmul_avx2, cdotu_avx2, weighted_abs2_avx2, caxpy_avx2};
  return table;
}
}  // namespace detail

}  // namespace symdec::simd
