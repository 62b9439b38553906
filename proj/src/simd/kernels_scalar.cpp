#include "symdec/simd/kernels.hpp"

namespace symdec::simd {
namespace {

void cmul_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                 double* outr, double* outi, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    const double re = ar[k] * br[k] - ai[k] * bi[k];
    const double im = ar[k] * bi[k] + ai[k] * br[k];
    outr[k] = re;
    outi[k] = im;
  }
}

void cdotu_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                  std::size_t len, double* res_re, double* res_im) {
  double sr = 0.0, si = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    sr += ar[k] * br[k] - ai[k] * bi[k];
    si += ar[k] * bi[k] + ai[k] * br[k];
  }
  *res_re = sr;
  *res_im = si;
}

double weighted_abs2_scalar(const double* zr, const double* zi, const double* w,
                            std::size_t len) {
  double s = 0.0;
  for (std::size_t k = 0; k < len; ++k) s += w[k] * (zr[k] * zr[k] + zi[k] * zi[k]);
  return s;
}

void caxpy_scalar(double alpha_re, double alpha_im, const double* xr, const double* xi,
                  double* yr, double* yi, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    yr[k] += alpha_re * xr[k] - alpha_im * xi[k];
    yi[k] += alpha_re * xi[k] + alpha_im * xr[k];
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", cmul_scalar, cdotu_scalar, weighted_abs2_scalar,
                                 caxpy_scalar};
  return table;
}

}  // namespace symdec::simd
