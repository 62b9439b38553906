#pragma once

// Complex inner-loop kernels over split (structure-of-arrays) storage.
//
// Every kernel has a portable scalar reference implementation. Vector variants
// (currently AVX2+FMA) are compiled into separate translation units and picked
// once at startup from the CPU feature bits. Setting SYMDEC_SIMD=scalar in the
// environment forces the reference path.

#include <cstddef>
#include <string_view>

namespace symdec::simd {

struct KernelTable {
  std::string_view isa;

  // out[k] = a[k] * b[k]; out may alias a or b.
  void (*cmul)(const double* ar, const double* ai, const double* br, const double* bi,
               double* outr, double* outi, std::size_t len);

  // sum_k a[k] * b[k] (no conjugation).
  void (*cdotu)(const double* ar, const double* ai, const double* br, const double* bi,
                std::size_t len, double* res_re, double* res_im);

  // sum_k w[k] * |z[k]|^2
  double (*weighted_abs2)(const double* zr, const double* zi, const double* w, std::size_t len);

  // y[k] += alpha * x[k]
  void (*caxpy)(double alpha_re, double alpha_im, const double* xr, const double* xi, double* yr,
                double* yi, std::size_t len);
};

/// Portable reference kernels.
const KernelTable& scalar_kernels();

/// AVX2 kernels when compiled in and supported by the running CPU, else nullptr.
const KernelTable* avx2_kernels();

/// The table selected for this process.
const KernelTable& kernels();

namespace detail {
const KernelTable& avx2_table();
}

}  // namespace symdec::simd
