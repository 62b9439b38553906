#include <random>
#include <vector>

#include "doctest.h"
#include "symdec/simd/kernels.hpp"

using namespace symdec::simd;

namespace {

struct Buffers {
  std::vector<double> ar, ai, br, bi, w;
};

Buffers make(std::size_t len, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Buffers b;
  for (auto* v : {&b.ar, &b.ai, &b.br, &b.bi, &b.w}) {
    v->resize(len);
    for (auto& x : *v) x = u(rng);
  }
  for (auto& x : b.w) x = std::abs(x);
  return b;
}

void compare(const KernelTable& s, const KernelTable& v) {
  std::mt19937_64 rng(7);
  for (std::size_t len = 0; len <= 67; ++len) {
    CAPTURE(len);
    Buffers b = make(len, rng);
    const double tol = 1e-13 * (1.0 + static_cast<double>(len));

    std::vector<double> sr(len), si(len), vr(len), vi(len);
    s.cmul(b.ar.data(), b.ai.data(), b.br.data(), b.bi.data(), sr.data(), si.data(), len);
    v.cmul(b.ar.data(), b.ai.data(), b.br.data(), b.bi.data(), vr.data(), vi.data(), len);
    for (std::size_t k = 0; k < len; ++k) {
      CHECK(std::abs(sr[k] - vr[k]) <= 1e-14 * 8);
      CHECK(std::abs(si[k] - vi[k]) <= 1e-14 * 8);
    }

    // In-place use.
    std::vector<double> xr = b.ar, xi = b.ai;
    v.cmul(xr.data(), xi.data(), b.br.data(), b.bi.data(), xr.data(), xi.data(), len);
    for (std::size_t k = 0; k < len; ++k) CHECK(std::abs(xr[k] - sr[k]) <= 1e-14 * 8);

    double d1r, d1i, d2r, d2i;
    s.cdotu(b.ar.data(), b.ai.data(), b.br.data(), b.bi.data(), len, &d1r, &d1i);
    v.cdotu(b.ar.data(), b.ai.data(), b.br.data(), b.bi.data(), len, &d2r, &d2i);
    CHECK(std::abs(d1r - d2r) <= tol * 4);
    CHECK(std::abs(d1i - d2i) <= tol * 4);

    const double w1 = s.weighted_abs2(b.ar.data(), b.ai.data(), b.w.data(), len);
    const double w2 = v.weighted_abs2(b.ar.data(), b.ai.data(), b.w.data(), len);
    CHECK(std::abs(w1 - w2) <= tol * (1.0 + w1));

    std::vector<double> y1r = b.br, y1i = b.bi, y2r = b.br, y2i = b.bi;
    s.caxpy(0.3, -1.7, b.ar.data(), b.ai.data(), y1r.data(), y1i.data(), len);
    v.caxpy(0.3, -1.7, b.ar.data(), b.ai.data(), y2r.data(), y2i.data(), len);
    for (std::size_t k = 0; k < len; ++k) {
      CHECK(std::abs(y1r[k] - y2r[k]) <= 1e-14 * 8);
      CHECK(std::abs(y1i[k] - y2i[k]) <= 1e-14 * 8);
    }
  }
}

}  // namespace

TEST_CASE("scalar reference kernels") {
  const auto& s = scalar_kernels();
  CHECK(s.isa == "scalar");
  const double ar[] = {1, 2}, ai[] = {1, 0}, br[] = {1, 0}, bi[] = {-1, 3};
  double re, im;
  s.cdotu(ar, ai, br, bi, 2, &re, &im);
  // (1+i)(1-i) + 2(3i) = 2 + 6i
  CHECK(re == 2.0);
  CHECK(im == 6.0);
  const double w[] = {0.5, 2.0};
  CHECK(s.weighted_abs2(ar, ai, w, 2) == doctest::Approx(0.5 * 2 + 2.0 * 4));
}

TEST_CASE("vector kernels match the scalar reference") {
  const KernelTable* v = avx2_kernels();
  if (v == nullptr) {
    MESSAGE("AVX2 kernels unavailable on this build or CPU; comparing scalar with itself");
    compare(scalar_kernels(), scalar_kernels());
    return;
  }
  CHECK(v->isa == "avx2");
  compare(scalar_kernels(), *v);
}

TEST_CASE("dispatch picks a known table") {
  const auto& k = kernels();
  CHECK((k.isa == "scalar" || k.isa == "avx2"));
}
