// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>

#include "tables.hpp"

namespace lsv::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + k), _mm256_loadu_pd(pb + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + k + 4), _mm256_loadu_pd(pb + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + k), _mm256_loadu_pd(pb + k), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += pa[k] * pb[k];
  return s;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  const std::size_t n = w.size();
  const double* pw = w.data();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m256d wa0 = _mm256_mul_pd(_mm256_loadu_pd(pw + k), _mm256_loadu_pd(pa + k));
    __m256d wa1 = _mm256_mul_pd(_mm256_loadu_pd(pw + k + 4), _mm256_loadu_pd(pa + k + 4));
    acc0 = _mm256_fmadd_pd(wa0, _mm256_loadu_pd(pb + k), acc0);
    acc1 = _mm256_fmadd_pd(wa1, _mm256_loadu_pd(pb + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) {
    __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(pw + k), _mm256_loadu_pd(pa + k));
    acc0 = _mm256_fmadd_pd(wa, _mm256_loadu_pd(pb + k), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += pw[k] * pa[k] * pb[k];
  return s;
}

double weighted_diff_dot(std::span<const double> w, std::span<const double> hi,
                         std::span<const double> lo) {
  const std::size_t n = w.size();
  const double* pw = w.data();
  const double* ph = hi.data();
  const double* pl = lo.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(ph + k), _mm256_loadu_pd(pl + k));
    __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(ph + k + 4), _mm256_loadu_pd(pl + k + 4));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pw + k), d0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pw + k + 4), d1, acc1);
  }
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(ph + k), _mm256_loadu_pd(pl + k));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pw + k), d, acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += pw[k] * (ph[k] - pl[k]);
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(py + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(px + k), _mm256_loadu_pd(py + k)));
  }
  for (; k < n; ++k) py[k] += alpha * px[k];
}

void add_inplace(std::span<double> y, std::span<const double> x) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(py + k, _mm256_add_pd(_mm256_loadu_pd(py + k), _mm256_loadu_pd(px + k)));
  }
  for (; k < n; ++k) py[k] += px[k];
}

void sub_inplace(std::span<double> y, std::span<const double> x) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(py + k, _mm256_sub_pd(_mm256_loadu_pd(py + k), _mm256_loadu_pd(px + k)));
  }
  for (; k < n; ++k) py[k] -= px[k];
}

}  // namespace

const KernelTable kAvx2Table{Isa::avx2,   dot,         weighted_dot, weighted_diff_dot,
                             axpy,        add_inplace, sub_inplace};

}  // namespace lsv::kernels::detail
