// AArch64 only; Advanced SIMD is part of the base ISA there.

#include <arm_neon.h>

#include <cstddef>

#include "tables.hpp"

namespace lsv::kernels::detail {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(pa + k), vld1q_f64(pb + k));
    acc1 = vfmaq_f64(acc1, vld1q_f64(pa + k + 2), vld1q_f64(pb + k + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) s += pa[k] * pb[k];
  return s;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  const std::size_t n = w.size();
  const double* pw = w.data();
  const double* pa = a.data();
  const double* pb = b.data();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vmulq_f64(vld1q_f64(pw + k), vld1q_f64(pa + k)), vld1q_f64(pb + k));
    acc1 = vfmaq_f64(acc1, vmulq_f64(vld1q_f64(pw + k + 2), vld1q_f64(pa + k + 2)),
                     vld1q_f64(pb + k + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) s += pw[k] * pa[k] * pb[k];
  return s;
}

double weighted_diff_dot(std::span<const double> w, std::span<const double> hi,
                         std::span<const double> lo) {
  const std::size_t n = w.size();
  const double* pw = w.data();
  const double* ph = hi.data();
  const double* pl = lo.data();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(pw + k), vsubq_f64(vld1q_f64(ph + k), vld1q_f64(pl + k)));
    acc1 = vfmaq_f64(acc1, vld1q_f64(pw + k + 2),
                     vsubq_f64(vld1q_f64(ph + k + 2), vld1q_f64(pl + k + 2)));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) s += pw[k] * (ph[k] - pl[k]);
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    vst1q_f64(py + k, vfmaq_f64(vld1q_f64(py + k), va, vld1q_f64(px + k)));
  }
  for (; k < n; ++k) py[k] += alpha * px[k];
}

void add_inplace(std::span<double> y, std::span<const double> x) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(py + k, vaddq_f64(vld1q_f64(py + k), vld1q_f64(px + k)));
  for (; k < n; ++k) py[k] += px[k];
}

void sub_inplace(std::span<double> y, std::span<const double> x) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(py + k, vsubq_f64(vld1q_f64(py + k), vld1q_f64(px + k)));
  for (; k < n; ++k) py[k] -= px[k];
}

}  // namespace

const KernelTable kNeonTable{Isa::neon,   dot,         weighted_dot, weighted_diff_dot,
                             axpy,        add_inplace, sub_inplace};

}  // namespace lsv::kernels::detail
