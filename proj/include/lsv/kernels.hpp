#pragma once

// Data-parallel inner loops shared by the game transforms and the dense
// solvers. Every kernel has a scalar reference implementation; vectorized
// variants (AVX2+FMA on x86-64, NEON on AArch64) are chosen once at runtime
// and are tested for equivalence against the scalar versions.
//
// All span arguments of one call must have equal length.

#include <span>
#include <string_view>

namespace lsv::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  double (*dot)(std::span<const double> a, std::span<const double> b);
  // sum_k w[k] * a[k] * b[k]
  double (*weighted_dot)(std::span<const double> w, std::span<const double> a,
                         std::span<const double> b);
  // sum_k w[k] * (hi[k] - lo[k])
  double (*weighted_diff_dot)(std::span<const double> w, std::span<const double> hi,
                              std::span<const double> lo);
  // y += alpha * x
  void (*axpy)(double alpha, std::span<const double> x, std::span<double> y);
  // y += x
  void (*add_inplace)(std::span<double> y, std::span<const double> x);
  // y -= x
  void (*sub_inplace)(std::span<double> y, std::span<const double> x);
};

const KernelTable& scalar_table() noexcept;

/// Table for the best vector ISA compiled in and supported by this CPU, or
/// nullptr when only the scalar path is available.
const KernelTable* vector_table() noexcept;

/// Best ISA available at runtime.
Isa detected_isa() noexcept;

/// ISA currently used by the free functions below. Defaults to detected_isa().
Isa active_isa() noexcept;

/// Switches the process-wide kernel selection. Throws InvalidArgument when the
/// requested ISA is unavailable. Not meant to be called while other threads
/// are computing.
void set_active_isa(Isa isa);

const KernelTable& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a, b);
}
inline double weighted_dot(std::span<const double> w, std::span<const double> a,
                           std::span<const double> b) {
  return active().weighted_dot(w, a, b);
}
inline double weighted_diff_dot(std::span<const double> w, std::span<const double> hi,
                                std::span<const double> lo) {
  return active().weighted_diff_dot(w, hi, lo);
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x, y);
}
inline void add_inplace(std::span<double> y, std::span<const double> x) {
  active().add_inplace(y, x);
}
inline void sub_inplace(std::span<double> y, std::span<const double> x) {
  active().sub_inplace(y, x);
}

}  // namespace lsv::kernels
