#include <cstddef>

#include "tables.hpp"

namespace lsv::kernels::detail {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * a[k] * b[k];
  return s;
}

double weighted_diff_dot(std::span<const double> w, std::span<const double> hi,
                         std::span<const double> lo) {
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * (hi[k] - lo[k]);
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += alpha * x[k];
}

void add_inplace(std::span<double> y, std::span<const double> x) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += x[k];
}

void sub_inplace(std::span<double> y, std::span<const double> x) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] -= x[k];
}

}  // namespace

const KernelTable kScalarTable{Isa::scalar,  dot,         weighted_dot, weighted_diff_dot,
                               axpy,         add_inplace, sub_inplace};

}  // namespace lsv::kernels::detail
