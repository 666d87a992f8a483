#pragma once

// Dense linear algebra and the equality-constrained quadratic solve.
//
// The quadratic programs handled here are
//
//     minimize  1/2 x'Qx - c'x   subject to  Ax = b
//
// with Q symmetric positive definite. The optimum is characterized by the
// KKT system
//
//     [ Q  A' ] [x]   [c]
//     [ A  0  ] [y] = [b]
//
// which is solved directly.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lsv {

struct Tolerances {
  /// Matrices are symmetric if |Q_ij - Q_ji| <= symmetry * max(1, max|Q|).
  double symmetry = 1e-12;
  /// Cholesky and elimination pivots must exceed pivot * max|entry|.
  double pivot = 1e-12;
  /// Rank decisions: row residuals below rank * max|entry| count as zero.
  double rank = 1e-10;
  /// Accepted KKT residual, relative to (1 + input magnitude).
  double residual = 1e-8;
};

/// Row-major dense matrix. Zero rows are allowed (an empty constraint block).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  double max_abs() const noexcept;
  Matrix transposed() const;
  /// (Q + Q') / 2
  Matrix symmetrized() const;
  bool is_symmetric(double tol) const noexcept;

  std::vector<double> operator*(std::span<const double> x) const;
  Matrix operator*(const Matrix& other) const;
  Matrix& operator*=(double f);

  /// Stacks the rows of `below` under this matrix; column counts must agree
  /// unless one side has no rows.
  Matrix vstack(const Matrix& below) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double norm2(std::span<const double> x) noexcept;
double norm_inf(std::span<const double> x) noexcept;

struct CholeskyResult {
  bool positive_definite = false;
  /// Lower-triangular factor L with LL' = Q (only when positive_definite).
  Matrix lower;
  /// First pivot at or below tolerance (only when !positive_definite).
  std::size_t failing_pivot = 0;
  double failing_value = 0.0;
};

/// Cholesky factorization as a positive-definiteness certificate. The input
/// is symmetrized before factoring. Throws InvalidArgument for a non-square
/// matrix or one that is asymmetric beyond tolerance.
CholeskyResult cholesky_pd_check(const Matrix& q, const Tolerances& tol = {});

/// Gaussian elimination with partial pivoting. Throws SingularSystem when a
/// pivot falls below tolerance and NumericalError when the residual check
/// fails.
std::vector<double> solve_linear(const Matrix& m, std::span<const double> rhs,
                                 const Tolerances& tol = {});

/// Rank under row elimination with threshold `rel_tol * max|entry|`.
std::size_t matrix_rank(const Matrix& a, double rel_tol);

/// Indices of a maximal linearly independent subset of rows, scanning in
/// order and keeping a row only if it is independent of the rows kept so far.
std::vector<std::size_t> independent_rows(const Matrix& a, double rel_tol);

/// rank(A) == rank([A | b]). An empty system (m = 0) is consistent.
bool consistency_check(const Matrix& a, std::span<const double> b, const Tolerances& tol = {});

/// Symmetric positive definite matrix defining <x|y>_Q = x'Qy.
class InnerProduct {
 public:
  /// Symmetrizes `q` and certifies it with Cholesky; throws
  /// NotPositiveDefinite otherwise.
  explicit InnerProduct(const Matrix& q, const Tolerances& tol = {});

  const Matrix& matrix() const noexcept { return q_; }
  std::size_t dim() const noexcept { return q_.rows(); }
  double inner(std::span<const double> x, std::span<const double> y) const;
  double norm(std::span<const double> x) const;

 private:
  Matrix q_;
};

struct KKTSolution {
  std::vector<double> x;
  std::vector<double> y;
};

/// minimize 1/2 x'Qx - c'x subject to Ax = b.
///
/// Throws NotPositiveDefinite, InconsistentConstraints, or SingularSystem. A
/// singular KKT matrix caused by redundant constraint rows is retried with
/// those rows removed; their multipliers are reported as 0.
KKTSolution solve_qp(const Matrix& q, std::span<const double> c, const Matrix& a,
                     std::span<const double> b, const Tolerances& tol = {});

/// minimize ||target - x||_Q^2 subject to Ax = b; equivalent to
/// solve_qp(2Q, 2Q*target, A, b). With no constraint rows the result is the
/// target itself.
KKTSolution solve_lsq(const InnerProduct& q, std::span<const double> target, const Matrix& a,
                      std::span<const double> b, const Tolerances& tol = {});

}  // namespace lsv
