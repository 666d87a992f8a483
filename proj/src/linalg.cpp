#include "lsv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lsv/error.hpp"
#include "lsv/kernels.hpp"

namespace lsv {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw InvalidArgument("matrix data size mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::symmetrized() const {
  if (!square()) throw InvalidArgument("only square matrices can be symmetrized");
  Matrix s(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) s(r, c) = 0.5 * ((*this)(r, c) + (*this)(c, r));
  return s;
}

bool Matrix::is_symmetric(double tol) const noexcept {
  if (!square()) return false;
  const double bound = tol * std::max(1.0, max_abs());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if (std::abs((*this)(r, c) - (*this)(c, r)) > bound) return false;
  return true;
}

std::vector<double> Matrix::operator*(std::span<const double> x) const {
  if (x.size() != cols_) throw InvalidArgument("matrix-vector dimension mismatch");
  std::vector<double> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) y[r] = kernels::dot(row(r), x);
  return y;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw InvalidArgument("matrix-matrix dimension mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) kernels::axpy((*this)(r, k), other.row(k), out.row(r));
  return out;
}

Matrix& Matrix::operator*=(double f) {
  for (double& x : data_) x *= f;
  return *this;
}

Matrix Matrix::vstack(const Matrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (cols_ != below.cols_) throw InvalidArgument("cannot stack matrices of different widths");
  std::vector<double> d(data_);
  d.insert(d.end(), below.data_.begin(), below.data_.end());
  return Matrix(rows_ + below.rows_, cols_, std::move(d));
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

double norm2(std::span<const double> x) noexcept { return std::sqrt(kernels::dot(x, x)); }

double norm_inf(std::span<const double> x) noexcept {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

CholeskyResult cholesky_pd_check(const Matrix& q, const Tolerances& tol) {
  if (!q.square()) throw InvalidArgument("Cholesky needs a square matrix");
  if (!q.is_symmetric(tol.symmetry)) throw InvalidArgument("matrix is not symmetric");
  const Matrix s = q.symmetrized();
  const std::size_t n = s.rows();
  const double pivot_tol = tol.pivot * s.max_abs();

  CholeskyResult result;
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto li = l.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      auto lj = l.row(j);
      li[j] = (s(i, j) - kernels::dot(li.first(j), lj.first(j))) / lj[j];
    }
    const double d = s(i, i) - kernels::dot(li.first(i), li.first(i));
    if (!(d > pivot_tol)) {
      result.failing_pivot = i;
      result.failing_value = d;
      return result;
    }
    li[i] = std::sqrt(d);
  }
  result.positive_definite = true;
  result.lower = std::move(l);
  return result;
}

std::vector<double> solve_linear(const Matrix& m, std::span<const double> rhs,
                                 const Tolerances& tol) {
  if (!m.square()) throw InvalidArgument("linear solve needs a square matrix");
  if (rhs.size() != m.rows()) throw InvalidArgument("right-hand side has the wrong length");
  const std::size_t n = m.rows();
  const double scale = m.max_abs();
  const double pivot_tol = tol.pivot * scale;

  Matrix a = m;
  std::vector<double> b(rhs.begin(), rhs.end());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a(r, k)) > std::abs(a(p, k))) p = r;
    if (!(std::abs(a(p, k)) > pivot_tol)) {
      throw SingularSystem("KKT system singular (pivot " + std::to_string(k) + ")");
    }
    if (p != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(p).begin());
      std::swap(b[k], b[p]);
    }
    auto pivot_tail = a.row(k).subspan(k + 1);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = a(r, k) / a(k, k);
      if (f == 0.0) continue;
      kernels::axpy(-f, pivot_tail, a.row(r).subspan(k + 1));
      a(r, k) = 0.0;
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    const double s = kernels::dot(a.row(k).subspan(k + 1), std::span<const double>(x).subspan(k + 1));
    x[k] = (b[k] - s) / a(k, k);
  }

  const std::vector<double> mx = m * x;
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(mx[i] - rhs[i]));
  const double bound = tol.residual * (1.0 + norm_inf(rhs) + scale * norm_inf(x));
  if (!(res <= bound)) {
    throw NumericalError("linear solve residual " + std::to_string(res) + " exceeds tolerance");
  }
  return x;
}

std::vector<std::size_t> independent_rows(const Matrix& a, double rel_tol) {
  const double threshold = rel_tol * a.max_abs();
  struct Reduced {
    std::vector<double> row;
    std::size_t pivot;
  };
  std::vector<Reduced> kept;
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<double> cur(a.row(r).begin(), a.row(r).end());
    for (const Reduced& e : kept) {
      const double f = cur[e.pivot] / e.row[e.pivot];
      if (f != 0.0) kernels::axpy(-f, e.row, cur);
      cur[e.pivot] = 0.0;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < cur.size(); ++c)
      if (std::abs(cur[c]) > std::abs(cur[best])) best = c;
    if (!cur.empty() && std::abs(cur[best]) > threshold) {
      kept.push_back({std::move(cur), best});
      out.push_back(r);
    }
  }
  return out;
}

std::size_t matrix_rank(const Matrix& a, double rel_tol) {
  return independent_rows(a, rel_tol).size();
}

bool consistency_check(const Matrix& a, std::span<const double> b, const Tolerances& tol) {
  if (b.size() != a.rows()) throw InvalidArgument("constraint right-hand side has the wrong length");
  if (a.rows() == 0) return true;
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto src = a.row(r);
    std::copy(src.begin(), src.end(), aug.row(r).begin());
    aug(r, a.cols()) = b[r];
  }
  // One threshold for both ranks so that the comparison is meaningful.
  const double scale = aug.max_abs();
  if (scale == 0.0) return true;
  const double rel_a = a.max_abs() > 0.0 ? tol.rank * scale / a.max_abs() : 1.0;
  const std::size_t rank_a = a.max_abs() > 0.0 ? matrix_rank(a, rel_a) : 0;
  return rank_a == matrix_rank(aug, tol.rank);
}

InnerProduct::InnerProduct(const Matrix& q, const Tolerances& tol) {
  CholeskyResult chol = cholesky_pd_check(q, tol);
  if (!chol.positive_definite) {
    throw NotPositiveDefinite("inner product matrix is not positive definite", chol.failing_pivot);
  }
  q_ = q.symmetrized();
}

double InnerProduct::inner(std::span<const double> x, std::span<const double> y) const {
  return kernels::dot(x, q_ * y);
}

double InnerProduct::norm(std::span<const double> x) const { return std::sqrt(inner(x, x)); }

namespace {

std::vector<double> cholesky_solve(const Matrix& l, std::span<const double> rhs) {
  const std::size_t n = l.rows();
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = (rhs[i] - kernels::dot(l.row(i).first(i), std::span<const double>(z).first(i))) / l(i, i);
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = z[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= l(j, i) * x[j];
    x[i] = s / l(i, i);
  }
  return x;
}

Matrix kkt_matrix(const Matrix& q, const Matrix& a) {
  const std::size_t k = q.rows();
  const std::size_t m = a.rows();
  Matrix kkt(k + m, k + m);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) kkt(i, j) = q(i, j);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < k; ++j) {
      kkt(k + r, j) = a(r, j);
      kkt(j, k + r) = a(r, j);
    }
  return kkt;
}

KKTSolution solve_kkt(const Matrix& q, std::span<const double> c, const Matrix& a,
                      std::span<const double> b, const Tolerances& tol) {
  const std::size_t k = q.rows();
  std::vector<double> rhs(c.begin(), c.end());
  rhs.insert(rhs.end(), b.begin(), b.end());
  std::vector<double> sol = solve_linear(kkt_matrix(q, a), rhs, tol);
  return {std::vector<double>(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(k)),
          std::vector<double>(sol.begin() + static_cast<std::ptrdiff_t>(k), sol.end())};
}

}  // namespace

KKTSolution solve_qp(const Matrix& q, std::span<const double> c, const Matrix& a,
                     std::span<const double> b, const Tolerances& tol) {
  if (!q.square()) throw InvalidArgument("quadratic form must be square");
  const std::size_t k = q.rows();
  if (c.size() != k) throw InvalidArgument("linear term has the wrong length");
  if (a.rows() > 0 && a.cols() != k) throw InvalidArgument("constraint matrix has the wrong width");
  if (b.size() != a.rows()) throw InvalidArgument("constraint right-hand side has the wrong length");

  CholeskyResult chol = cholesky_pd_check(q, tol);
  if (!chol.positive_definite) {
    throw NotPositiveDefinite("quadratic form is not positive definite", chol.failing_pivot);
  }
  if (!consistency_check(a, b, tol)) {
    throw InconsistentConstraints("linear constraints Ax = b have no solution");
  }
  const Matrix qs = q.symmetrized();

  KKTSolution sol;
  if (a.rows() == 0) {
    sol.x = cholesky_solve(chol.lower, c);
  } else {
    try {
      sol = solve_kkt(qs, c, a, b, tol);
    } catch (const SingularSystem&) {
      const std::vector<std::size_t> keep = independent_rows(a, tol.rank);
      if (keep.size() == a.rows()) throw;
      std::vector<double> bk;
      for (std::size_t r : keep) bk.push_back(b[r]);
      KKTSolution reduced = solve_kkt(qs, c, a.select_rows(keep), bk, tol);
      sol.x = std::move(reduced.x);
      sol.y.assign(a.rows(), 0.0);
      for (std::size_t i = 0; i < keep.size(); ++i) sol.y[keep[i]] = reduced.y[i];
    }
  }

  // Stationarity Qx + A'y = c and feasibility Ax = b.
  std::vector<double> stat = qs * sol.x;
  for (std::size_t r = 0; r < a.rows(); ++r) kernels::axpy(sol.y[r], a.row(r), stat);
  double res = 0.0;
  for (std::size_t i = 0; i < k; ++i) res = std::max(res, std::abs(stat[i] - c[i]));
  if (a.rows() > 0) {
    const std::vector<double> ax = a * sol.x;
    for (std::size_t r = 0; r < a.rows(); ++r) res = std::max(res, std::abs(ax[r] - b[r]));
  }
  const double bound = tol.residual * (1.0 + norm_inf(c) + norm_inf(b) +
                                       qs.max_abs() * norm_inf(sol.x) +
                                       a.max_abs() * norm_inf(sol.y));
  if (!(res <= bound)) {
    throw NumericalError("KKT residual " + std::to_string(res) + " exceeds tolerance");
  }
  return sol;
}

KKTSolution solve_lsq(const InnerProduct& q, std::span<const double> target, const Matrix& a,
                      std::span<const double> b, const Tolerances& tol) {
  if (target.size() != q.dim()) throw InvalidArgument("target has the wrong length");
  if (a.rows() == 0) {
    if (!b.empty()) throw InvalidArgument("constraint right-hand side has the wrong length");
    return {std::vector<double>(target.begin(), target.end()), {}};
  }
  Matrix q2 = q.matrix();
  q2 *= 2.0;
  const std::vector<double> c = q2 * target;
  return solve_qp(q2, c, a, b, tol);
}

}  // namespace lsv
