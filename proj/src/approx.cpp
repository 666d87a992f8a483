#include "lsv/approx.hpp"

#include <bit>
#include <cmath>

#include "lsv/error.hpp"
#include "lsv/kernels.hpp"

namespace lsv {

namespace {

void require_same_players(const PlayerSet& a, const PlayerSet& b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": player sets differ");
}

std::vector<double> padded_copy(std::span<const double> table) {
  std::vector<double> p(table.size() + 1, 0.0);
  std::copy(table.begin(), table.end(), p.begin() + 1);
  return p;
}

}  // namespace

WeightScheme WeightScheme::full(const PlayerSet& players, const Matrix& w) {
  if (players.size() > kMaxFullMatrixPlayers) {
    throw InvalidArgument("full weight matrices are limited to " +
                          std::to_string(kMaxFullMatrixPlayers) + " players");
  }
  const std::size_t c = players.coalition_count();
  if (w.rows() != c || w.cols() != c) {
    throw InvalidArgument("weight matrix must be " + std::to_string(c) + " x " + std::to_string(c));
  }
  return {players, FullMatrix{w.symmetrized()}};
}

WeightScheme WeightScheme::diagonal(const PlayerSet& players, std::vector<double> alpha) {
  if (alpha.size() != players.coalition_count()) {
    throw InvalidArgument("diagonal weights need one entry per nonempty coalition");
  }
  return {players, Diagonal{std::move(alpha)}};
}

WeightScheme WeightScheme::uniform(const PlayerSet& players, std::vector<double> alpha_by_size) {
  if (alpha_by_size.size() != static_cast<std::size_t>(players.size())) {
    throw InvalidArgument("uniform weights need one entry per coalition size (" +
                          std::to_string(players.size()) + "), got " +
                          std::to_string(alpha_by_size.size()));
  }
  return {players, UniformBySize{std::move(alpha_by_size)}};
}

std::optional<std::vector<double>> WeightScheme::diagonal_weights() const {
  if (const auto* d = std::get_if<Diagonal>(&scheme_)) return d->alpha;
  if (const auto* u = std::get_if<UniformBySize>(&scheme_)) {
    std::vector<double> out(players_.coalition_count());
    for (Mask m = 1; m <= players_.grand(); ++m) {
      out[m - 1] = u->alpha[static_cast<std::size_t>(std::popcount(m) - 1)];
    }
    return out;
  }
  return std::nullopt;
}

std::vector<double> WeightScheme::apply(std::span<const double> v_table) const {
  if (v_table.size() != players_.coalition_count()) {
    throw InvalidArgument("game table does not match the weight scheme");
  }
  if (const auto* f = std::get_if<FullMatrix>(&scheme_)) return f->w * v_table;
  std::vector<double> d = *diagonal_weights();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] *= v_table[i];
  return d;
}

SubspaceBasis::SubspaceBasis(std::vector<Game> basis, const Tolerances& tol)
    : players_(basis.empty() ? throw InvalidArgument("a subspace basis needs at least one game")
                             : basis.front().players()),
      basis_(std::move(basis)) {
  for (const Game& g : basis_) require_same_players(players_, g.players(), "subspace basis");
  Matrix rows(basis_.size(), players_.coalition_count());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto t = basis_[i].table();
    std::copy(t.begin(), t.end(), rows.row(i).begin());
  }
  if (matrix_rank(rows, tol.rank) != basis_.size()) {
    throw InvalidArgument("basis games are linearly dependent");
  }
}

SubspaceBasis SubspaceBasis::singleton(const PlayerSet& players) {
  return k_additive(players, 1);
}

SubspaceBasis SubspaceBasis::k_additive(const PlayerSet& players, int k) {
  // Unanimity games are independent (unitriangular under inclusion), so no
  // rank check is needed.
  return {players, kadditive_basis(players, k), kadditive_masks(players, k)};
}

Game SubspaceBasis::combine(std::span<const double> x) const {
  if (x.size() != basis_.size()) throw InvalidArgument("coefficient vector has the wrong length");
  Game u(players_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (x[i] != 0.0) kernels::axpy(x[i], basis_[i].table(), u.table());
  }
  return u;
}

std::vector<double> LinearConstraintMap::rhs(const Game& v) const {
  if (b_map.rows() == 0) return {};
  return b_map * v.table();
}

LinearConstraintMap LinearConstraintMap::none(const SubspaceBasis& basis) {
  return {Matrix(0, basis.size()), Matrix(0, basis.players().coalition_count())};
}

LinearConstraintMap LinearConstraintMap::operator+(const LinearConstraintMap& other) const {
  return {a.vstack(other.a), b_map.vstack(other.b_map)};
}

std::vector<double> LinearOffsetMap::evaluate(const Game& v) const {
  if (!c_map) return std::vector<double>(v.players().coalition_count(), 0.0);
  return *c_map * v.table();
}

Matrix build_gram_direct(const WeightScheme& w, const SubspaceBasis& basis) {
  require_same_players(w.players(), basis.players(), "build_gram");
  const std::size_t k = basis.size();
  Matrix q(k, k);
  if (auto d = w.diagonal_weights()) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        q(i, j) = q(j, i) = kernels::weighted_dot(*d, basis[i].table(), basis[j].table());
    return q;
  }
  std::vector<std::vector<double>> wb;
  wb.reserve(k);
  for (std::size_t j = 0; j < k; ++j) wb.push_back(w.apply(basis[j].table()));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) q(i, j) = kernels::dot(basis[i].table(), wb[j]);
  return q.symmetrized();
}

Matrix build_gram(const WeightScheme& w, const SubspaceBasis& basis) {
  require_same_players(w.players(), basis.players(), "build_gram");
  const auto& masks = basis.unanimity_masks();
  auto d = w.diagonal_weights();
  if (!masks || !d) return build_gram_direct(w, basis);

  // u_T u_T' = u_{T | T'}, so q_{TT'} = sum_{S superset of T | T'} alpha_S.
  std::vector<double> up = padded_copy(*d);
  superset_sum_inplace(up);
  const std::size_t k = masks->size();
  Matrix q(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) q(i, j) = up[(*masks)[i] | (*masks)[j]];
  return q;
}

std::vector<double> build_linear_term(const WeightScheme& w, const LinearOffsetMap& offset,
                                      const Game& v, const SubspaceBasis& basis) {
  require_same_players(w.players(), basis.players(), "build_linear_term");
  require_same_players(v.players(), basis.players(), "build_linear_term");
  std::vector<double> ctilde = offset.evaluate(v);
  kernels::axpy(2.0, w.apply(v.table()), ctilde);

  std::vector<double> out(basis.size());
  if (const auto& masks = basis.unanimity_masks()) {
    std::vector<double> up = padded_copy(ctilde);
    superset_sum_inplace(up);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = up[(*masks)[i]];
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = kernels::dot(ctilde, basis[i].table());
  }
  return out;
}

LinearConstraintMap efficiency_constraint(const SubspaceBasis& basis) {
  const PlayerSet& players = basis.players();
  Matrix a(1, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) a(0, i) = basis[i](players.grand());
  Matrix b(1, players.coalition_count());
  b(0, players.grand() - 1) = 1.0;
  return {std::move(a), std::move(b)};
}

LinearConstraintMap sum_preservation_constraint(const SubspaceBasis& basis) {
  const PlayerSet& players = basis.players();
  Matrix a(1, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double s = 0.0;
    for (double x : basis[i].table()) s += x;
    a(0, i) = s;
  }
  return {std::move(a), Matrix(1, players.coalition_count(), 1.0)};
}

ApproximationResult solve_approximation(const Game& v, const WeightScheme& w,
                                        const SubspaceBasis& basis,
                                        const LinearConstraintMap& constraints,
                                        const LinearOffsetMap& offset, const Tolerances& tol) {
  if (constraints.b_map.rows() != constraints.a.rows()) {
    throw InvalidArgument("constraint map has mismatched A and b rows");
  }
  if (constraints.a.rows() > 0 && constraints.b_map.cols() != v.players().coalition_count()) {
    throw InvalidArgument("constraint map does not match the game");
  }
  const std::vector<double> b = constraints.rhs(v);
  return solve_approximation(v, w, basis, constraints.a, b, offset, tol);
}

ApproximationResult solve_approximation(const Game& v, const WeightScheme& w,
                                        const SubspaceBasis& basis, const Matrix& a,
                                        std::span<const double> b, const LinearOffsetMap& offset,
                                        const Tolerances& tol) {
  require_same_players(v.players(), basis.players(), "solve_approximation");
  require_same_players(w.players(), basis.players(), "solve_approximation");

  Matrix q = build_gram(w, basis);
  CholeskyResult chol = cholesky_pd_check(q, tol);
  if (!chol.positive_definite) {
    throw NotPositiveDefinite(
        "weights do not induce a positive definite form: no unique least-square value",
        chol.failing_pivot);
  }
  const std::vector<double> cbar = build_linear_term(w, offset, v, basis);
  // x'Qx - cbar'x  ==  1/2 x'(2Q)x - cbar'x
  q *= 2.0;
  KKTSolution sol = solve_qp(q, cbar, a, b, tol);

  Game u = basis.combine(sol.x);
  const PlayerSet& players = v.players();
  std::vector<double> payoffs(static_cast<std::size_t>(players.size()));
  for (int j = 0; j < players.size(); ++j) payoffs[static_cast<std::size_t>(j)] = u(Mask{1} << j);
  return {std::move(sol.x), std::move(u), Value(players, std::move(payoffs))};
}

Value affine_least_squares(const Game& v, const Tolerances& tol) {
  const PlayerSet& players = v.players();
  const int n = players.size();
  const std::size_t k = static_cast<std::size_t>(n) + 1;
  // Coordinates (a0, x_1..x_n); column i of the design is the indicator of
  // "i in S", column 0 is constant. Counts of subsets containing a fixed set
  // T are 2^(n - |T|).
  Matrix g(k, k);
  g(0, 0) = std::ldexp(1.0, n);
  for (std::size_t i = 1; i < k; ++i) {
    g(0, i) = g(i, 0) = std::ldexp(1.0, n - 1);
    for (std::size_t j = 1; j < k; ++j) g(i, j) = std::ldexp(1.0, i == j ? n - 1 : n - 2);
  }
  std::vector<double> up(v.padded().begin(), v.padded().end());
  superset_sum_inplace(up);
  std::vector<double> r(k);
  r[0] = up[0];
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i) + 1] = up[Mask{1} << i];

  g *= 2.0;
  for (double& x : r) x *= 2.0;
  KKTSolution sol = solve_qp(g, r, Matrix(0, k), {}, tol);
  return Value(players, std::vector<double>(sol.x.begin() + 1, sol.x.end()));
}

}  // namespace lsv
