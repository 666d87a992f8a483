#pragma once

// Weighted least-squares approximation of a game inside a linear subspace of
// games, with linear equality constraints.
//
// For a game v, a weight matrix W on coalitions, a linear offset c(v) and a
// basis b_1..b_k of the subspace F, the engine minimizes
//
//     (v - u)' W (v - u) + c(v)'(v - u)       over u in F, subject to Ax = b(v)
//
// where u = sum_i x_i b_i. In basis coordinates this is
//
//     x'Qx - cbar'x,   q_ij = sum_{S,T} w_ST b_i(S) b_j(T),
//                      cbar_i = sum_S (c_S + 2 sum_T w_ST v_T) b_i(S),
//
// which is handed to solve_qp as 1/2 x'(2Q)x - cbar'x. The resulting value is
// read off the approximating game at the singletons: value_j = u*({j}).

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lsv/game.hpp"
#include "lsv/linalg.hpp"

namespace lsv {

class WeightScheme {
 public:
  /// Full matrices are limited to this many players ((2^n - 1)^2 entries).
  static constexpr int kMaxFullMatrixPlayers = 10;

  struct FullMatrix {
    Matrix w;
  };
  struct Diagonal {
    std::vector<double> alpha;  // alpha_S at index mask - 1
  };
  struct UniformBySize {
    std::vector<double> alpha;  // alpha(s) at index s - 1
  };

  /// Symmetrizes `w`. Throws InvalidArgument on a size mismatch or n > 10.
  static WeightScheme full(const PlayerSet& players, const Matrix& w);
  static WeightScheme diagonal(const PlayerSet& players, std::vector<double> alpha);
  static WeightScheme uniform(const PlayerSet& players, std::vector<double> alpha_by_size);

  const PlayerSet& players() const noexcept { return players_; }
  bool is_full() const noexcept { return std::holds_alternative<FullMatrix>(scheme_); }
  const std::variant<FullMatrix, Diagonal, UniformBySize>& scheme() const noexcept {
    return scheme_;
  }

  /// Per-coalition diagonal weights, or nullopt for a full matrix.
  std::optional<std::vector<double>> diagonal_weights() const;
  /// W v as a coalition-indexed vector.
  std::vector<double> apply(std::span<const double> v_table) const;

 private:
  WeightScheme(const PlayerSet& players, std::variant<FullMatrix, Diagonal, UniformBySize> s)
      : players_(players), scheme_(std::move(s)) {}

  PlayerSet players_;
  std::variant<FullMatrix, Diagonal, UniformBySize> scheme_;
};

class SubspaceBasis {
 public:
  /// Verifies linear independence by a rank computation over the k x (2^n-1)
  /// table; throws InvalidArgument otherwise.
  explicit SubspaceBasis(std::vector<Game> basis, const Tolerances& tol = {});

  /// The unanimity games zeta_1..zeta_n spanning the additive games.
  static SubspaceBasis singleton(const PlayerSet& players);
  /// The unanimity games u_T for 1 <= |T| <= k (k-additive games).
  static SubspaceBasis k_additive(const PlayerSet& players, int k);

  const PlayerSet& players() const noexcept { return players_; }
  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<Game>& games() const noexcept { return basis_; }
  const Game& operator[](std::size_t i) const { return basis_[i]; }

  /// Coalitions T when every basis game is the unanimity game u_T.
  const std::optional<std::vector<Mask>>& unanimity_masks() const noexcept { return masks_; }

  /// sum_i x_i b_i
  Game combine(std::span<const double> x) const;

 private:
  SubspaceBasis(const PlayerSet& players, std::vector<Game> basis, std::vector<Mask> masks)
      : players_(players), basis_(std::move(basis)), masks_(std::move(masks)) {}

  PlayerSet players_;
  std::vector<Game> basis_;
  std::optional<std::vector<Mask>> masks_;
};

/// Constraints A x = b(v), with b(v) = B * table(v) for an m x (2^n - 1)
/// coefficient matrix B.
struct LinearConstraintMap {
  Matrix a;
  Matrix b_map;

  std::size_t rows() const noexcept { return a.rows(); }
  std::vector<double> rhs(const Game& v) const;

  static LinearConstraintMap none(const SubspaceBasis& basis);
  /// Concatenates the rows of two maps built for the same basis.
  LinearConstraintMap operator+(const LinearConstraintMap& other) const;
};

/// Linear offset c(v) = C * table(v); absent means zero.
struct LinearOffsetMap {
  std::optional<Matrix> c_map;

  std::vector<double> evaluate(const Game& v) const;
};

struct ApproximationResult {
  std::vector<double> x_star;
  Game u_star;
  Value value;
};

/// q_ij = sum_{S,T} w_ST b_i(S) b_j(T). For diagonal schemes over a
/// unanimity basis this reduces to q_{TT'} = sum over S containing T and T'
/// of alpha_S, evaluated with one superset-sum sweep.
Matrix build_gram(const WeightScheme& w, const SubspaceBasis& basis);

/// Same matrix by the direct double sum, without the unanimity shortcut.
Matrix build_gram_direct(const WeightScheme& w, const SubspaceBasis& basis);

/// cbar_i = sum_S (c_S + 2 (Wv)_S) b_i(S).
std::vector<double> build_linear_term(const WeightScheme& w, const LinearOffsetMap& offset,
                                      const Game& v, const SubspaceBasis& basis);

/// u(N) = v(N); one row with A_1i = b_i(N).
LinearConstraintMap efficiency_constraint(const SubspaceBasis& basis);

/// sum_S u(S) = sum_S v(S); one row with A_1i = sum_S b_i(S).
LinearConstraintMap sum_preservation_constraint(const SubspaceBasis& basis);

/// Solves the constrained approximation. Throws NotPositiveDefinite when the
/// projected form is not positive definite and InconsistentConstraints when
/// A x = b(v) has no solution.
ApproximationResult solve_approximation(const Game& v, const WeightScheme& w,
                                        const SubspaceBasis& basis,
                                        const LinearConstraintMap& constraints,
                                        const LinearOffsetMap& offset = {},
                                        const Tolerances& tol = {});

/// Variant with an explicit right-hand side b instead of a map b(v).
ApproximationResult solve_approximation(const Game& v, const WeightScheme& w,
                                        const SubspaceBasis& basis, const Matrix& a,
                                        std::span<const double> b,
                                        const LinearOffsetMap& offset = {},
                                        const Tolerances& tol = {});

/// Unweighted affine fit over all 2^n subsets, empty set included:
/// minimize sum_{S subset of N} (v(S) - a0 - x(S))^2. Returns x; the slopes of
/// this fit are the Banzhaf value.
Value affine_least_squares(const Game& v, const Tolerances& tol = {});

}  // namespace lsv
