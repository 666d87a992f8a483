#pragma once

// Closed forms for "regular" quadratic forms: k x k matrices with a single
// diagonal value q and a single off-diagonal value p. Uniform-by-size weights
// always produce such a form over the additive games, so the efficient
// least-squares value has an explicit solution.

#include <span>
#include <vector>

#include "lsv/game.hpp"
#include "lsv/linalg.hpp"

namespace lsv {

struct RegularForm {
  double q = 0.0;  // diagonal
  double p = 0.0;  // off-diagonal
  int k = 1;

  Matrix materialize() const;
};

/// minimize x'Qx - c'x  subject to  sum_i x_i = g, with Q regular.
struct RegularProblem {
  RegularForm form;
  std::vector<double> c;
  double g = 0.0;
};

struct RegularSolution {
  std::vector<double> x;
  /// Multiplier in the convention 2Qx - c = z * 1.
  double z = 0.0;
};

/// q = sum_s C(n-1, s-1) alpha(s),  p = sum_{s>=2} C(n-2, s-2) alpha(s).
RegularForm uniform_pq(std::span<const double> alpha_by_size, const PlayerSet& players);

/// q > p >= 0, the dimension-free criterion.
bool dimension_free_pd(const RegularForm& form) noexcept;

/// Exact positive definiteness for the given dimension: the eigenvalues are
/// q - p (multiplicity k - 1) and q + (k - 1)p.
bool spectral_pd(const RegularForm& form) noexcept;

/// z = (2(q + (n-1)p) g - sum c) / n,  x_i = (c_i + z - 2pg) / (2q - 2p).
/// Throws InvalidArgument when q == p or the sizes disagree.
RegularSolution solve_regular(const RegularProblem& problem);

/// alpha(s) = 1 / C(n-2, s-1) for s = 1..n-1 and alpha(n) = 0, which makes
/// the efficient least-squares value equal to the Shapley value. The
/// binomial C(n-2, s-1) itself agrees only for n <= 3. Requires n >= 2.
std::vector<double> charnes_weights(const PlayerSet& players);

struct RegularValueResult {
  Value value;
  double z = 0.0;
  RegularForm form;
  /// False when the form is not positive definite: the returned point is
  /// stationary but not certified optimal.
  bool certified_optimal = true;
};

/// Efficient least-squares value for uniform weights via the closed form:
/// c_i = 2 sum_{S containing i} alpha(|S|) v(S), g = v(N).
RegularValueResult efficient_regular_value(const Game& v, std::span<const double> alpha_by_size);

/// Closed-form minimizer of sum_S alpha(|S|) (target(S) - x(S))^2 subject to
/// x(N) = g. efficient_regular_value(v, alpha) is regular_value(v, alpha, v(N)).
RegularValueResult regular_value(const Game& target, std::span<const double> alpha_by_size,
                                 double g);

}  // namespace lsv
