#pragma once

// The extremal problem
//
//     minimize  sum_{S proper} m_S d(x, S)^2   subject to  x(N) = v(N),
//     d(x, S) = (v(S) - x(S)) / |S| - (v(N\S) - x(N\S)) / (n - |S|),
//
// and its reduction to a diagonal least-squares problem on the transformed
// game vbar(S) = ((n - |S|) v(S) + |S| v*(S)) / n with weights
// alpha_S = n^2 m_S / (|S|^2 (n - |S|)^2). Only proper nonempty coalitions
// take part: d(x, S) is undefined for S = N.

#include <span>
#include <vector>

#include "lsv/approx.hpp"
#include "lsv/game.hpp"
#include "lsv/linalg.hpp"

namespace lsv {

class RuizWeights {
 public:
  /// `m[mask - 1]` for every nonempty coalition; the entry for N is ignored.
  /// Throws InvalidArgument for n < 2 or a non-positive weight on a proper
  /// coalition.
  RuizWeights(const PlayerSet& players, std::vector<double> m);

  /// m_S = m_by_size[|S| - 1] for |S| = 1..n-1.
  static RuizWeights uniform(const PlayerSet& players, std::span<const double> m_by_size);

  const PlayerSet& players() const noexcept { return players_; }
  double operator()(Mask s) const { return m_[s - 1]; }

 private:
  PlayerSet players_;
  std::vector<double> m_;
};

struct RuizTransform {
  /// vbar on proper coalitions; the entry for N is 0 and carries no weight.
  Game vbar;
  /// alpha_S on proper coalitions, 0 for N.
  WeightScheme alpha;
  /// Right-hand side of x(N) = g, which is v(N).
  double g;
};

/// d(x, S). Throws InvalidArgument unless S is a proper coalition.
double gap(const Value& x, const Coalition& s, const Game& v);

/// sum over proper S of m_S d(x, S)^2.
double ruiz_objective(const Value& x, const Game& v, const RuizWeights& m);

RuizTransform transform(const Game& v, const RuizWeights& m);

/// Solves the transformed problem with the approximation engine (additive
/// games, diagonal alpha, x(N) = v(N)).
Value ruiz_value(const Game& v, const RuizWeights& m, const Tolerances& tol = {});

/// Solves the problem directly in the x variables: the n x n form
/// sum_S m_S a_S a_S' is assembled from d(x, S) = a_S'x + k_S and passed to the
/// KKT solver. Shares no code with the transform path.
Value ruiz_direct_value(const Game& v, const RuizWeights& m, const Tolerances& tol = {});

/// Closed form for size-uniform weights m_S = m_by_size[|S| - 1].
Value ruiz_regular_value(const Game& v, std::span<const double> m_by_size);

}  // namespace lsv
