#pragma once

// Probabilistic values: the expected marginal contribution of player i under a
// probability distribution p on the coalitions containing i,
//
//     phi_i(v) = sum_{S containing i} p_S (v(S) - v(S \ i)).
//
// Semivalues use distributions that depend on |S| only (SizeProfile); the
// Shapley and Banzhaf values are the two classical members.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lsv/game.hpp"

namespace lsv {

/// Nonnegative fraction num/den in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Per-coalition weights w_s for |S| = s, shared by every player.
class SizeProfile {
 public:
  /// Validates w_s >= 0 and sum_s C(n-1, s-1) w_s = 1 within `tol`.
  static SizeProfile from_weights(const PlayerSet& players, std::vector<double> weights,
                                  double tol = 1e-12);
  /// Built from exact fractions; normalization is checked exactly.
  static SizeProfile from_rationals(const PlayerSet& players, std::vector<Rational> weights);

  const PlayerSet& players() const noexcept { return players_; }
  /// w_s at index s - 1.
  std::span<const double> weights() const noexcept { return weights_; }
  const std::optional<std::vector<Rational>>& exact() const noexcept { return exact_; }

  /// sum_s C(n-1, s-1) w_s in floating point.
  double total_mass() const noexcept;
  /// Same sum in exact arithmetic, when the profile was built from fractions.
  std::optional<Rational> exact_total_mass() const;

 private:
  SizeProfile(const PlayerSet& players, std::vector<double> w,
              std::optional<std::vector<Rational>> exact)
      : players_(players), weights_(std::move(w)), exact_(std::move(exact)) {}

  PlayerSet players_;
  std::vector<double> weights_;
  std::optional<std::vector<Rational>> exact_;
};

/// Probability distribution of player i over the coalitions containing i.
class CoalitionDistribution {
 public:
  /// `p[mask - 1]` for every nonempty coalition; entries for coalitions not
  /// containing the player must be 0. Throws InvalidArgument when p has a
  /// negative entry or does not sum to 1 within `tol`.
  CoalitionDistribution(const PlayerSet& players, int player, std::vector<double> p,
                        double tol = 1e-12);

  static CoalitionDistribution from_profile(const SizeProfile& profile, int player);

  const PlayerSet& players() const noexcept { return players_; }
  int player() const noexcept { return player_; }
  double operator()(Mask s) const { return p_[s]; }
  /// Padded table of length 2^n; index = mask.
  std::span<const double> padded() const noexcept { return p_; }
  double total_mass() const noexcept;

 private:
  PlayerSet players_;
  int player_;
  std::vector<double> p_;
};

/// Shapley: w_s = (s-1)!(n-s)!/n!.
SizeProfile shapley_distribution(const PlayerSet& players);

/// Banzhaf: w_s = 1/2^(n-1).
SizeProfile banzhaf_distribution(const PlayerSet& players);

/// sum_{S containing i} p_S (v(S) - v(S \ i)). Throws InvalidArgument if the
/// distribution belongs to another player or player set.
double expected_marginal(const Game& v, int player, const CoalitionDistribution& dist);

Value probabilistic_value(const Game& v, const SizeProfile& profile);
/// One distribution per player, in player order.
Value probabilistic_value(const Game& v, std::span<const CoalitionDistribution> dists);

/// sqrt(sum_{S containing i} p_S (marginal_i(S) - mu)^2).
double deviation(const Game& v, int player, const CoalitionDistribution& dist, double mu);

Value shapley_value(const Game& v);
Value banzhaf_value(const Game& v);

}  // namespace lsv
