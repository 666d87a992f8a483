#pragma once

// Players, coalitions and TU games over a finite player set.
//
// Players are numbered 1..n at the API surface. Internally a coalition is a
// bitmask in which bit (i-1) stands for player i; dense game tables store the
// value of coalition `mask` at index `mask - 1`.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lsv {

using Mask = std::uint32_t;

class PlayerSet {
 public:
  static constexpr int kMaxPlayers = 20;

  /// Throws InvalidArgument unless 1 <= n <= kMaxPlayers.
  explicit PlayerSet(int n);

  int size() const noexcept { return n_; }
  Mask grand() const noexcept { return static_cast<Mask>((std::size_t{1} << n_) - 1); }
  /// 2^n - 1, the number of nonempty coalitions.
  std::size_t coalition_count() const noexcept { return std::size_t{grand()}; }
  bool contains(Mask m) const noexcept { return m != 0 && (m & ~grand()) == 0; }

  friend bool operator==(const PlayerSet&, const PlayerSet&) = default;

 private:
  int n_;
};

class Coalition {
 public:
  /// Members given as 1-based player indices. Throws InvalidArgument on an
  /// empty list, an index outside 1..n or a duplicate.
  static Coalition from_members(std::span<const int> members, const PlayerSet& players);
  static Coalition from_members(std::initializer_list<int> members, const PlayerSet& players) {
    return from_members(std::span<const int>(members.begin(), members.size()), players);
  }
  /// Throws InvalidArgument if the mask is empty or exceeds the player set.
  static Coalition from_mask(Mask mask, const PlayerSet& players);
  static Coalition grand(const PlayerSet& players) { return {players.grand()}; }

  Mask mask() const noexcept { return mask_; }
  int size() const noexcept;
  std::size_t index() const noexcept { return mask_ - 1; }
  bool contains(int player) const noexcept;
  std::vector<int> members() const;
  /// Comma-separated increasing member list, e.g. "1,3".
  std::string key() const;

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  Coalition(Mask m) : mask_(m) {}
  Mask mask_;
};

/// Real-valued set function on the nonempty coalitions; v(empty) = 0.
class Game {
 public:
  /// The zero game.
  explicit Game(const PlayerSet& players);
  /// `table[mask - 1]` holds v(mask); requires exactly 2^n - 1 entries.
  Game(const PlayerSet& players, std::span<const double> table);

  const PlayerSet& players() const noexcept { return players_; }
  int n() const noexcept { return players_.size(); }

  double operator()(Mask m) const noexcept { return values_[m]; }
  double operator()(const Coalition& s) const noexcept { return values_[s.mask()]; }
  void set(Mask m, double value);

  /// Dense view over the 2^n - 1 nonempty coalitions.
  std::span<const double> table() const noexcept { return std::span(values_).subspan(1); }
  std::span<double> table() noexcept { return std::span(values_).subspan(1); }
  /// Dense view over all 2^n subsets; element 0 is the empty coalition and
  /// always 0.
  std::span<const double> padded() const noexcept { return values_; }

  Game& operator+=(const Game& other);
  Game& operator*=(double factor);
  friend Game operator+(Game a, const Game& b) { return a += b; }
  friend Game operator*(double f, Game a) { return a *= f; }

 private:
  PlayerSet players_;
  std::vector<double> values_;
};

/// Payoff vector indexed by player.
class Value {
 public:
  explicit Value(const PlayerSet& players);
  Value(const PlayerSet& players, std::vector<double> payoffs);

  const PlayerSet& players() const noexcept { return players_; }
  /// 1-based access.
  double payoff(int player) const { return payoffs_.at(static_cast<std::size_t>(player - 1)); }
  std::span<const double> payoffs() const noexcept { return payoffs_; }
  std::span<double> payoffs() noexcept { return payoffs_; }
  double total() const noexcept;

 private:
  PlayerSet players_;
  std::vector<double> payoffs_;
};

struct MobiusCoefficients {
  PlayerSet players;
  /// m(S) at index mask - 1.
  std::vector<double> table;

  double operator()(Mask m) const { return m == 0 ? 0.0 : table[m - 1]; }
  /// v(S) = sum over nonempty T subset of S of m(T).
  Game reconstruct() const;
};

/// v(S) = sum_{i in S} x_i.
Game additive_game(const Value& x);

/// u_T(S) = 1 if T is a subset of S, else 0.
Game unanimity_game(const Coalition& t, const PlayerSet& players);

/// v*(S) = v(N) - v(N \ S).
Game dual_game(const Game& v);

/// v(S) - v(S \ {i}). Throws InvalidArgument unless player i is in S.
double marginal_contribution(const Game& v, int player, const Coalition& s);

MobiusCoefficients mobius_transform(const Game& v);

/// Unanimity games u_T for all T with 1 <= |T| <= k, ordered by size and
/// then by mask. Throws InvalidArgument unless 1 <= k <= n.
std::vector<Game> kadditive_basis(const PlayerSet& players, int k);

/// Coalitions T with 1 <= |T| <= k in the same order as kadditive_basis.
std::vector<Mask> kadditive_masks(const PlayerSet& players, int k);

// Subset-lattice sweeps over a padded table of length 2^n (index = mask).

/// f(S) <- sum_{T subset of S} f(T)
void subset_sum_inplace(std::span<double> padded);
/// Inverse of subset_sum_inplace.
void subset_difference_inplace(std::span<double> padded);
/// f(S) <- sum_{T superset of S} f(T)
void superset_sum_inplace(std::span<double> padded);

}  // namespace lsv
