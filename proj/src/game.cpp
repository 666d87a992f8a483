#include "lsv/game.hpp"

#include <algorithm>
#include <bit>

#include "lsv/error.hpp"
#include "lsv/kernels.hpp"

namespace lsv {

PlayerSet::PlayerSet(int n) : n_(n) {
  if (n < 1 || n > kMaxPlayers) {
    throw InvalidArgument("number of players must be in 1.." + std::to_string(kMaxPlayers) +
                          ", got " + std::to_string(n));
  }
}

Coalition Coalition::from_members(std::span<const int> members, const PlayerSet& players) {
  if (members.empty()) throw InvalidArgument("coalition must be nonempty");
  Mask m = 0;
  for (int i : members) {
    if (i < 1 || i > players.size()) {
      throw InvalidArgument("player index " + std::to_string(i) + " out of range 1.." +
                            std::to_string(players.size()));
    }
    const Mask bit = Mask{1} << (i - 1);
    if (m & bit) throw InvalidArgument("duplicate player index " + std::to_string(i));
    m |= bit;
  }
  return {m};
}

Coalition Coalition::from_mask(Mask mask, const PlayerSet& players) {
  if (!players.contains(mask)) {
    throw InvalidArgument("mask " + std::to_string(mask) + " is not a nonempty coalition of " +
                          std::to_string(players.size()) + " players");
  }
  return {mask};
}

int Coalition::size() const noexcept { return std::popcount(mask_); }

bool Coalition::contains(int player) const noexcept {
  return player >= 1 && player <= 32 && ((mask_ >> (player - 1)) & 1u);
}

std::vector<int> Coalition::members() const {
  std::vector<int> out;
  for (Mask m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string Coalition::key() const {
  std::string out;
  for (int i : members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

Game::Game(const PlayerSet& players)
    : players_(players), values_(players.coalition_count() + 1, 0.0) {}

Game::Game(const PlayerSet& players, std::span<const double> table) : Game(players) {
  if (table.size() != players.coalition_count()) {
    throw InvalidArgument("game table needs " + std::to_string(players.coalition_count()) +
                          " entries, got " + std::to_string(table.size()));
  }
  std::copy(table.begin(), table.end(), values_.begin() + 1);
}

void Game::set(Mask m, double value) {
  if (!players_.contains(m)) throw InvalidArgument("cannot assign a value to this coalition");
  values_[m] = value;
}

Game& Game::operator+=(const Game& other) {
  if (other.players_ != players_) throw InvalidArgument("games live on different player sets");
  kernels::add_inplace(values_, other.values_);
  return *this;
}

Game& Game::operator*=(double factor) {
  for (double& x : values_) x *= factor;
  return *this;
}

Value::Value(const PlayerSet& players)
    : players_(players), payoffs_(static_cast<std::size_t>(players.size()), 0.0) {}

Value::Value(const PlayerSet& players, std::vector<double> payoffs)
    : players_(players), payoffs_(std::move(payoffs)) {
  if (payoffs_.size() != static_cast<std::size_t>(players.size())) {
    throw InvalidArgument("value needs one payoff per player");
  }
}

double Value::total() const noexcept {
  double s = 0.0;
  for (double x : payoffs_) s += x;
  return s;
}

Game MobiusCoefficients::reconstruct() const {
  std::vector<double> padded(table.size() + 1, 0.0);
  std::copy(table.begin(), table.end(), padded.begin() + 1);
  subset_sum_inplace(padded);
  return Game(players, std::span<const double>(padded).subspan(1));
}

Game additive_game(const Value& x) {
  const PlayerSet& players = x.players();
  Game v(players);
  auto p = x.payoffs();
  // v(S) = v(S without its lowest member) + x_lowest
  std::vector<double> padded(players.coalition_count() + 1, 0.0);
  for (Mask m = 1; m <= players.grand(); ++m) {
    const int low = std::countr_zero(m);
    padded[m] = padded[m & (m - 1)] + p[static_cast<std::size_t>(low)];
  }
  return Game(players, std::span<const double>(padded).subspan(1));
}

Game unanimity_game(const Coalition& t, const PlayerSet& players) {
  if (!players.contains(t.mask())) throw InvalidArgument("coalition exceeds the player set");
  Game u(players);
  const Mask tm = t.mask();
  const Mask free = players.grand() & ~tm;
  // enumerate supersets of T as T | (subsets of the complement)
  for (Mask s = free;; s = (s - 1) & free) {
    u.set(tm | s, 1.0);
    if (s == 0) break;
  }
  return u;
}

Game dual_game(const Game& v) {
  const Mask grand = v.players().grand();
  const double vn = v(grand);
  Game d(v.players());
  for (Mask m = 1; m <= grand; ++m) d.set(m, vn - v(grand & ~m));
  return d;
}

double marginal_contribution(const Game& v, int player, const Coalition& s) {
  if (!s.contains(player)) {
    throw InvalidArgument("player " + std::to_string(player) + " is not a member of {" + s.key() +
                          "}");
  }
  const Mask m = s.mask();
  return v(m) - v(m & ~(Mask{1} << (player - 1)));
}

MobiusCoefficients mobius_transform(const Game& v) {
  std::vector<double> padded(v.padded().begin(), v.padded().end());
  subset_difference_inplace(padded);
  return {v.players(), std::vector<double>(padded.begin() + 1, padded.end())};
}

std::vector<Mask> kadditive_masks(const PlayerSet& players, int k) {
  if (k < 1 || k > players.size()) {
    throw InvalidArgument("k must be in 1.." + std::to_string(players.size()) + ", got " +
                          std::to_string(k));
  }
  std::vector<Mask> out;
  for (int s = 1; s <= k; ++s) {
    for (Mask m = 1; m <= players.grand(); ++m) {
      if (std::popcount(m) == s) out.push_back(m);
    }
  }
  return out;
}

std::vector<Game> kadditive_basis(const PlayerSet& players, int k) {
  std::vector<Game> out;
  for (Mask t : kadditive_masks(players, k)) {
    out.push_back(unanimity_game(Coalition::from_mask(t, players), players));
  }
  return out;
}

namespace {

// For every bit, pairs (S without bit, S with bit) form two contiguous runs of
// length `stride` inside each block of 2*stride entries.
template <class Op>
void sweep(std::span<double> padded, Op op) {
  const std::size_t size = padded.size();
  for (std::size_t stride = 1; stride < size; stride <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * stride) {
      op(padded.subspan(base, stride), padded.subspan(base + stride, stride));
    }
  }
}

}  // namespace

void subset_sum_inplace(std::span<double> padded) {
  sweep(padded, [](std::span<double> lo, std::span<double> hi) { kernels::add_inplace(hi, lo); });
}

void subset_difference_inplace(std::span<double> padded) {
  sweep(padded, [](std::span<double> lo, std::span<double> hi) { kernels::sub_inplace(hi, lo); });
}

void superset_sum_inplace(std::span<double> padded) {
  sweep(padded, [](std::span<double> lo, std::span<double> hi) { kernels::add_inplace(lo, hi); });
}

}  // namespace lsv
