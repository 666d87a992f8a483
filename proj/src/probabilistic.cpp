#include "lsv/probabilistic.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "lsv/error.hpp"
#include "lsv/kernels.hpp"

namespace lsv {

namespace {

std::int64_t binomial_int(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Rational reduce(__int128 num, __int128 den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  num /= a;
  den /= a;
  if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX) {
    throw NumericalError("rational overflow");
  }
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

void check_player(const PlayerSet& players, int player) {
  if (player < 1 || player > players.size()) {
    throw InvalidArgument("player index " + std::to_string(player) + " out of range");
  }
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) { return reduce(num, den); }

Rational operator+(Rational a, Rational b) {
  return reduce(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
}

Rational operator*(Rational a, Rational b) {
  return reduce(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
}

SizeProfile SizeProfile::from_weights(const PlayerSet& players, std::vector<double> weights,
                                      double tol) {
  if (weights.size() != static_cast<std::size_t>(players.size())) {
    throw InvalidArgument("size profile needs one weight per coalition size");
  }
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("size profile weights must be nonnegative");
  }
  SizeProfile p(players, std::move(weights), std::nullopt);
  if (!(std::abs(p.total_mass() - 1.0) <= tol)) {
    throw InvalidArgument("size profile is not normalized: sum C(n-1,s-1) w_s = " +
                          std::to_string(p.total_mass()));
  }
  return p;
}

SizeProfile SizeProfile::from_rationals(const PlayerSet& players, std::vector<Rational> weights) {
  if (weights.size() != static_cast<std::size_t>(players.size())) {
    throw InvalidArgument("size profile needs one weight per coalition size");
  }
  std::vector<double> w;
  for (const Rational& r : weights) {
    if (r.num < 0) throw InvalidArgument("size profile weights must be nonnegative");
    w.push_back(r.to_double());
  }
  SizeProfile p(players, std::move(w), std::move(weights));
  if (*p.exact_total_mass() != Rational{1, 1}) {
    throw InvalidArgument("size profile is not normalized");
  }
  return p;
}

double SizeProfile::total_mass() const noexcept {
  const int n = players_.size();
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    s += static_cast<double>(binomial_int(n - 1, k - 1)) * weights_[static_cast<std::size_t>(k - 1)];
  }
  return s;
}

std::optional<Rational> SizeProfile::exact_total_mass() const {
  if (!exact_) return std::nullopt;
  const int n = players_.size();
  Rational s{0, 1};
  for (int k = 1; k <= n; ++k) {
    s = s + Rational{binomial_int(n - 1, k - 1), 1} * (*exact_)[static_cast<std::size_t>(k - 1)];
  }
  return s;
}

CoalitionDistribution::CoalitionDistribution(const PlayerSet& players, int player,
                                             std::vector<double> p, double tol)
    : players_(players), player_(player) {
  check_player(players, player);
  if (p.size() != players.coalition_count()) {
    throw InvalidArgument("distribution needs one entry per nonempty coalition");
  }
  const Mask bit = Mask{1} << (player - 1);
  p_.assign(p.size() + 1, 0.0);
  for (Mask s = 1; s <= players.grand(); ++s) {
    const double ps = p[s - 1];
    if (!(ps >= 0.0)) throw InvalidArgument("probabilities must be nonnegative");
    if (!(s & bit) && ps != 0.0) {
      throw InvalidArgument("distribution of player " + std::to_string(player) +
                            " puts mass on a coalition without that player");
    }
    p_[s] = ps;
  }
  if (!(std::abs(total_mass() - 1.0) <= tol)) {
    throw InvalidArgument("distribution does not sum to 1 (sum = " +
                          std::to_string(total_mass()) + ")");
  }
}

CoalitionDistribution CoalitionDistribution::from_profile(const SizeProfile& profile, int player) {
  const PlayerSet& players = profile.players();
  check_player(players, player);
  const Mask bit = Mask{1} << (player - 1);
  std::vector<double> p(players.coalition_count(), 0.0);
  for (Mask s = 1; s <= players.grand(); ++s) {
    if (s & bit) p[s - 1] = profile.weights()[static_cast<std::size_t>(std::popcount(s) - 1)];
  }
  // The profile is already validated; allow for its own conversion rounding.
  return CoalitionDistribution(players, player, std::move(p), 1e-10);
}

double CoalitionDistribution::total_mass() const noexcept {
  double s = 0.0;
  for (double x : p_) s += x;
  return s;
}

SizeProfile shapley_distribution(const PlayerSet& players) {
  const int n = players.size();
  std::vector<Rational> w;
  for (int s = 1; s <= n; ++s) w.push_back(Rational::make(1, n * binomial_int(n - 1, s - 1)));
  return SizeProfile::from_rationals(players, std::move(w));
}

SizeProfile banzhaf_distribution(const PlayerSet& players) {
  const int n = players.size();
  return SizeProfile::from_rationals(
      players, std::vector<Rational>(static_cast<std::size_t>(n),
                                     Rational::make(1, std::int64_t{1} << (n - 1))));
}

double expected_marginal(const Game& v, int player, const CoalitionDistribution& dist) {
  if (dist.players() != v.players() || dist.player() != player) {
    throw InvalidArgument("distribution does not belong to player " + std::to_string(player));
  }
  const std::size_t stride = std::size_t{1} << (player - 1);
  const std::span<const double> table = v.padded();
  const std::span<const double> p = dist.padded();
  double total = 0.0;
  for (std::size_t base = 0; base < table.size(); base += 2 * stride) {
    total += kernels::weighted_diff_dot(p.subspan(base + stride, stride),
                                        table.subspan(base + stride, stride),
                                        table.subspan(base, stride));
  }
  return total;
}

Value probabilistic_value(const Game& v, const SizeProfile& profile) {
  const PlayerSet& players = v.players();
  if (profile.players() != players) throw InvalidArgument("profile and game player sets differ");
  // Coalition-indexed weights are the same table for every player; only the
  // pairing of S with S \ i changes.
  std::vector<double> w(players.coalition_count() + 1, 0.0);
  for (Mask s = 1; s <= players.grand(); ++s) {
    w[s] = profile.weights()[static_cast<std::size_t>(std::popcount(s) - 1)];
  }
  const std::span<const double> table = v.padded();
  const std::span<const double> ws = w;
  std::vector<double> out(static_cast<std::size_t>(players.size()));
  for (int i = 0; i < players.size(); ++i) {
    const std::size_t stride = std::size_t{1} << i;
    double total = 0.0;
    for (std::size_t base = 0; base < table.size(); base += 2 * stride) {
      total += kernels::weighted_diff_dot(ws.subspan(base + stride, stride),
                                          table.subspan(base + stride, stride),
                                          table.subspan(base, stride));
    }
    out[static_cast<std::size_t>(i)] = total;
  }
  return Value(players, std::move(out));
}

Value probabilistic_value(const Game& v, std::span<const CoalitionDistribution> dists) {
  const PlayerSet& players = v.players();
  if (dists.size() != static_cast<std::size_t>(players.size())) {
    throw InvalidArgument("need one distribution per player");
  }
  std::vector<double> out;
  for (int i = 1; i <= players.size(); ++i) {
    out.push_back(expected_marginal(v, i, dists[static_cast<std::size_t>(i - 1)]));
  }
  return Value(players, std::move(out));
}

double deviation(const Game& v, int player, const CoalitionDistribution& dist, double mu) {
  if (dist.players() != v.players() || dist.player() != player) {
    throw InvalidArgument("distribution does not belong to player " + std::to_string(player));
  }
  const Mask bit = Mask{1} << (player - 1);
  double s = 0.0;
  for (Mask m = 1; m <= v.players().grand(); ++m) {
    if (!(m & bit)) continue;
    const double d = v(m) - v(m & ~bit) - mu;
    s += dist(m) * d * d;
  }
  return std::sqrt(s);
}

Value shapley_value(const Game& v) {
  return probabilistic_value(v, shapley_distribution(v.players()));
}

Value banzhaf_value(const Game& v) {
  return probabilistic_value(v, banzhaf_distribution(v.players()));
}

}  // namespace lsv
