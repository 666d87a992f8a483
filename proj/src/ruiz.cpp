#include "lsv/ruiz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lsv/error.hpp"
#include "lsv/regular.hpp"

namespace lsv {

namespace {

double alpha_for(int n, int s, double m) {
  const double nn = n;
  const double ss = s;
  return nn * nn * m / (ss * ss * (nn - ss) * (nn - ss));
}

double coalition_sum(const Value& x, Mask s) {
  double t = 0.0;
  for (Mask m = s; m; m &= m - 1) t += x.payoffs()[static_cast<std::size_t>(std::countr_zero(m))];
  return t;
}

}  // namespace

RuizWeights::RuizWeights(const PlayerSet& players, std::vector<double> m)
    : players_(players), m_(std::move(m)) {
  if (players.size() < 2) throw InvalidArgument("the gap problem needs at least two players");
  if (m_.size() != players.coalition_count()) {
    throw InvalidArgument("Ruiz weights need one entry per nonempty coalition");
  }
  for (Mask s = 1; s < players.grand(); ++s) {
    if (!(m_[s - 1] > 0.0)) {
      throw InvalidArgument("Ruiz weight for coalition {" +
                            Coalition::from_mask(s, players).key() + "} must be positive");
    }
  }
  m_[players.grand() - 1] = 0.0;
}

RuizWeights RuizWeights::uniform(const PlayerSet& players, std::span<const double> m_by_size) {
  const int n = players.size();
  if (n < 2 || m_by_size.size() != static_cast<std::size_t>(n - 1)) {
    throw InvalidArgument("uniform Ruiz weights need one weight per size 1.." +
                          std::to_string(n - 1));
  }
  std::vector<double> m(players.coalition_count(), 0.0);
  for (Mask s = 1; s < players.grand(); ++s) {
    m[s - 1] = m_by_size[static_cast<std::size_t>(std::popcount(s) - 1)];
  }
  return {players, std::move(m)};
}

double gap(const Value& x, const Coalition& s, const Game& v) {
  const PlayerSet& players = v.players();
  const Mask grand = players.grand();
  if (s.mask() == grand) throw InvalidArgument("gap is undefined for the grand coalition");
  const Mask rest = grand & ~s.mask();
  const double size = s.size();
  const double n = players.size();
  return (v(s.mask()) - coalition_sum(x, s.mask())) / size -
         (v(rest) - coalition_sum(x, rest)) / (n - size);
}

double ruiz_objective(const Value& x, const Game& v, const RuizWeights& m) {
  const PlayerSet& players = v.players();
  double total = 0.0;
  for (Mask s = 1; s < players.grand(); ++s) {
    const double d = gap(x, Coalition::from_mask(s, players), v);
    total += m(s) * d * d;
  }
  return total;
}

RuizTransform transform(const Game& v, const RuizWeights& m) {
  const PlayerSet& players = v.players();
  if (m.players() != players) throw InvalidArgument("weights and game use different player sets");
  const int n = players.size();
  const Game dual = dual_game(v);
  Game vbar(players);
  std::vector<double> alpha(players.coalition_count(), 0.0);
  for (Mask s = 1; s < players.grand(); ++s) {
    const int size = std::popcount(s);
    vbar.set(s, ((n - size) * v(s) + size * dual(s)) / n);
    alpha[s - 1] = alpha_for(n, size, m(s));
  }
  return {std::move(vbar), WeightScheme::diagonal(players, std::move(alpha)), v(players.grand())};
}

Value ruiz_value(const Game& v, const RuizWeights& m, const Tolerances& tol) {
  RuizTransform t = transform(v, m);
  const SubspaceBasis basis = SubspaceBasis::singleton(v.players());
  const Matrix ones(1, static_cast<std::size_t>(v.n()), 1.0);
  const double rhs[] = {t.g};
  return solve_approximation(t.vbar, t.alpha, basis, ones, rhs, {}, tol).value;
}

Value ruiz_direct_value(const Game& v, const RuizWeights& m, const Tolerances& tol) {
  const PlayerSet& players = v.players();
  const std::size_t n = static_cast<std::size_t>(players.size());
  const Mask grand = players.grand();
  // d(x, S) = a_S'x + k_S with a_S,j = -1/|S| for j in S and 1/(n-|S|) otherwise.
  Matrix h(n, n);
  std::vector<double> lin(n, 0.0);
  std::vector<double> a(n);
  for (Mask s = 1; s < grand; ++s) {
    const double size = std::popcount(s);
    const double rest = static_cast<double>(n) - size;
    for (std::size_t j = 0; j < n; ++j) a[j] = ((s >> j) & 1u) ? -1.0 / size : 1.0 / rest;
    const double k = v(s) / size - v(grand & ~s) / rest;
    const double w = m(s);
    for (std::size_t i = 0; i < n; ++i) {
      lin[i] -= 2.0 * w * k * a[i];
      for (std::size_t j = 0; j < n; ++j) h(i, j) += 2.0 * w * a[i] * a[j];
    }
  }
  // sum m (a'x + k)^2 = 1/2 x'Hx - lin'x + const
  // Every a_S is orthogonal to 1, so H is singular along 1. Adding
  // rho (1'x - v(N))^2 leaves the objective unchanged on the feasible set.
  const double rho = std::max(1.0, h.max_abs());
  for (std::size_t i = 0; i < n; ++i) {
    lin[i] += 2.0 * rho * v(grand);
    for (std::size_t j = 0; j < n; ++j) h(i, j) += 2.0 * rho;
  }
  const Matrix ones(1, n, 1.0);
  const double rhs[] = {v(grand)};
  KKTSolution sol = solve_qp(h, lin, ones, rhs, tol);
  return Value(players, std::move(sol.x));
}

Value ruiz_regular_value(const Game& v, std::span<const double> m_by_size) {
  const PlayerSet& players = v.players();
  const int n = players.size();
  if (n < 2 || m_by_size.size() != static_cast<std::size_t>(n - 1)) {
    throw InvalidArgument("uniform Ruiz weights need one weight per size 1.." +
                          std::to_string(n - 1));
  }
  RuizTransform t = transform(v, RuizWeights::uniform(players, m_by_size));
  std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
  for (int s = 1; s < n; ++s) {
    alpha[static_cast<std::size_t>(s - 1)] = alpha_for(n, s, m_by_size[static_cast<std::size_t>(s - 1)]);
  }
  return regular_value(t.vbar, alpha, t.g).value;
}

}  // namespace lsv
