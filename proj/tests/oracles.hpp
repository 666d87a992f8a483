#pragma once

// Reference computations used only by the tests. They go through the
// definitions by brute force and share no code with the library beyond the
// Game container.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "lsv/game.hpp"

namespace oracle {

using lsv::Game;
using lsv::Mask;
using lsv::PlayerSet;

inline Game random_game(const PlayerSet& players, std::mt19937_64& rng, double lo = -1.0,
                        double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Game g(players);
  for (Mask m = 1; m <= players.grand(); ++m) g.set(m, u(rng));
  return g;
}

inline int popcount(Mask m) {
  int c = 0;
  for (; m; m &= m - 1) ++c;
  return c;
}

// Average marginal contribution over all n! orderings.
inline std::vector<double> shapley_by_permutations(const Game& v) {
  const int n = v.n();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  double count = 0.0;
  do {
    Mask before = 0;
    for (int p : order) {
      const Mask after = before | (Mask{1} << p);
      sum[static_cast<std::size_t>(p)] += v(after) - v(before);
      before = after;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& s : sum) s /= count;
  return sum;
}

// 2^(1-n) times the sum of marginal contributions over coalitions containing i.
inline std::vector<double> banzhaf_naive(const Game& v) {
  const int n = v.n();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask s = 1; s <= v.players().grand(); ++s) {
      if (s & bit) out[static_cast<std::size_t>(i)] += v(s) - v(s & ~bit);
    }
    out[static_cast<std::size_t>(i)] /= std::pow(2.0, n - 1);
  }
  return out;
}

// Dense Gaussian elimination with full row search, kept apart from the
// library solver.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    if (std::abs(a[best][col]) < 1e-300) throw std::runtime_error("oracle: singular system");
    std::swap(a[best], a[col]);
    std::swap(b[best], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Minimizes sum_S alpha_S (v(S) - x(S))^2 over x with x(N) = v(N) by
// eliminating x_n and solving the normal equations of the remaining n-1
// coordinates. alpha is indexed by mask - 1.
inline std::vector<double> efficient_lsq(const Game& v, const std::vector<double>& alpha) {
  const int n = v.n();
  const Mask grand = v.players().grand();
  const double g = v(grand);
  const std::size_t k = static_cast<std::size_t>(n - 1);
  // x(S) = sum_{i<n-1} d_i(S) x_i + e(S) with x_n = g - sum others.
  std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
  std::vector<double> atb(k, 0.0);
  for (Mask s = 1; s <= grand; ++s) {
    const bool has_last = (s >> (n - 1)) & 1u;
    std::vector<double> d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = (((s >> i) & 1u) ? 1.0 : 0.0) - (has_last ? 1.0 : 0.0);
    const double target = v(s) - (has_last ? g : 0.0);
    const double w = alpha[s - 1];
    for (std::size_t i = 0; i < k; ++i) {
      atb[i] += w * d[i] * target;
      for (std::size_t j = 0; j < k; ++j) ata[i][j] += w * d[i] * d[j];
    }
  }
  std::vector<double> x = k ? gauss_solve(ata, atb) : std::vector<double>{};
  double rest = g;
  for (double xi : x) rest -= xi;
  x.push_back(rest);
  return x;
}

// Gram matrix of the basis under W, by explicit double sums over coalitions.
inline std::vector<std::vector<double>> gram(const std::vector<std::vector<double>>& w,
                                             const std::vector<Game>& basis) {
  const std::size_t k = basis.size();
  const std::size_t c = w.size();
  std::vector<std::vector<double>> q(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t s = 0; s < c; ++s)
        for (std::size_t t = 0; t < c; ++t)
          q[i][j] += w[s][t] * basis[i](static_cast<Mask>(s + 1)) * basis[j](static_cast<Mask>(t + 1));
  return q;
}

// Gap d(x, S) written out from the definition.
inline double gap(const std::vector<double>& x, Mask s, const Game& v) {
  const int n = v.n();
  const Mask rest = v.players().grand() & ~s;
  double xs = 0.0;
  double xr = 0.0;
  for (int i = 0; i < n; ++i) ((s >> i) & 1u ? xs : xr) += x[static_cast<std::size_t>(i)];
  const double size = popcount(s);
  return (v(s) - xs) / size - (v(rest) - xr) / (n - size);
}

inline double gap_objective(const std::vector<double>& x, const Game& v,
                            const std::vector<double>& m) {
  double total = 0.0;
  for (Mask s = 1; s < v.players().grand(); ++s) {
    const double d = gap(x, s, v);
    total += m[s - 1] * d * d;
  }
  return total;
}

// Largest directional derivative of the gap objective along the feasible
// directions e_i - e_j, by central differences. Near zero at the constrained
// optimum.
inline double gap_stationarity(const std::vector<double>& x, const Game& v,
                               const std::vector<double>& m, double h = 1e-5) {
  double worst = 0.0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<double> up = x;
      std::vector<double> dn = x;
      up[i] += h;
      up[j] -= h;
      dn[i] -= h;
      dn[j] += h;
      worst = std::max(worst, std::abs(gap_objective(up, v, m) - gap_objective(dn, v, m)) / (2 * h));
    }
  }
  return worst;
}

inline double max_rel_dev(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  return m;
}

template <class A, class B>
double max_rel_dev(const A& a, const B& b) {
  return max_rel_dev(std::vector<double>(a.begin(), a.end()), std::vector<double>(b.begin(), b.end()));
}

}  // namespace oracle
