#include "lsv/regular.hpp"

#include <bit>

#include "lsv/error.hpp"

namespace lsv {

namespace {

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Matrix RegularForm::materialize() const {
  if (k < 1) throw InvalidArgument("regular form dimension must be positive");
  const auto n = static_cast<std::size_t>(k);
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = q;
  return m;
}

RegularForm uniform_pq(std::span<const double> alpha_by_size, const PlayerSet& players) {
  const int n = players.size();
  if (alpha_by_size.size() != static_cast<std::size_t>(n)) {
    throw InvalidArgument("alpha needs one weight per coalition size");
  }
  RegularForm f;
  f.k = n;
  for (int s = 1; s <= n; ++s) {
    const double a = alpha_by_size[static_cast<std::size_t>(s - 1)];
    f.q += binomial(n - 1, s - 1) * a;
    if (s >= 2) f.p += binomial(n - 2, s - 2) * a;
  }
  return f;
}

bool dimension_free_pd(const RegularForm& form) noexcept { return form.q > form.p && form.p >= 0.0; }

bool spectral_pd(const RegularForm& form) noexcept {
  // with k = 1 the eigenvalue q - p does not occur
  return form.k >= 1 && (form.k == 1 || form.q - form.p > 0.0) &&
         form.q + (form.k - 1) * form.p > 0.0;
}

RegularSolution solve_regular(const RegularProblem& problem) {
  const RegularForm& f = problem.form;
  const std::size_t n = problem.c.size();
  if (n != static_cast<std::size_t>(f.k)) throw InvalidArgument("c must have length k");
  if (f.q == f.p) {
    throw InvalidArgument("q == p: the form is singular on the constraint hyperplane");
  }
  const double nn = static_cast<double>(n);
  double big_c = 0.0;
  for (double ci : problem.c) big_c += ci;

  RegularSolution sol;
  sol.z = (2.0 * (f.q + (nn - 1.0) * f.p) * problem.g - big_c) / nn;
  sol.x.resize(n);
  const double denom = 2.0 * f.q - 2.0 * f.p;
  for (std::size_t i = 0; i < n; ++i) {
    sol.x[i] = (problem.c[i] + sol.z - 2.0 * f.p * problem.g) / denom;
  }
  return sol;
}

std::vector<double> charnes_weights(const PlayerSet& players) {
  const int n = players.size();
  if (n < 2) throw InvalidArgument("Charnes weights need at least two players");
  std::vector<double> alpha(static_cast<std::size_t>(n));
  // alpha(n) stays 0: under x(N) = v(N) the grand coalition has no residual
  for (int s = 1; s < n; ++s) alpha[static_cast<std::size_t>(s - 1)] = 1.0 / binomial(n - 2, s - 1);
  return alpha;
}

RegularValueResult regular_value(const Game& target, std::span<const double> alpha_by_size,
                                 double g) {
  const PlayerSet& players = target.players();
  RegularForm form = uniform_pq(alpha_by_size, players);

  // c_i = 2 sum_{S containing i} alpha(|S|) target(S), via one superset sweep.
  std::vector<double> weighted(target.padded().begin(), target.padded().end());
  for (Mask m = 1; m <= players.grand(); ++m) {
    weighted[m] *= alpha_by_size[static_cast<std::size_t>(std::popcount(m) - 1)];
  }
  superset_sum_inplace(weighted);
  RegularProblem problem{form, std::vector<double>(static_cast<std::size_t>(players.size())), g};
  for (int i = 0; i < players.size(); ++i) {
    problem.c[static_cast<std::size_t>(i)] = 2.0 * weighted[Mask{1} << i];
  }

  RegularSolution sol = solve_regular(problem);
  return {Value(players, std::move(sol.x)), sol.z, form, spectral_pd(form)};
}

RegularValueResult efficient_regular_value(const Game& v, std::span<const double> alpha_by_size) {
  return regular_value(v, alpha_by_size, v(v.players().grand()));
}

}  // namespace lsv
