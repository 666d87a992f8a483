#include "lsv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lsv/error.hpp"
#include "lsv/probabilistic.hpp"
#include "lsv/regular.hpp"
#include "lsv/ruiz.hpp"

namespace lsv {

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const VerifyCheck& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

double relative_deviation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("vectors differ in length");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  }
  return m;
}

namespace {

class Checker {
 public:
  Checker(std::string name, double tolerance) {
    check_.name = std::move(name);
    check_.tolerance = tolerance;
  }

  void observe(double deviation) {
    check_.max_deviation = std::max(check_.max_deviation, deviation);
    if (!(deviation <= check_.tolerance)) check_.passed = false;
  }
  void note(std::string text) { check_.note = std::move(text); }
  VerifyCheck done() { return std::move(check_); }

 private:
  VerifyCheck check_;
};

Game random_game(const PlayerSet& players, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Game g(players);
  for (double& x : g.table()) x = u(rng);
  return g;
}

Value combine(double a, const Value& x, double b, const Value& y) {
  std::vector<double> out(x.payoffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x.payoffs()[i] + b * y.payoffs()[i];
  return Value(x.players(), std::move(out));
}

}  // namespace

VerifyReport run_verification(const Game& v, const VerifyOptions& options) {
  const PlayerSet& players = v.players();
  const int n = players.size();
  if (n > VerifyOptions::kMaxPlayers) {
    throw InvalidArgument("verify supports at most " + std::to_string(VerifyOptions::kMaxPlayers) +
                          " players, got " + std::to_string(n));
  }
  const double tol = options.tolerance;
  const double vn = v(players.grand());
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);

  VerifyReport report;
  Checker efficiency("efficiency", options.efficiency_tolerance);
  const SubspaceBasis basis = SubspaceBasis::singleton(players);
  const LinearConstraintMap eff = efficiency_constraint(basis);

  const Value shapley = shapley_value(v);
  const Value banzhaf = banzhaf_value(v);

  {
    Checker c("charnes-lsq-vs-shapley", tol);
    if (n >= 2) {
      const std::vector<double> alpha = charnes_weights(players);
      const Value engine =
          solve_approximation(v, WeightScheme::uniform(players, alpha), basis, eff, {}, options.solver)
              .value;
      const Value closed = efficient_regular_value(v, alpha).value;
      c.observe(relative_deviation(engine.payoffs(), shapley.payoffs()));
      c.observe(relative_deviation(closed.payoffs(), shapley.payoffs()));
      efficiency.observe(std::abs(engine.total() - vn));
      efficiency.observe(std::abs(closed.total() - vn));
    } else {
      c.note("skipped: needs at least two players");
    }
    report.checks.push_back(c.done());
  }

  {
    Checker c("affine-lsq-vs-banzhaf", tol);
    c.observe(relative_deviation(affine_least_squares(v, options.solver).payoffs(),
                                 banzhaf.payoffs()));
    report.checks.push_back(c.done());
  }

  {
    Checker c("closed-form-vs-kkt", tol);
    const Matrix ones(1, static_cast<std::size_t>(n), 1.0);
    for (int t = 0; t < std::max(1, options.trials); ++t) {
      // q > p >= 0 keeps every instance positive definite.
      const double p = unit(rng);
      RegularProblem prob{{p + 0.1 + unit(rng), p, n}, {}, sym(rng)};
      for (int i = 0; i < n; ++i) prob.c.push_back(sym(rng));
      const RegularSolution closed = solve_regular(prob);
      Matrix q2 = prob.form.materialize();
      q2 *= 2.0;
      const double rhs[] = {prob.g};
      const KKTSolution kkt = solve_qp(q2, prob.c, ones, rhs, options.solver);
      c.observe(relative_deviation(closed.x, kkt.x));
    }
    report.checks.push_back(c.done());
  }

  {
    Checker c("ruiz-transform-vs-direct", tol);
    if (n >= 2) {
      for (int t = 0; t < std::max(1, options.trials); ++t) {
        std::vector<double> m(players.coalition_count(), 0.0);
        for (Mask s = 1; s < players.grand(); ++s) m[s - 1] = 0.1 + unit(rng);
        const RuizWeights weights(players, std::move(m));
        const Value transformed = ruiz_value(v, weights, options.solver);
        const Value direct = ruiz_direct_value(v, weights, options.solver);
        c.observe(relative_deviation(transformed.payoffs(), direct.payoffs()));
        efficiency.observe(std::abs(transformed.total() - vn));
      }
    } else {
      c.note("skipped: needs at least two players");
    }
    report.checks.push_back(c.done());
  }

  {
    Checker c("linearity", tol);
    std::vector<double> alpha(players.coalition_count());
    for (double& a : alpha) a = 0.1 + unit(rng);
    const WeightScheme w = WeightScheme::diagonal(players, alpha);
    auto engine = [&](const Game& g) {
      return solve_approximation(g, w, basis, eff, {}, options.solver).value;
    };
    const Value ev = engine(v);
    for (int t = 0; t < std::max(1, options.trials); ++t) {
      const Game other = random_game(players, rng);
      const double a = sym(rng);
      const double b = sym(rng);
      const Game mixed = a * v + b * other;
      c.observe(relative_deviation(engine(mixed).payoffs(), combine(a, ev, b, engine(other)).payoffs()));
      c.observe(relative_deviation(shapley_value(mixed).payoffs(),
                                   combine(a, shapley, b, shapley_value(other)).payoffs()));
    }
    efficiency.observe(std::abs(ev.total() - vn));
    report.checks.push_back(c.done());
  }

  if (options.custom_weights) {
    Checker c("custom-weights", options.efficiency_tolerance);
    try {
      const Value x =
          solve_approximation(v, *options.custom_weights, basis, eff, {}, options.solver).value;
      c.observe(std::abs(x.total() - vn));
      c.note("solved; efficiency deviation reported");
    } catch (const NotPositiveDefinite& e) {
      c.note(std::string("rejected by the positive-definiteness gate as expected: ") + e.what());
    }
    report.checks.push_back(c.done());
  }

  report.checks.push_back(efficiency.done());
  return report;
}

}  // namespace lsv
