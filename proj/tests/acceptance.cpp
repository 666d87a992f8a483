// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: lsv_acceptance [--expect-fail ID]...
//
// Exit status is 0 when the set of failing criteria equals the set given with
// --expect-fail, so a known red line stays visible in the output while an
// unexpected failure, or an unexpected pass, still breaks the build.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "lsv/approx.hpp"
#include "lsv/game_io.hpp"
#include "lsv/probabilistic.hpp"
#include "lsv/regular.hpp"
#include "lsv/ruiz.hpp"
#include "oracles.hpp"

using namespace lsv;

namespace {

struct Line {
  std::string id;
  std::string title;
  bool passed;
  std::string detail;
};

std::vector<Line> g_lines;

// max |x(N) - v(N)| over every constrained solve in the run
double g_efficiency = 0.0;

void report(std::string id, std::string title, bool passed, std::string detail) {
  std::printf("[%s] %-4s %s: %s\n", passed ? "PASS" : "FAIL", id.c_str(), title.c_str(), detail.c_str());
  std::fflush(stdout);
  g_lines.push_back({std::move(id), std::move(title), passed, std::move(detail)});
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void track_efficiency(const Value& x, const Game& v) {
  g_efficiency = std::max(g_efficiency, std::abs(x.total() - v(v.players().grand())));
}

double dev(std::span<const double> a, const std::vector<double>& b) {
  return oracle::max_rel_dev(std::vector<double>(a.begin(), a.end()), b);
}

std::vector<double> to_vec(std::span<const double> a) { return {a.begin(), a.end()}; }

// 100 random games per n = 2..8, entries uniform on [-1, 1].
std::vector<Game> corpus() {
  std::mt19937_64 rng(20240601);
  std::vector<Game> games;
  for (int n = 2; n <= 8; ++n)
    for (int t = 0; t < 100; ++t) games.push_back(oracle::random_game(PlayerSet(n), rng));
  return games;
}

void criterion_shapley(const std::vector<Game>& games) {
  const auto start = std::chrono::steady_clock::now();
  double closed = 0.0;
  double kkt = 0.0;
  for (const Game& v : games) {
    const PlayerSet& p = v.players();
    const auto shapley = oracle::shapley_by_permutations(v);
    const auto alpha = charnes_weights(p);
    const Value x1 = efficient_regular_value(v, alpha).value;
    const SubspaceBasis basis = SubspaceBasis::singleton(p);
    const Value x2 =
        solve_approximation(v, WeightScheme::uniform(p, alpha), basis, efficiency_constraint(basis)).value;
    closed = std::max(closed, dev(x1.payoffs(), shapley));
    kkt = std::max(kkt, dev(x2.payoffs(), shapley));
    track_efficiency(x1, v);
    track_efficiency(x2, v);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double worst = std::max(closed, kkt);
  report("C1", "charnes least squares equals Shapley enumeration", worst <= 1e-8 && secs < 30.0,
         fmt("max_rel_dev=%.3g (tol 1e-8), runtime=%.2fs (limit 30s)", worst, secs) +
             fmt(", closed=%.3g kkt=%.3g", closed, kkt));
}

void criterion_banzhaf(const std::vector<Game>& games) {
  double literal = 0.0;
  double affine = 0.0;
  for (const Game& v : games) {
    const PlayerSet& p = v.players();
    const auto banzhaf = oracle::banzhaf_naive(v);
    const SubspaceBasis basis = SubspaceBasis::singleton(p);
    const Value x = solve_approximation(v, WeightScheme::uniform(p, std::vector<double>(static_cast<std::size_t>(p.size()), 1.0)),
                                        basis, LinearConstraintMap::none(basis))
                        .value;
    literal = std::max(literal, dev(x.payoffs(), banzhaf));
    affine = std::max(affine, dev(affine_least_squares(v).payoffs(), banzhaf));
  }
  report("C2", "unconstrained equal-weight additive fit equals Banzhaf enumeration", literal <= 1e-8,
         fmt("max_rel_dev=%.3g (tol 1e-8)", literal, 0.0));
  std::printf("       info: affine fit over all 2^n subsets (empty set included) vs Banzhaf: max_rel_dev=%.3g\n",
              affine);
}

void criterion_theorem3() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto run_case = [&](RegularForm form) {
    RegularProblem prob{form, {}, u(rng)};
    for (int i = 0; i < form.k; ++i) prob.c.push_back(u(rng));
    const RegularSolution s = solve_regular(prob);
    Matrix q2 = form.materialize();
    q2 *= 2.0;
    const Matrix ones(1, static_cast<std::size_t>(form.k), 1.0);
    const double rhs[] = {prob.g};
    return oracle::max_rel_dev(s.x, solve_qp(q2, prob.c, ones, rhs).x);
  };
  double positive = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 9;
    const double p = 2.0 * unit(rng);
    positive = std::max(positive, run_case({p + 0.05 + 2.0 * unit(rng), p, n}));
  }
  double negative = 0.0;
  int made = 0;
  while (made < 200) {
    const int n = 2 + made % 9;
    const double p = -unit(rng);
    const RegularForm f{2.0 * u(rng) + 1.0, p, n};
    // stay clear of the singular boundary
    if (!spectral_pd(f) || f.q + (n - 1) * p < 1e-3) continue;
    negative = std::max(negative, run_case(f));
    ++made;
  }
  const double worst = std::max(positive, negative);
  report("C3", "closed form matches the KKT solver on regular problems", worst <= 1e-9,
         fmt("max_rel_dev=%.3g over 1000 cases with q>p>=0 (tol 1e-9), %.3g over 200 cases with p<0", positive,
             negative));
}

void criterion_linearity() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  struct Config {
    PlayerSet players;
    std::function<Value(const Game&)> value;
    // the 2-additive fit reads its value off the singletons, so x(N) != v(N)
    bool efficient;
  };
  std::vector<Config> configs;
  for (int n = 2; n <= 6; ++n) {
    const PlayerSet p(n);
    std::vector<double> alpha(p.coalition_count());
    for (double& a : alpha) a = pos(rng);
    const SubspaceBasis singleton = SubspaceBasis::singleton(p);
    configs.push_back({p, [=](const Game& g) {
                         return solve_approximation(g, WeightScheme::diagonal(p, alpha), singleton,
                                                    efficiency_constraint(singleton))
                             .value;
                       },
                       true});
    const SubspaceBasis pairs = SubspaceBasis::k_additive(p, 2);
    const LinearConstraintMap both = efficiency_constraint(pairs) + sum_preservation_constraint(pairs);
    configs.push_back({p, [=](const Game& g) {
                         return solve_approximation(g, WeightScheme::diagonal(p, alpha), pairs, both).value;
                       },
                       false});
    std::vector<double> m(p.coalition_count(), 0.0);
    for (Mask s = 1; s < p.grand(); ++s) m[s - 1] = pos(rng);
    const RuizWeights rw(p, m);
    configs.push_back({p, [=](const Game& g) { return ruiz_value(g, rw); }, true});
  }
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Config& c = configs[static_cast<std::size_t>(t) % configs.size()];
    const Game v = oracle::random_game(c.players, rng);
    const Game w = oracle::random_game(c.players, rng);
    const double a = u(rng);
    const double b = u(rng);
    const Value mixed = c.value(a * v + b * w);
    const Value xv = c.value(v);
    const Value xw = c.value(w);
    std::vector<double> expected;
    for (std::size_t i = 0; i < xv.payoffs().size(); ++i) expected.push_back(a * xv.payoffs()[i] + b * xw.payoffs()[i]);
    worst = std::max(worst, dev(mixed.payoffs(), expected));
    if (c.efficient) {
      track_efficiency(mixed, a * v + b * w);
      track_efficiency(xv, v);
    }
  }
  report("C4", "values are linear in the game", worst <= 1e-8,
         fmt("max_rel_dev=%.3g over %g quadruples (tol 1e-8)", worst, 200));
}

void criterion_ruiz() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  double general = 0.0;
  double uniform = 0.0;
  for (int t = 0; t < 50; ++t) {
    const PlayerSet p(3 + t % 4);
    const Game v = oracle::random_game(p, rng);
    std::vector<double> m(p.coalition_count(), 0.0);
    for (Mask s = 1; s < p.grand(); ++s) m[s - 1] = pos(rng);
    const RuizWeights rw(p, m);
    const Value a = ruiz_value(v, rw);
    general = std::max(general, dev(a.payoffs(), to_vec(ruiz_direct_value(v, rw).payoffs())));
    track_efficiency(a, v);

    std::vector<double> by_size(static_cast<std::size_t>(p.size() - 1));
    for (double& x : by_size) x = pos(rng);
    const RuizWeights uw = RuizWeights::uniform(p, by_size);
    const auto closed = to_vec(ruiz_regular_value(v, by_size).payoffs());
    const Value ua = ruiz_value(v, uw);
    uniform = std::max(uniform, dev(ua.payoffs(), closed));
    uniform = std::max(uniform, dev(ruiz_direct_value(v, uw).payoffs(), closed));
    track_efficiency(ua, v);
  }
  report("C6", "gap problem: transformed, direct and closed-form paths agree",
         general <= 1e-8 && uniform <= 1e-9,
         fmt("transformed vs direct max_rel_dev=%.3g (tol 1e-8), uniform vs closed form %.3g (tol 1e-9)",
             general, uniform));
}

void criterion_pd() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int agree = 0;
  int total = 0;
  int positive = 0;
  while (total < 1000) {
    const int k = 1 + total % 10;
    const RegularForm f{2.0 * u(rng), u(rng), k};
    // keep both eigenvalues away from zero so the comparison is well posed
    const double lam1 = f.q - f.p;
    const double lam2 = f.q + (k - 1) * f.p;
    if ((k > 1 && std::abs(lam1) < 1e-6) || std::abs(lam2) < 1e-6) continue;
    const bool chol = cholesky_pd_check(f.materialize()).positive_definite;
    agree += chol == spectral_pd(f);
    positive += chol;
    ++total;
  }
  bool examples = true;
  const PlayerSet p3(3);
  const SubspaceBasis basis = SubspaceBasis::singleton(p3);
  for (double a : {0.5, 1.0, 2.0}) {
    for (const std::vector<double>& alpha : {std::vector<double>{0, a, 0}, std::vector<double>{a, 0, a},
                                             std::vector<double>{0, a, -a}}) {
      const RegularForm f = uniform_pq(alpha, p3);
      examples = examples && spectral_pd(f) &&
                 cholesky_pd_check(build_gram(WeightScheme::uniform(p3, alpha), basis)).positive_definite;
    }
  }
  report("C7", "spectral criterion agrees with Cholesky; worked n=3 weight vectors are positive definite",
         agree == total && examples,
         std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(positive) +
             " positive definite), 9/9 example forms " + (examples ? "pass" : "FAIL"));
}

void criterion_deviation() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_slope = 0.0;
  bool minimal = true;
  for (int t = 0; t < 100; ++t) {
    const PlayerSet p(2 + t % 6);
    const Game v = oracle::random_game(p, rng);
    const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p.size()));
    const Mask bit = Mask{1} << (i - 1);
    std::vector<double> w(p.coalition_count(), 0.0);
    double sum = 0.0;
    for (Mask s = 1; s <= p.grand(); ++s)
      if (s & bit) sum += w[s - 1] = unit(rng);
    for (double& x : w) x /= sum;
    const CoalitionDistribution d(p, i, w);
    const double e = expected_marginal(v, i, d);
    const double h = 1e-4;
    const double up = deviation(v, i, d, e + h);
    const double dn = deviation(v, i, d, e - h);
    worst_slope = std::max(worst_slope, std::abs(up * up - dn * dn) / (2 * h));
    const double s0 = deviation(v, i, d, e);
    minimal = minimal && s0 <= deviation(v, i, d, e + 0.1) && s0 <= deviation(v, i, d, e - 0.1);
  }
  report("C8", "expected marginal contribution minimizes the deviation", worst_slope <= 1e-8 && minimal,
         fmt("max |d sigma^2 / d mu| at the mean=%.3g (tol 1e-8) over %g draws", worst_slope, 100) +
             ", sigma(E) <= sigma(E+-0.1): " + (minimal ? "yes" : "no"));
}

void criterion_normalization() {
  bool exact = true;
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const PlayerSet p(n);
    for (const SizeProfile& prof : {shapley_distribution(p), banzhaf_distribution(p)}) {
      exact = exact && prof.exact_total_mass() == Rational{1, 1};
      worst = std::max(worst, std::abs(prof.total_mass() - 1.0));
      if (n <= 12) {
        for (int i = 1; i <= n; ++i) {
          worst = std::max(worst, std::abs(CoalitionDistribution::from_profile(prof, i).total_mass() - 1.0));
        }
      }
    }
  }
  report("C9", "Shapley and Banzhaf coalition probabilities sum to one", exact && worst <= 1e-12,
         std::string("exact rational sums ") + (exact ? "equal 1" : "DIFFER") + fmt(", floating max |sum-1|=%.3g (tol 1e-12)", worst, 0.0));
}

void criterion_representation() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4;
    const PlayerSet p(n);
    const std::size_t c = p.coalition_count();
    Matrix l(static_cast<std::size_t>(n), c);
    for (std::size_t i = 0; i < l.rows(); ++i)
      for (std::size_t j = 0; j < c; ++j) l(i, j) = u(rng);
    // W = I and offset c(v) = 2(Z L - I) v, Z the coalition-player incidence
    Matrix z(c, static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < c; ++s)
      for (std::size_t i = 0; i < z.cols(); ++i) z(s, i) = ((s + 1) >> i) & 1u;
    Matrix cm = z * l;
    for (std::size_t s = 0; s < c; ++s) cm(s, s) -= 1.0;
    cm *= 2.0;
    const Game v = oracle::random_game(p, rng);
    const SubspaceBasis basis = SubspaceBasis::singleton(p);
    const Matrix a(1, static_cast<std::size_t>(n));
    const double b[] = {0.0};
    const Value x = solve_approximation(v, WeightScheme::diagonal(p, std::vector<double>(c, 1.0)), basis, a, b,
                                        LinearOffsetMap{cm})
                        .value;
    worst = std::max(worst, dev(x.payoffs(), l * v.table()));
  }
  report("C10", "linear values are reproduced by a least-squares problem with A=0, b=0", worst <= 1e-10,
         fmt("max_rel_dev=%.3g over 20 random linear values (tol 1e-10)", worst, 0.0));
}

void criterion_cli() {
  using cli_support::run;
  const std::string game = cli_support::write_temp("acceptance_u12.json", cli_support::kUnanimity12);
  const std::string golden = "player value\n1 0.5\n2 0.5\n3 0\n";
  std::vector<std::string> failed;
  const auto shapley = run({"value", "--method", "shapley", game});
  if (shapley.code != 0 || shapley.out != golden) failed.push_back("shapley golden");
  const auto lsq = run({"value", "--method", "lsq", "--weights", "charnes", game});
  if (lsq.code != 0 || lsq.out != shapley.out) failed.push_back("lsq/shapley byte identity");
  const auto pd = run({"check-pd", "--weights", "uniform:0,1,-1", "--n", "3"});
  if (pd.code != 0 || pd.out != "PD: true (p=0, q=1)\n") failed.push_back("check-pd golden");
  if (run({"value", "--method", "nope", game}).code != 1) failed.push_back("exit 1");
  const auto missing =
      run({"value", cli_support::write_temp("acceptance_missing.json", R"({"n":2,"values":{"1":0,"1,2":1}})")});
  if (missing.code != 2 || missing.err.find("missing coalition 2") == std::string::npos) failed.push_back("exit 2");
  if (run({"value", "--method", "lsq", "--weights", "uniform:1,-5,1", game}).code != 3) failed.push_back("exit 3");
  std::string detail = "3 goldens byte-exact, exit codes 1/2/3";
  if (!failed.empty()) {
    detail = "failed:";
    for (const auto& f : failed) detail += " [" + f + "]";
  }
  report("C11", "command-line goldens and exit codes", failed.empty(), detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> expected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expected.insert(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail ID]...\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Game> games = corpus();
  criterion_shapley(games);
  criterion_banzhaf(games);
  criterion_theorem3();
  criterion_linearity();
  criterion_ruiz();
  report("C5", "constrained solves are efficient", g_efficiency <= 1e-10,
         fmt("max |x(N) - v(N)|=%.3g over C1, C4 and C6 (tol 1e-10)", g_efficiency, 0.0));
  criterion_pd();
  criterion_deviation();
  criterion_normalization();
  criterion_representation();
  criterion_cli();

  std::set<std::string> failed;
  for (const Line& l : g_lines)
    if (!l.passed) failed.insert(l.id);
  std::printf("summary: %zu/%zu criteria pass\n", g_lines.size() - failed.size(), g_lines.size());
  if (failed == expected) return 0;
  for (const auto& id : failed)
    if (!expected.count(id)) std::printf("unexpected failure: %s\n", id.c_str());
  for (const auto& id : expected)
    if (!failed.count(id)) std::printf("expected failure did not occur: %s\n", id.c_str());
  return 1;
}
