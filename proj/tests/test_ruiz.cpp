#include <random>

#include "doctest.h"
#include "lsv/error.hpp"
#include "lsv/ruiz.hpp"
#include "oracles.hpp"

using namespace lsv;

namespace {

std::vector<double> random_m(const PlayerSet& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<double> m(p.coalition_count(), 0.0);
  for (Mask s = 1; s < p.grand(); ++s) m[s - 1] = u(rng);
  return m;
}

}  // namespace

TEST_SUITE("ruiz") {

TEST_CASE("gap") {
  const PlayerSet p(3);
  const Game u = unanimity_game(Coalition::from_members({1, 2}, p), p);
  const Value x(p, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(gap(x, Coalition::from_members({3}, p), u) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(gap(x, Coalition::grand(p), u), InvalidArgument);
  std::mt19937_64 rng(31);
  const Game v = oracle::random_game(PlayerSet(4), rng);
  const Value y(v.players(), {0.1, -0.2, 0.3, 0.4});
  for (Mask s = 1; s < 15; ++s) {
    const double a = gap(y, Coalition::from_mask(s, v.players()), v);
    const double b = gap(y, Coalition::from_mask(15 & ~s, v.players()), v);
    CHECK(a + b == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("weights") {
  const PlayerSet p(3);
  CHECK_THROWS_AS(RuizWeights(PlayerSet(1), {1.0}), InvalidArgument);
  CHECK_THROWS_AS(RuizWeights(p, {1, 1, 0, 1, 1, 1, 1}), InvalidArgument);
  const RuizWeights w(p, {1, 1, 1, 1, 1, 1, -7});
  CHECK(w(7) == 0.0);
  const double by_size[] = {2.0, 3.0};
  const RuizWeights uw = RuizWeights::uniform(p, by_size);
  CHECK(uw(0b011) == 3.0);
  CHECK(uw(0b100) == 2.0);
}

TEST_CASE("transform") {
  const PlayerSet p(3);
  const Game u = unanimity_game(Coalition::from_members({1, 2}, p), p);
  const RuizTransform t = transform(u, RuizWeights(p, std::vector<double>(7, 1.0)));
  CHECK(t.vbar(0b001) == doctest::Approx(1.0 / 3));
  CHECK(t.g == 1.0);
  // m_S = s^2 (n-s)^2 / n^2 gives alpha_S = 1
  std::vector<double> m(7);
  for (Mask s = 1; s < 7; ++s) {
    const double k = oracle::popcount(s);
    m[s - 1] = k * k * (3 - k) * (3 - k) / 9.0;
  }
  const RuizTransform t1 = transform(u, RuizWeights(p, m));
  const auto alpha = *t1.alpha.diagonal_weights();
  for (Mask s = 1; s < 7; ++s) CHECK(alpha[s - 1] == doctest::Approx(1.0));
  CHECK(alpha[6] == 0.0);

  const Game add = additive_game(Value(p, {1.0, 2.0, 3.0}));
  const RuizTransform ta = transform(add, RuizWeights(p, std::vector<double>(7, 1.0)));
  for (Mask s = 1; s < 7; ++s) CHECK(ta.vbar(s) == doctest::Approx(add(s)));
}

TEST_CASE("transformed objective differs from the gap objective by a constant") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 2; n <= 6; ++n) {
    const PlayerSet p(n);
    const Game v = oracle::random_game(p, rng);
    const auto m = random_m(p, rng);
    const RuizTransform t = transform(v, RuizWeights(p, m));
    const auto alpha = *t.alpha.diagonal_weights();
    std::vector<double> diffs;
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<double> x(static_cast<std::size_t>(n));
      double sum = 0.0;
      for (int i = 0; i + 1 < n; ++i) sum += x[static_cast<std::size_t>(i)] = u(rng);
      x.back() = v(p.grand()) - sum;
      double transformed = 0.0;
      for (Mask s = 1; s < p.grand(); ++s) {
        double xs = 0.0;
        for (int i = 0; i < n; ++i)
          if ((s >> i) & 1u) xs += x[static_cast<std::size_t>(i)];
        transformed += alpha[s - 1] * (t.vbar(s) - xs) * (t.vbar(s) - xs);
      }
      diffs.push_back(oracle::gap_objective(x, v, m) - transformed);
    }
    for (double d : diffs) CHECK(d == doctest::Approx(diffs[0]).epsilon(1e-8));
  }
}

TEST_CASE("transformed and direct solutions agree and are optimal") {
  std::mt19937_64 rng(33);
  for (int n = 2; n <= 6; ++n) {
    const PlayerSet p(n);
    const Game v = oracle::random_game(p, rng);
    const auto m = random_m(p, rng);
    const RuizWeights w(p, m);
    const Value a = ruiz_value(v, w);
    const Value b = ruiz_direct_value(v, w);
    CHECK(oracle::max_rel_dev(a.payoffs(), b.payoffs()) < 1e-9);
    CHECK(a.total() == doctest::Approx(v(p.grand())).epsilon(1e-12));
    const std::vector<double> x(a.payoffs().begin(), a.payoffs().end());
    CHECK(oracle::gap_stationarity(x, v, m) < 1e-6);
  }
}

TEST_CASE("uniform weights match the closed form") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int n = 2; n <= 6; ++n) {
    const PlayerSet p(n);
    const Game v = oracle::random_game(p, rng);
    std::vector<double> by_size(static_cast<std::size_t>(n - 1));
    for (double& x : by_size) x = u(rng);
    const Value a = ruiz_value(v, RuizWeights::uniform(p, by_size));
    const Value c = ruiz_regular_value(v, by_size);
    CHECK(oracle::max_rel_dev(a.payoffs(), c.payoffs()) < 1e-9);
  }
}

TEST_CASE("additive games return their generator") {
  const PlayerSet p(4);
  const Value x(p, {0.5, -1.0, 2.0, 0.25});
  const Value r = ruiz_value(additive_game(x), RuizWeights(p, std::vector<double>(15, 1.0)));
  CHECK(oracle::max_rel_dev(r.payoffs(), x.payoffs()) < 1e-12);
}

}  // TEST_SUITE
