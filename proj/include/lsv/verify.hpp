#pragma once

// Cross-checks between independent routes to the same values, run on a given
// game: closed forms against the generic KKT solver, least-squares values
// against direct enumeration, and the transformed gap problem against its
// direct formulation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsv/approx.hpp"
#include "lsv/game.hpp"

namespace lsv {

struct VerifyOptions {
  static constexpr int kMaxPlayers = 8;

  int trials = 10;
  std::uint64_t seed = 1;
  /// Relative tolerance for value identities.
  double tolerance = 1e-8;
  /// Absolute tolerance for x(N) = v(N).
  double efficiency_tolerance = 1e-10;
  /// Optional user weights, exercised through the engine and its PD gate.
  std::optional<WeightScheme> custom_weights;
  Tolerances solver;
};

struct VerifyCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool passed() const noexcept;
  /// Names of the checks that failed.
  std::vector<std::string> failures() const;
};

/// |a - b| / max(1, |b|), maximized over components.
double relative_deviation(std::span<const double> a, std::span<const double> b);

/// Throws InvalidArgument when the game has more than 8 players.
VerifyReport run_verification(const Game& v, const VerifyOptions& options = {});

}  // namespace lsv
