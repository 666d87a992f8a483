#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsv/approx.hpp"
#include "lsv/error.hpp"
#include "lsv/game_io.hpp"
#include "lsv/probabilistic.hpp"
#include "lsv/regular.hpp"
#include "lsv/ruiz.hpp"
#include "lsv/verify.hpp"

namespace lsv::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Printed numbers carry 12 significant digits; magnitudes below 1e-12 of the
// printed block's scale are shown as 0.
std::string format_number(double x, double scale) {
  if (std::abs(x) <= 1e-12 * std::max(1.0, scale)) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double rounded(double x, double scale) { return std::stod(format_number(x, scale)); }

double max_abs(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(x)) throw UsageError("not a number: '" + text + "'");
  return x;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item));
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

struct WeightSpec {
  enum class Kind { charnes, uniform, diagonal, matrix } kind = Kind::charnes;
  std::vector<double> numbers;
  std::string path;
};

// charnes | uniform:a1,...,an | diagonal:@file | matrix:@file
WeightSpec parse_weight_spec(const std::string& text) {
  WeightSpec spec;
  if (text == "charnes") return spec;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("unknown weight specification '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "uniform") {
    spec.kind = WeightSpec::Kind::uniform;
    spec.numbers = parse_list(arg);
    return spec;
  }
  if (kind == "diagonal" || kind == "matrix") {
    if (arg.size() < 2 || arg.front() != '@') {
      throw UsageError(kind + " weights take a file: " + kind + ":@path");
    }
    spec.kind = kind == "diagonal" ? WeightSpec::Kind::diagonal : WeightSpec::Kind::matrix;
    spec.path = arg.substr(1);
    return spec;
  }
  throw UsageError("unknown weight specification '" + text + "'");
}

WeightScheme build_weights(const WeightSpec& spec, const PlayerSet& players) {
  switch (spec.kind) {
    case WeightSpec::Kind::charnes:
      if (players.size() < 2) throw UsageError("charnes weights need at least two players");
      return WeightScheme::uniform(players, charnes_weights(players));
    case WeightSpec::Kind::uniform:
      if (spec.numbers.size() != static_cast<std::size_t>(players.size())) {
        throw UsageError("uniform weights need " + std::to_string(players.size()) +
                         " entries (one per coalition size), got " +
                         std::to_string(spec.numbers.size()));
      }
      return WeightScheme::uniform(players, spec.numbers);
    case WeightSpec::Kind::diagonal:
      return WeightScheme::diagonal(players, parse_diagonal_weights(read_file(spec.path), players));
    case WeightSpec::Kind::matrix:
      if (players.size() > WeightScheme::kMaxFullMatrixPlayers) {
        throw UsageError("full weight matrices are limited to " +
                         std::to_string(WeightScheme::kMaxFullMatrixPlayers) + " players");
      }
      return WeightScheme::full(players, parse_weight_matrix(read_file(spec.path), players));
  }
  throw UsageError("unknown weight specification");
}

struct SolveOptions {
  std::string method = "shapley";
  std::optional<std::string> weights;
  bool efficiency = false;
  bool sum_preserving = false;
  bool unconstrained = false;
  int k_additive = 1;
  std::optional<std::string> profile;
  bool json = false;
  std::optional<double> tol;
  std::string game_path;
};

Tolerances tolerances(const std::optional<double>& tol) {
  Tolerances t;
  if (tol) {
    if (!(*tol > 0.0)) throw UsageError("--tol must be positive");
    t.residual = *tol;
  }
  return t;
}

LinearConstraintMap build_constraints(const SolveOptions& o, const SubspaceBasis& basis) {
  if (o.unconstrained && (o.efficiency || o.sum_preserving)) {
    throw UsageError("--unconstrained cannot be combined with other constraint flags");
  }
  if (o.unconstrained) return LinearConstraintMap::none(basis);
  LinearConstraintMap c = LinearConstraintMap::none(basis);
  // efficiency is the default when no constraint flag is given
  if (o.efficiency || !o.sum_preserving) c = c + efficiency_constraint(basis);
  if (o.sum_preserving) c = c + sum_preservation_constraint(basis);
  return c;
}

void print_value(std::ostream& out, const Value& x, const std::string& method, bool json) {
  const double scale = max_abs(x.payoffs());
  if (json) {
    ordered_json j;
    j["players"] = x.players().size();
    j["method"] = method;
    ordered_json arr = ordered_json::array();
    for (double p : x.payoffs()) arr.push_back(rounded(p, scale));
    j["value"] = std::move(arr);
    out << j.dump() << "\n";
    return;
  }
  out << "player value\n";
  for (int i = 1; i <= x.players().size(); ++i) {
    out << i << ' ' << format_number(x.payoff(i), scale) << "\n";
  }
}

void print_game_table(std::ostream& out, const Game& g, const char* header) {
  const double scale = max_abs(g.table());
  out << header << "\n";
  for (Mask m = 1; m <= g.players().grand(); ++m) {
    out << Coalition::from_mask(m, g.players()).key() << ' ' << format_number(g(m), scale) << "\n";
  }
}

Game load_game(const std::string& path) { return parse_game(read_file(path)); }

int cmd_value(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const Game v = load_game(o.game_path);
  const PlayerSet& players = v.players();
  const Tolerances tol = tolerances(o.tol);

  if (o.method != "lsq" && o.k_additive != 1) {
    throw UsageError("--k-additive applies to --method lsq only");
  }
  if ((o.method == "shapley" || o.method == "banzhaf" || o.method == "semivalue") && o.weights) {
    throw UsageError("--weights does not apply to --method " + o.method);
  }
  if (o.method != "semivalue" && o.profile) throw UsageError("--profile needs --method semivalue");

  if (o.method == "shapley") {
    print_value(out, shapley_value(v), o.method, o.json);
  } else if (o.method == "banzhaf") {
    print_value(out, banzhaf_value(v), o.method, o.json);
  } else if (o.method == "semivalue") {
    if (!o.profile) throw UsageError("--method semivalue needs --profile w1,...,wn");
    std::vector<double> w = parse_list(*o.profile);
    if (w.size() != static_cast<std::size_t>(players.size())) {
      throw UsageError("--profile needs one weight per coalition size");
    }
    print_value(out, probabilistic_value(v, SizeProfile::from_weights(players, std::move(w))),
                o.method, o.json);
  } else if (o.method == "lsq") {
    const WeightScheme w = build_weights(parse_weight_spec(o.weights.value_or("charnes")), players);
    const SubspaceBasis basis = SubspaceBasis::k_additive(players, o.k_additive);
    const ApproximationResult r = solve_approximation(v, w, basis, build_constraints(o, basis), {}, tol);
    print_value(out, r.value, o.method, o.json);
  } else if (o.method == "regular") {
    if (o.unconstrained || o.sum_preserving) {
      throw UsageError("--method regular solves the efficient problem only");
    }
    const WeightSpec spec = parse_weight_spec(o.weights.value_or("charnes"));
    std::vector<double> alpha;
    if (spec.kind == WeightSpec::Kind::charnes) {
      if (players.size() < 2) throw UsageError("charnes weights need at least two players");
      alpha = charnes_weights(players);
    } else if (spec.kind == WeightSpec::Kind::uniform) {
      alpha = spec.numbers;
      if (alpha.size() != static_cast<std::size_t>(players.size())) {
        throw UsageError("uniform weights need one entry per coalition size");
      }
    } else {
      throw UsageError("--method regular needs charnes or uniform weights");
    }
    const RegularForm form = uniform_pq(alpha, players);
    if (form.q == form.p) {
      throw NumericalError("q == p: the closed form is undefined for these weights");
    }
    const RegularValueResult r = efficient_regular_value(v, alpha);
    if (!r.certified_optimal) {
      err << "warning: stationary but not certified optimal (form is not positive definite)\n";
    }
    print_value(out, r.value, o.method, o.json);
  } else if (o.method == "ruiz") {
    if (players.size() < 2) throw UsageError("--method ruiz needs at least two players");
    if (o.unconstrained || o.sum_preserving) {
      throw UsageError("--method ruiz solves the efficient problem only");
    }
    std::optional<RuizWeights> m;
    if (!o.weights) {
      m = RuizWeights::uniform(players, std::vector<double>(static_cast<std::size_t>(players.size() - 1), 1.0));
    } else {
      const WeightSpec spec = parse_weight_spec(*o.weights);
      if (spec.kind == WeightSpec::Kind::uniform) {
        if (spec.numbers.size() != static_cast<std::size_t>(players.size() - 1)) {
          throw UsageError("ruiz uniform weights need one entry per size 1..n-1");
        }
        for (double x : spec.numbers)
          if (!(x > 0.0)) throw UsageError("ruiz weights must be positive");
        m = RuizWeights::uniform(players, spec.numbers);
      } else if (spec.kind == WeightSpec::Kind::diagonal) {
        m = RuizWeights(players, parse_diagonal_weights(read_file(spec.path), players));
      } else {
        throw UsageError("--method ruiz takes uniform:m1,...,m(n-1) or diagonal:@file weights");
      }
    }
    print_value(out, ruiz_value(v, *m, tol), o.method, o.json);
  } else {
    throw UsageError("unknown method '" + o.method + "'");
  }
  return kOk;
}

int cmd_approx(const SolveOptions& o, std::ostream& out) {
  const Game v = load_game(o.game_path);
  const PlayerSet& players = v.players();
  const WeightScheme w = build_weights(parse_weight_spec(o.weights.value_or("charnes")), players);
  const SubspaceBasis basis = SubspaceBasis::k_additive(players, o.k_additive);
  const ApproximationResult r =
      solve_approximation(v, w, basis, build_constraints(o, basis), {}, tolerances(o.tol));
  const std::vector<Mask>& masks = *basis.unanimity_masks();

  const double coef_scale = max_abs(r.x_star);
  const double game_scale = max_abs(r.u_star.table());
  if (o.json) {
    ordered_json j;
    j["players"] = players.size();
    j["method"] = "approx";
    ordered_json value = ordered_json::array();
    const double vscale = max_abs(r.value.payoffs());
    for (double p : r.value.payoffs()) value.push_back(rounded(p, vscale));
    j["value"] = std::move(value);
    ordered_json coefs = ordered_json::object();
    for (std::size_t i = 0; i < masks.size(); ++i) {
      coefs[Coalition::from_mask(masks[i], players).key()] = rounded(r.x_star[i], coef_scale);
    }
    j["coefficients"] = std::move(coefs);
    ordered_json approx = ordered_json::object();
    for (Mask m = 1; m <= players.grand(); ++m) {
      approx[Coalition::from_mask(m, players).key()] = rounded(r.u_star(m), game_scale);
    }
    j["approximation"] = std::move(approx);
    out << j.dump() << "\n";
    return kOk;
  }
  out << "basis coefficient\n";
  for (std::size_t i = 0; i < masks.size(); ++i) {
    out << Coalition::from_mask(masks[i], players).key() << ' '
        << format_number(r.x_star[i], coef_scale) << "\n";
  }
  out << "\n";
  print_game_table(out, r.u_star, "coalition approximation");
  out << "\n";
  print_value(out, r.value, "approx", false);
  return kOk;
}

int cmd_check_pd(const std::string& weights, int n, int k, std::ostream& out) {
  const PlayerSet players(n);
  const WeightSpec spec = parse_weight_spec(weights);
  if (k == 1 && spec.kind != WeightSpec::Kind::diagonal && spec.kind != WeightSpec::Kind::matrix) {
    const WeightScheme w = build_weights(spec, players);
    const auto& alpha = std::get<WeightScheme::UniformBySize>(w.scheme()).alpha;
    const RegularForm form = uniform_pq(alpha, players);
    const double scale = std::max(std::abs(form.p), std::abs(form.q));
    out << "PD: " << (spectral_pd(form) ? "true" : "false") << " (p=" << format_number(form.p, scale)
        << ", q=" << format_number(form.q, scale) << ")\n";
    return kOk;
  }
  const WeightScheme w = build_weights(spec, players);
  const CholeskyResult chol = cholesky_pd_check(build_gram(w, SubspaceBasis::k_additive(players, k)));
  if (chol.positive_definite) {
    out << "PD: true\n";
  } else {
    out << "PD: false (failing pivot " << chol.failing_pivot << ")\n";
  }
  return kOk;
}

int cmd_transform(const std::string& which, const std::string& path, bool json, std::ostream& out) {
  const Game v = load_game(path);
  Game result(v.players());
  if (which == "dual") {
    result = dual_game(v);
  } else {
    result = Game(v.players(), mobius_transform(v).table);
  }
  if (json) {
    out << serialize_game(result);
  } else {
    print_game_table(out, result, which == "dual" ? "coalition dual" : "coalition mobius");
  }
  return kOk;
}

int cmd_verify(const std::string& path, int trials, std::uint64_t seed,
               const std::optional<std::string>& weights, const std::optional<double>& tol,
               std::ostream& out, std::ostream& err) {
  const Game v = load_game(path);
  VerifyOptions opts;
  if (trials < 1) throw UsageError("--trials must be positive");
  opts.trials = trials;
  opts.seed = seed;
  if (tol) {
    if (!(*tol > 0.0)) throw UsageError("--tol must be positive");
    opts.tolerance = *tol;
  }
  if (weights) opts.custom_weights = build_weights(parse_weight_spec(*weights), v.players());
  const VerifyReport report = run_verification(v, opts);
  for (const VerifyCheck& c : report.checks) {
    char dev[32];
    char bound[32];
    std::snprintf(dev, sizeof dev, "%.3g", c.max_deviation);
    std::snprintf(bound, sizeof bound, "%.3g", c.tolerance);
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " max_dev=" << dev << " tol=" << bound;
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << "\n";
  }
  if (report.passed()) {
    out << "verify: all checks passed\n";
    return kOk;
  }
  std::string names;
  for (const std::string& f : report.failures()) names += (names.empty() ? "" : ", ") + f;
  err << "error: identity violated: " << names << "\n";
  return kNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Least-squares and probabilistic values of cooperative TU games", "lsv"};
  app.require_subcommand(1);

  SolveOptions value_opts;
  auto* value = app.add_subcommand("value", "Compute a value of the game");
  value->add_option("--method", value_opts.method, "shapley|banzhaf|semivalue|lsq|regular|ruiz")
      ->check(CLI::IsMember({"shapley", "banzhaf", "semivalue", "lsq", "regular", "ruiz"}));
  value->add_option("--weights", value_opts.weights,
                    "charnes | uniform:a1,...,an | diagonal:@file | matrix:@file");
  value->add_flag("--efficiency", value_opts.efficiency, "Constrain u(N) = v(N) (default)");
  value->add_flag("--sum-preserving", value_opts.sum_preserving, "Constrain sum_S u(S) = sum_S v(S)");
  value->add_flag("--unconstrained", value_opts.unconstrained, "No constraints");
  value->add_option("--k-additive", value_opts.k_additive, "Approximating subspace degree")
      ->check(CLI::PositiveNumber);
  value->add_option("--profile", value_opts.profile, "Semivalue weights w1,...,wn by size");
  value->add_flag("--json", value_opts.json, "Emit JSON");
  value->add_option("--tol", value_opts.tol, "Solver residual tolerance");
  value->add_option("game", value_opts.game_path, "Game file (JSON)")->required();

  SolveOptions approx_opts;
  approx_opts.method = "lsq";
  auto* approx = app.add_subcommand("approx", "Least-squares approximation of the game");
  approx->add_option("--weights", approx_opts.weights,
                     "charnes | uniform:a1,...,an | diagonal:@file | matrix:@file");
  approx->add_flag("--efficiency", approx_opts.efficiency, "Constrain u(N) = v(N) (default)");
  approx->add_flag("--sum-preserving", approx_opts.sum_preserving, "Constrain sum_S u(S) = sum_S v(S)");
  approx->add_flag("--unconstrained", approx_opts.unconstrained, "No constraints");
  approx->add_option("--k-additive", approx_opts.k_additive, "Approximating subspace degree")
      ->check(CLI::PositiveNumber);
  approx->add_flag("--json", approx_opts.json, "Emit JSON");
  approx->add_option("--tol", approx_opts.tol, "Solver residual tolerance");
  approx->add_option("game", approx_opts.game_path, "Game file (JSON)")->required();

  std::string pd_weights;
  int pd_n = 0;
  int pd_k = 1;
  auto* check_pd = app.add_subcommand("check-pd", "Test whether weights induce a positive definite form");
  check_pd->add_option("--weights", pd_weights, "Weight specification")->required();
  check_pd->add_option("--n", pd_n, "Number of players")->required();
  check_pd->add_option("--k-additive", pd_k, "Subspace degree")->check(CLI::PositiveNumber);

  std::string transform_path;
  bool transform_json = false;
  auto* transform = app.add_subcommand("transform", "Game transforms");
  transform->require_subcommand(1);
  auto* mobius = transform->add_subcommand("mobius", "Moebius coefficients");
  auto* dual = transform->add_subcommand("dual", "Dual game");
  for (auto* sub : {mobius, dual}) {
    sub->add_flag("--json", transform_json, "Emit JSON");
    sub->add_option("game", transform_path, "Game file (JSON)")->required();
  }

  std::string verify_path;
  int verify_trials = 10;
  std::uint64_t verify_seed = 1;
  std::optional<std::string> verify_weights;
  std::optional<double> verify_tol;
  auto* verify = app.add_subcommand("verify", "Cross-check the value identities on a game");
  verify->add_option("--trials", verify_trials, "Random trials per check");
  verify->add_option("--seed", verify_seed, "Random seed");
  verify->add_option("--weights", verify_weights, "Custom weights to run through the PD gate");
  verify->add_option("--tol", verify_tol, "Relative tolerance for the identities");
  verify->add_option("game", verify_path, "Game file (JSON)")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (value->parsed()) return cmd_value(value_opts, out, err);
    if (approx->parsed()) return cmd_approx(approx_opts, out);
    if (check_pd->parsed()) return cmd_check_pd(pd_weights, pd_n, pd_k, out);
    if (transform->parsed()) {
      return cmd_transform(mobius->parsed() ? "mobius" : "dual", transform_path, transform_json, out);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_path, verify_trials, verify_seed, verify_weights, verify_tol, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace lsv::cli
