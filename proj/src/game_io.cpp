#include "lsv/game_io.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lsv/error.hpp"

namespace lsv {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Parses JSON and rejects duplicate object keys, which nlohmann would
// otherwise resolve silently (last one wins).
json parse_json_strict(std::string_view text) {
  std::vector<std::set<std::string>> seen;
  std::optional<std::string> duplicate;
  json::parser_callback_t cb = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        break;
      case json::parse_event_t::object_end:
        seen.pop_back();
        break;
      case json::parse_event_t::key: {
        const std::string key = parsed.get<std::string>();
        if (!seen.back().insert(key).second && !duplicate) duplicate = key;
        break;
      }
      default:
        break;
    }
    return true;
  };
  json j;
  try {
    j = json::parse(text.begin(), text.end(), cb);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (duplicate) throw InputError("duplicate coalition " + *duplicate);
  return j;
}

// Reads a coalition-keyed object into a table indexed by mask - 1.
std::vector<double> read_coalition_map(const json& obj, const PlayerSet& players,
                                       const char* what) {
  if (!obj.is_object()) throw InputError(std::string(what) + " must be a JSON object");
  std::vector<std::optional<double>> slots(players.coalition_count());
  for (const auto& [key, val] : obj.items()) {
    const Coalition c = parse_coalition_key(key, players);
    if (!val.is_number()) throw InputError("value for coalition " + key + " is not a number");
    const double x = val.get<double>();
    if (!std::isfinite(x)) throw InputError("value for coalition " + key + " is not finite");
    slots[c.index()] = x;
  }
  std::vector<double> out(slots.size());
  for (Mask m = 1; m <= players.grand(); ++m) {
    if (!slots[m - 1]) {
      throw InputError("missing coalition " + Coalition::from_mask(m, players).key());
    }
    out[m - 1] = *slots[m - 1];
  }
  return out;
}

}  // namespace

Coalition parse_coalition_key(std::string_view key, const PlayerSet& players) {
  if (key.empty() || key == "0") throw InputError("empty coalition key is not allowed");
  std::vector<int> members;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const std::size_t comma = key.find(',', pos);
    const std::string_view tok =
        key.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (tok.empty() || tok.size() > 3 || tok.find_first_not_of("0123456789") != std::string_view::npos ||
        (tok.size() > 1 && tok.front() == '0')) {
      throw InputError("malformed coalition key \"" + std::string(key) + "\"");
    }
    const int idx = std::stoi(std::string(tok));
    if (idx < 1 || idx > players.size()) {
      throw InputError("coalition key \"" + std::string(key) + "\": player " +
                       std::to_string(idx) + " out of range 1.." + std::to_string(players.size()));
    }
    if (!members.empty() && idx <= members.back()) {
      throw InputError("coalition key \"" + std::string(key) +
                       "\" must list players in strictly increasing order");
    }
    members.push_back(idx);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Coalition::from_members(members, players);
}

Game parse_game(std::string_view text) {
  const json j = parse_json_strict(text);
  if (!j.is_object()) throw InputError("game file must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw InputError("game file needs an integer field \"n\"");
  }
  const auto n = j["n"].get<long long>();
  if (n < 1) throw InputError("n must be at least 1");
  if (n > PlayerSet::kMaxPlayers) {
    throw InputError("n = " + std::to_string(n) + " exceeds the limit of " +
                     std::to_string(PlayerSet::kMaxPlayers) + " players");
  }
  if (!j.contains("values")) throw InputError("game file needs a \"values\" object");
  const PlayerSet players(static_cast<int>(n));
  return Game(players, read_coalition_map(j["values"], players, "\"values\""));
}

std::string serialize_game(const Game& v) {
  ordered_json values = ordered_json::object();
  for (Mask m = 1; m <= v.players().grand(); ++m) {
    values[Coalition::from_mask(m, v.players()).key()] = v(m);
  }
  ordered_json j;
  j["n"] = v.n();
  j["values"] = std::move(values);
  return j.dump(2) + "\n";
}

std::vector<double> parse_diagonal_weights(std::string_view text, const PlayerSet& players) {
  return read_coalition_map(parse_json_strict(text), players, "diagonal weight file");
}

Matrix parse_weight_matrix(std::string_view text, const PlayerSet& players) {
  const json j = parse_json_strict(text);
  const std::size_t c = players.coalition_count();
  if (!j.is_array() || j.size() != c) {
    throw InputError("weight matrix must be an array of " + std::to_string(c) + " rows");
  }
  Matrix w(c, c);
  for (std::size_t r = 0; r < c; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != c) {
      throw InputError("weight matrix row " + std::to_string(r) + " must have " +
                       std::to_string(c) + " entries");
    }
    for (std::size_t col = 0; col < c; ++col) {
      if (!row[col].is_number()) throw InputError("weight matrix entries must be numbers");
      w(r, col) = row[col].get<double>();
    }
  }
  return w;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lsv
