#pragma once

// JSON file formats.
//
// Game file:
//   {"n": 3, "values": {"1": 0, "2": 0, "3": 0, "1,2": 1, "1,3": 0, "2,3": 0, "1,2,3": 1}}
// Keys list strictly increasing 1-based members separated by commas. All
// 2^n - 1 nonempty coalitions must appear exactly once; the empty coalition
// ("" or "0") is rejected.
//
// Diagonal weight file: a JSON object with the same keys, mapping every
// nonempty coalition to a weight.
// Full weight file: a (2^n-1) x (2^n-1) array of arrays whose rows and
// columns are ordered by coalition mask (bit i-1 stands for player i).

#include <string>
#include <string_view>
#include <vector>

#include "lsv/game.hpp"
#include "lsv/linalg.hpp"

namespace lsv {

/// Throws InputError on a malformed key.
Coalition parse_coalition_key(std::string_view key, const PlayerSet& players);

/// Throws InputError with a message naming the problem (for a missing
/// coalition: "missing coalition <key>", first missing in mask order).
Game parse_game(std::string_view text);

/// Canonical game file, coalitions in mask order.
std::string serialize_game(const Game& v);

std::vector<double> parse_diagonal_weights(std::string_view text, const PlayerSet& players);
Matrix parse_weight_matrix(std::string_view text, const PlayerSet& players);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace lsv
