// Copyright 2026 The colog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COLOG_GAME_H_
#define COLOG_GAME_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "colog/formula.h"
#include "colog/interpretation.h"

namespace colog {

enum class Player { kMachine, kEnvironment };

inline Player Adversary(Player p) {
  return p == Player::kMachine ? Player::kEnvironment : Player::kMachine;
}
const char* PlayerName(Player p);  // "machine" / "environment"
Player PlayerFromName(const std::string& name);

// A move addressed to a surface choice occurrence: "2.2." + 7 is "2.2.7".
struct MoveToken {
  OccurrenceSpec spec;
  Constant payload = 0;

  std::string ToString() const;
  // Nullopt for anything that is not digits separated by dots.
  static std::optional<MoveToken> Parse(const std::string& text);

  friend bool operator==(const MoveToken&, const MoveToken&) = default;
  friend auto operator<=>(const MoveToken&, const MoveToken&) = default;
};

// Labeled move. The move is kept as raw text so that runs may contain
// strings that are not moves of any game at all.
struct LabMove {
  Player player;
  std::string move;

  static LabMove Of(Player player, const MoveToken& token) {
    return {player, token.ToString()};
  }
  // "+2.2.7" for machine moves, "-2.2.7" for environment moves.
  std::string ToString() const;
  // Inverse of ToString; throws Error without a leading '+' or '-'.
  static LabMove Parse(const std::string& text);
  friend bool operator==(const LabMove&, const LabMove&) = default;
};

using Run = std::vector<LabMove>;

nlohmann::json RunToJson(const Run& run);
Run RunFromJson(const nlohmann::json& j);

struct GameState {
  Formula formula;
  std::shared_ptr<const Interpretation> interpretation;
  Valuation valuation;
};

GameState MakeState(Formula formula, Interpretation interpretation,
                    Valuation valuation = {});

// The player entitled to move at a surface choice occurrence.
Player OwnerOf(const ChoiceOccurrence& occurrence);

// Legal moves at the formula level; quantifier payloads range over
// 0..domain-1. Ordered by spec, then payload.
std::vector<MoveToken> LegalMoves(const Formula& f, Player who,
                                  Constant domain);
std::vector<MoveToken> LegalMoves(const GameState& s, Player who);

// Parses and validates `move` for `who`; nullopt when illegal.
std::optional<MoveToken> LegalMove(const Formula& f, Player who,
                                   const std::string& move, Constant domain);

// Rewrites f by a legal move (the chosen operand or the instantiated body
// replaces the addressed occurrence). Throws Error if the move is illegal.
Formula BringDown(const Formula& f, Player who, const MoveToken& move,
                  Constant domain);
GameState ApplyMove(const GameState& s, const LabMove& m);

// Classical truth of an elementary formula, blind quantifiers ranging over
// the domain. Throws Error on constants outside the domain.
bool Truth(const Formula& f, const Interpretation& interp, const Valuation& e);

Player WnEmpty(const GameState& s);

struct Adjudication {
  Player winner;
  // Index of the first illegal move, if any.
  std::optional<std::size_t> illegal_at;
  // State reached by the legal prefix.
  GameState final_state;
};

Adjudication Adjudicate(const GameState& start, const Run& run);
Player WnRun(const GameState& start, const Run& run);

// Backward induction over the finite game tree, memoized per instance.
class WinnabilityOracle {
 public:
  explicit WinnabilityOracle(std::shared_ptr<const Interpretation> interp);

  bool Winnable(const Formula& f, const Valuation& e);
  bool Winnable(const GameState& s) { return Winnable(s.formula, s.valuation); }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::shared_ptr<const Interpretation> interp_;
  std::unordered_map<std::string, bool> memo_;
};

bool Winnable(const GameState& s);

// Every reordering of `run` that keeps each player's moves in order and
// never moves a `who` move ahead of an adversary move that preceded it.
// The callback returns false to stop early.
void ForEachDelay(const Run& run, Player who,
                  const std::function<bool(const Run&)>& visit);
std::vector<Run> Delays(const Run& run, Player who);

}  // namespace colog

#endif  // COLOG_GAME_H_
