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

#include "colog/game.h"

#include <utility>

#include "colog/parser.h"

namespace colog {

const char* PlayerName(Player p) {
  return p == Player::kMachine ? "machine" : "environment";
}

Player PlayerFromName(const std::string& name) {
  if (name == "machine" || name == "top") return Player::kMachine;
  if (name == "environment" || name == "bot") return Player::kEnvironment;
  throw Error("unknown player: " + name);
}

std::string MoveToken::ToString() const {
  return spec.ToString() + std::to_string(payload);
}

std::optional<MoveToken> MoveToken::Parse(const std::string& text) {
  std::vector<Constant> parts;
  std::size_t i = 0;
  for (;;) {
    std::size_t j = i;
    Constant value = 0;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') {
      Constant next = value * 10 + static_cast<Constant>(text[j] - '0');
      if (next / 10 != value) return std::nullopt;
      value = next;
      ++j;
    }
    if (j == i) return std::nullopt;
    parts.push_back(value);
    if (j == text.size()) break;
    if (text[j] != '.') return std::nullopt;
    i = j + 1;
  }
  MoveToken token;
  token.payload = parts.back();
  std::vector<int> indices;
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    if (parts[k] < 1 || parts[k] > 1000000) return std::nullopt;
    indices.push_back(static_cast<int>(parts[k]));
  }
  token.spec = OccurrenceSpec(std::move(indices));
  return token;
}

std::string LabMove::ToString() const {
  return (player == Player::kMachine ? "+" : "-") + move;
}

LabMove LabMove::Parse(const std::string& text) {
  if (text.empty() || (text[0] != '+' && text[0] != '-')) {
    throw Error("labeled move must start with '+' or '-': " + text);
  }
  return {text[0] == '+' ? Player::kMachine : Player::kEnvironment,
          text.substr(1)};
}

nlohmann::json RunToJson(const Run& run) {
  nlohmann::json out = nlohmann::json::array();
  for (const LabMove& m : run) {
    nlohmann::json j = {{"player", PlayerName(m.player)}, {"move", m.move}};
    if (auto token = MoveToken::Parse(m.move)) {
      j["spec"] = token->spec.ToString();
      j["payload"] = token->payload;
    }
    out.push_back(std::move(j));
  }
  return out;
}

Run RunFromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("run must be an array");
  Run run;
  for (const auto& m : j) {
    if (!m.is_object() || !m.contains("player")) {
      throw Error("run entries need a \"player\" field");
    }
    Player p = PlayerFromName(m["player"].get<std::string>());
    if (m.contains("move")) {
      run.push_back({p, m["move"].get<std::string>()});
    } else if (m.contains("spec") && m.contains("payload")) {
      MoveToken t{OccurrenceSpec::Parse(m["spec"].get<std::string>()),
                  m["payload"].get<Constant>()};
      run.push_back(LabMove::Of(p, t));
    } else {
      throw Error("run entries need \"move\" or \"spec\" and \"payload\"");
    }
  }
  return run;
}

GameState MakeState(Formula formula, Interpretation interpretation,
                    Valuation valuation) {
  return {std::move(formula),
          std::make_shared<const Interpretation>(std::move(interpretation)),
          std::move(valuation)};
}

Player OwnerOf(const ChoiceOccurrence& occurrence) {
  bool universal = IsChoiceUniversalType(occurrence.kind);
  bool positive = occurrence.polarity == Polarity::kPositive;
  return universal == positive ? Player::kEnvironment : Player::kMachine;
}

std::vector<MoveToken> LegalMoves(const Formula& f, Player who,
                                  Constant domain) {
  std::vector<MoveToken> out;
  for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
    if (OwnerOf(occ) != who) continue;
    if (IsQuantifier(occ.kind)) {
      for (Constant c = 0; c < domain; ++c) out.push_back({occ.spec, c});
    } else {
      for (std::size_t i = 1; i <= occ.subformula.arity(); ++i) {
        out.push_back({occ.spec, i});
      }
    }
  }
  return out;
}

std::vector<MoveToken> LegalMoves(const GameState& s, Player who) {
  return LegalMoves(s.formula, who, s.interpretation->domain());
}

std::optional<MoveToken> LegalMove(const Formula& f, Player who,
                                   const std::string& move, Constant domain) {
  auto token = MoveToken::Parse(move);
  if (!token) return std::nullopt;
  auto occ = ResolveChoice(f, token->spec);
  if (!occ || OwnerOf(*occ) != who) return std::nullopt;
  if (IsQuantifier(occ->kind)) {
    if (token->payload >= domain) return std::nullopt;
  } else if (token->payload < 1 || token->payload > occ->subformula.arity()) {
    return std::nullopt;
  }
  return token;
}

Formula BringDown(const Formula& f, Player who, const MoveToken& move,
                  Constant domain) {
  if (!LegalMove(f, who, move.ToString(), domain)) {
    throw Error(std::string("illegal ") + PlayerName(who) + " move " +
                move.ToString() + " in " + Print(f));
  }
  auto occ = ResolveChoice(f, move.spec);
  const Formula& g = occ->subformula;
  Formula replacement =
      IsQuantifier(g.op()) ? Instantiate(g, Term::Const(move.payload))
                           : g.child(static_cast<std::size_t>(move.payload - 1));
  return ReplaceAtPath(f, occ->path, std::move(replacement));
}

GameState ApplyMove(const GameState& s, const LabMove& m) {
  auto token = MoveToken::Parse(m.move);
  if (!token) throw Error("not a move: " + m.move);
  GameState next = s;
  next.formula =
      BringDown(s.formula, m.player, *token, s.interpretation->domain());
  return next;
}

namespace {

bool TruthRec(const Formula& f, const Interpretation& interp, Valuation& e) {
  switch (f.op()) {
    case Op::kTop: return true;
    case Op::kBot: return false;
    case Op::kAtom: {
      std::vector<Constant> args;
      for (const Term& t : f.args()) {
        Constant c = ValueOf(e, t);
        if (c >= interp.domain()) {
          throw Error("constant " + std::to_string(c) +
                      " outside domain of size " +
                      std::to_string(interp.domain()));
        }
        args.push_back(c);
      }
      return interp.Holds(f.letter(), args);
    }
    case Op::kNot: return !TruthRec(f.body(), interp, e);
    case Op::kAnd:
      for (const Formula& c : f.children()) {
        if (!TruthRec(c, interp, e)) return false;
      }
      return true;
    case Op::kOr:
      for (const Formula& c : f.children()) {
        if (TruthRec(c, interp, e)) return true;
      }
      return false;
    case Op::kImplies:
      return !TruthRec(f.child(0), interp, e) || TruthRec(f.child(1), interp, e);
    case Op::kForall:
    case Op::kExists: {
      bool universal = f.op() == Op::kForall;
      std::optional<Constant> saved;
      if (auto it = e.find(f.variable()); it != e.end()) saved = it->second;
      bool result = universal;
      for (Constant c = 0; c < interp.domain(); ++c) {
        e[f.variable()] = c;
        if (TruthRec(f.body(), interp, e) != universal) {
          result = !universal;
          break;
        }
      }
      if (saved) {
        e[f.variable()] = *saved;
      } else {
        e.erase(f.variable());
      }
      return result;
    }
    default:
      throw Error("truth of a non-elementary formula");
  }
}

}  // namespace

bool Truth(const Formula& f, const Interpretation& interp, const Valuation& e) {
  Valuation scratch = e;
  return TruthRec(f, interp, scratch);
}

Player WnEmpty(const GameState& s) {
  return Truth(Elementarize(s.formula), *s.interpretation, s.valuation)
             ? Player::kMachine
             : Player::kEnvironment;
}

Adjudication Adjudicate(const GameState& start, const Run& run) {
  GameState state = start;
  Constant domain = start.interpretation->domain();
  for (std::size_t i = 0; i < run.size(); ++i) {
    const LabMove& m = run[i];
    auto token = LegalMove(state.formula, m.player, m.move, domain);
    if (!token) return {Adversary(m.player), i, state};
    state.formula = BringDown(state.formula, m.player, *token, domain);
  }
  Player winner = WnEmpty(state);
  return {winner, std::nullopt, std::move(state)};
}

Player WnRun(const GameState& start, const Run& run) {
  return Adjudicate(start, run).winner;
}

WinnabilityOracle::WinnabilityOracle(
    std::shared_ptr<const Interpretation> interp)
    : interp_(std::move(interp)) {}

bool WinnabilityOracle::Winnable(const Formula& f, const Valuation& e) {
  std::string key = Print(f);
  for (const std::string& v : FreeVariables(f)) {
    key += "|" + v + "=" + std::to_string(ValueOf(e, Term::Variable(v)));
  }
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Constant d = interp_->domain();
  bool result = false;
  for (const MoveToken& m : LegalMoves(f, Player::kMachine, d)) {
    if (Winnable(BringDown(f, Player::kMachine, m, d), e)) {
      result = true;
      break;
    }
  }
  if (!result && Truth(Elementarize(f), *interp_, e)) {
    result = true;
    for (const MoveToken& m : LegalMoves(f, Player::kEnvironment, d)) {
      if (!Winnable(BringDown(f, Player::kEnvironment, m, d), e)) {
        result = false;
        break;
      }
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

bool Winnable(const GameState& s) {
  WinnabilityOracle oracle(s.interpretation);
  return oracle.Winnable(s);
}

namespace {

// Returns false when the visitor asked to stop.
bool DelayRec(const std::vector<const LabMove*>& own,
              const std::vector<const LabMove*>& other,
              const std::vector<std::size_t>& before, std::size_t i,
              std::size_t j, Run& prefix,
              const std::function<bool(const Run&)>& visit) {
  if (i == own.size() && j == other.size()) return visit(prefix);
  if (j < other.size()) {
    prefix.push_back(*other[j]);
    bool go = DelayRec(own, other, before, i, j + 1, prefix, visit);
    prefix.pop_back();
    if (!go) return false;
  }
  if (i < own.size() && j >= before[i]) {
    prefix.push_back(*own[i]);
    bool go = DelayRec(own, other, before, i + 1, j, prefix, visit);
    prefix.pop_back();
    if (!go) return false;
  }
  return true;
}

}  // namespace

void ForEachDelay(const Run& run, Player who,
                  const std::function<bool(const Run&)>& visit) {
  std::vector<const LabMove*> own, other;
  std::vector<std::size_t> before;
  for (const LabMove& m : run) {
    if (m.player == who) {
      own.push_back(&m);
      before.push_back(other.size());
    } else {
      other.push_back(&m);
    }
  }
  Run prefix;
  DelayRec(own, other, before, 0, 0, prefix, visit);
}

std::vector<Run> Delays(const Run& run, Player who) {
  std::vector<Run> out;
  ForEachDelay(run, who, [&](const Run& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

}  // namespace colog
