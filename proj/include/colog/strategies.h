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

#ifndef COLOG_STRATEGIES_H_
#define COLOG_STRATEGIES_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "colog/calculus.h"
#include "colog/game.h"

namespace colog {

// Domain used for play that does not depend on an interpretation; tables
// are sparse, so only the constants actually played matter.
inline constexpr Constant kSymbolicDomain =
    std::numeric_limits<Constant>::max();

struct StepOutput {
  std::vector<std::string> moves;
  // True when the strategy grants permission: it will not move again until
  // it hears from the adversary.
  bool waiting = true;
};

class ReactiveStrategy {
 public:
  virtual ~ReactiveStrategy() = default;

  virtual Player role() const = 0;
  virtual std::string name() const = 0;
  // `incoming` holds the adversary's moves since the previous call.
  virtual StepOutput Step(std::span<const LabMove> incoming) = 0;
  virtual std::unique_ptr<ReactiveStrategy> Clone() const = 0;
};

// Current certificate formula and the constants attached to its free
// variables.
struct LoopRecords {
  Formula E = Formula::Top();
  Valuation f;
  int cursor = 0;
};

// Plays by a CL2 proof. At most one move per step.
class MachineLoop : public ReactiveStrategy {
 public:
  // Throws Error if the proof fails to check (unsettled stability is
  // tolerated).
  MachineLoop(std::shared_ptr<const Proof> proof, const Valuation& valuation);

  Player role() const override { return Player::kMachine; }
  std::string name() const override { return "proof"; }
  StepOutput Step(std::span<const LabMove> incoming) override;
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<MachineLoop>(*this);
  }

  const LoopRecords& records() const { return records_; }
  bool stuck() const { return stuck_; }

 private:
  const colog::Step& Current() const;
  void Enter(const Formula& premise);

  std::shared_ptr<const Proof> proof_;
  std::shared_ptr<const std::map<std::string, int>> index_;
  LoopRecords records_;
  std::deque<LabMove> pending_;
  bool stuck_ = false;
};

// Plays against the machine by a CL2° refutation, one move per step.
class EnvironmentLoop : public ReactiveStrategy {
 public:
  // Throws Error if the refutation fails to check.
  explicit EnvironmentLoop(std::shared_ptr<const Refutation> refutation);

  Player role() const override { return Player::kEnvironment; }
  std::string name() const override { return "refutation"; }
  StepOutput Step(std::span<const LabMove> incoming) override;
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<EnvironmentLoop>(*this);
  }

  // Free variables of the conclusion mapped to d0+1, d0+2, ... where d0 is
  // the largest constant of the conclusion (0 if none).
  const Valuation& valuation() const { return valuation_; }
  const LoopRecords& records() const { return records_; }
  bool stuck() const { return stuck_; }

 private:
  const colog::Step& Current() const;
  void Enter(const Formula& premise);
  std::set<Constant> ConstantsOfFE() const;
  void AssertDistinctive() const;

  std::shared_ptr<const Refutation> refutation_;
  std::shared_ptr<const std::map<std::string, int>> index_;
  Valuation valuation_;
  LoopRecords records_;
  std::deque<LabMove> pending_;
  bool stuck_ = false;
};

// Never moves.
class SilentStrategy : public ReactiveStrategy {
 public:
  explicit SilentStrategy(Player role) : role_(role) {}
  Player role() const override { return role_; }
  std::string name() const override { return "silent"; }
  StepOutput Step(std::span<const LabMove>) override { return {}; }
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<SilentStrategy>(*this);
  }

 private:
  Player role_;
};

// Emits the given moves, one per wake-up, then stays silent.
class ScriptedStrategy : public ReactiveStrategy {
 public:
  ScriptedStrategy(Player role, std::vector<std::string> moves)
      : role_(role), moves_(std::move(moves)) {}
  Player role() const override { return role_; }
  std::string name() const override { return "script"; }
  StepOutput Step(std::span<const LabMove> incoming) override;
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<ScriptedStrategy>(*this);
  }

 private:
  Player role_;
  std::vector<std::string> moves_;
  std::size_t next_ = 0;
};

// Base for heuristics that track the current position themselves.
class TrackingStrategy : public ReactiveStrategy {
 public:
  TrackingStrategy(Player role, Formula start, Constant domain)
      : role_(role), position_(std::move(start)), domain_(domain) {}
  Player role() const override { return role_; }
  const Formula& position() const { return position_; }

 protected:
  // Applies the adversary's legal moves; returns the ones applied.
  std::vector<LabMove> Absorb(std::span<const LabMove> incoming);
  StepOutput Emit(const MoveToken& move);

  Player role_;
  Formula position_;
  Constant domain_;
};

// Moves with probability 3/4 when it has a legal move; quantifier payloads
// are drawn from 0..max_constant.
class RandomStrategy : public TrackingStrategy {
 public:
  RandomStrategy(Player role, Formula start, std::uint32_t seed,
                 Constant max_constant);
  std::string name() const override;
  StepOutput Step(std::span<const LabMove> incoming) override;
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<RandomStrategy>(*this);
  }

 private:
  std::uint32_t seed_;
  Constant max_constant_;
  std::mt19937 rng_;
};

// Keeps the position winnable for its role according to an interpretation.
// Without one it plays against a fixed pseudo-random belief table over a
// small domain that grows with the constants in play.
class GreedyStrategy : public TrackingStrategy {
 public:
  GreedyStrategy(Player role, Formula start, Valuation valuation,
                 std::shared_ptr<const Interpretation> interpretation = nullptr);
  std::string name() const override { return "greedy"; }
  StepOutput Step(std::span<const LabMove> incoming) override;
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<GreedyStrategy>(*this);
  }

 private:
  std::shared_ptr<const Interpretation> Table() const;

  Valuation valuation_;
  std::shared_ptr<const Interpretation> interpretation_;
};

// The belief table: atoms hold by a hash of letter and arguments.
Interpretation BeliefInterpretation(const Formula& f, Constant domain);

// Answers each adversary move by repeating it, with the same sub-address
// and payload, in another top-level component where that is legal.
class CopycatStrategy : public TrackingStrategy {
 public:
  CopycatStrategy(Player role, Formula start);
  std::string name() const override { return "copycat"; }
  StepOutput Step(std::span<const LabMove> incoming) override;
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<CopycatStrategy>(*this);
  }

 private:
  std::deque<std::string> planned_;
};

struct MatchResult {
  Run run;
  Player winner = Player::kMachine;
  // False when the step cap ran out before both players went quiet.
  bool settled = true;
  std::optional<std::size_t> illegal_at;
  GameState final_state{Formula::Top(), nullptr, {}};
  std::vector<std::string> machine_moves;  // as emitted, in order
};

inline constexpr int kDefaultMaxSteps = 10000;

// Deterministic scheduler: the environment steps until it waits, then the
// machine steps once; play ends when a full round passes without moves,
// at the first illegal move, or after max_steps strategy steps.
MatchResult RunMatch(ReactiveStrategy& machine, ReactiveStrategy& environment,
                     const GameState& start, int max_steps = kDefaultMaxSteps);

struct CounterCertificate {
  Interpretation interpretation{1};
  Valuation valuation;
  Run run;
  std::string machine;
  Player winner = Player::kEnvironment;
  std::optional<std::size_t> illegal_at;
  // Final certificate formula and records of the environment's LOOP.
  LoopRecords records;
  // The run replayed under the interpretation is won by the environment.
  bool verified = false;

  nlohmann::json ToJson() const;
};

using MachineFactory = std::function<std::unique_ptr<ReactiveStrategy>(
    const Formula& f, const Valuation& valuation)>;

// Plays `machine` against the refutation's environment without an
// interpretation, then builds a table that falsifies the elementarization of
// the environment's final formula under its records.
CounterCertificate MakeCounterCertificate(
    std::shared_ptr<const Refutation> refutation,
    ReactiveStrategy& machine, int max_steps = kDefaultMaxSteps);

struct BatteryEntry {
  std::string name;
  MachineFactory make;
};

// Silent, greedy, copycat and `random_seeds` random machines.
std::vector<BatteryEntry> MachineBattery(int random_seeds);

// Every environment behavior (each legal move or waiting, at every turn)
// against the proof's machine, over the given domain. Returns the number of
// leaves; `visit` gets the run and final position of each.
struct SoundnessLeaf {
  Run run;
  Formula position = Formula::Top();
  // Set when the machine made an illegal move.
  bool machine_illegal = false;
};
long ExploreEnvironments(const MachineLoop& machine, const Formula& f,
                         Constant domain,
                         const std::function<void(const SoundnessLeaf&)>& visit);

}  // namespace colog

#endif  // COLOG_STRATEGIES_H_
