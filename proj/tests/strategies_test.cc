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

#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "colog/decider.h"
#include "colog/parser.h"
#include "colog/strategies.h"
#include "doctest.h"
#include "support/formulas.h"
#include "support/game_enumeration.h"

namespace colog {
namespace {

std::shared_ptr<const Proof> ProofFor(const std::string& text) {
  Verdict v = Decide(Parse(text));
  REQUIRE(v.provable);
  return std::make_shared<const Proof>(v.certificate);
}

std::shared_ptr<const Refutation> RefutationFor(const std::string& text) {
  Verdict v = Decide(Parse(text));
  REQUIRE_FALSE(v.provable);
  return std::make_shared<const Refutation>(v.certificate);
}

std::vector<CorpusEntry> LoadCorpus(const std::string& name) {
  std::ifstream in(std::string(COLOG_SOURCE_DIR) + "/corpus/" + name);
  REQUIRE(in.good());
  return ReadCorpus(in);
}

Run ParseRun(const std::vector<std::string>& labeled) {
  Run run;
  for (const std::string& m : labeled) run.push_back(LabMove::Parse(m));
  return run;
}

std::vector<std::string> MovesBy(const Run& run, Player who) {
  std::vector<std::string> out;
  for (const LabMove& m : run) {
    if (m.player == who) out.push_back(m.move);
  }
  return out;
}

Constant MaxConstantOf(const Formula& f) {
  Constant max = 0;
  for (Constant c : Constants(f)) max = std::max(max, c);
  return max;
}

// Counts moves per step of a wrapped strategy.
class Counting : public ReactiveStrategy {
 public:
  explicit Counting(std::unique_ptr<ReactiveStrategy> inner)
      : inner_(std::move(inner)) {}
  Player role() const override { return inner_->role(); }
  std::string name() const override { return inner_->name(); }
  StepOutput Step(std::span<const LabMove> incoming) override {
    StepOutput out = inner_->Step(incoming);
    most_ = std::max(most_, out.moves.size());
    return out;
  }
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<Counting>(inner_->Clone());
  }
  std::size_t most() const { return most_; }

 private:
  std::unique_ptr<ReactiveStrategy> inner_;
  std::size_t most_ = 0;
};

// Never grants permission and never moves.
class Restless : public ReactiveStrategy {
 public:
  explicit Restless(Player role) : role_(role) {}
  Player role() const override { return role_; }
  std::string name() const override { return "restless"; }
  StepOutput Step(std::span<const LabMove>) override { return {{}, false}; }
  std::unique_ptr<ReactiveStrategy> Clone() const override {
    return std::make_unique<Restless>(*this);
  }

 private:
  Player role_;
};

TEST_CASE("machine answers the copy choice") {
  auto proof = ProofFor(testing::kCopyChoice);
  MachineLoop machine(proof, {});
  ScriptedStrategy env(Player::kEnvironment, {"7"});
  Formula f = Parse(testing::kCopyChoice);
  MatchResult match =
      RunMatch(machine, env, MakeState(f, Interpretation(kSymbolicDomain)));
  CHECK(match.run == ParseRun({"-7", "+7"}));
  CHECK(match.settled);
  CHECK_FALSE(match.illegal_at);
  CHECK(machine.records().E == Parse("p(v0) \\/ ~p(v0)"));
  CHECK(machine.records().f == Valuation{{"v0", 7}});

  // Won under every table over 0..7.
  std::mt19937 rng(1);
  auto tables = testing::Interpretations({{"p", 1}}, 8, 8, 0, rng);
  REQUIRE(tables.size() == 256);
  for (const Interpretation& t : tables) {
    CHECK(WnRun(MakeState(f, t), match.run) == Player::kMachine);
  }
}

TEST_CASE("machine replays the reduction walkthrough") {
  auto proof = ProofFor(testing::kDecisionReduction);
  MachineLoop machine(proof, {});
  ScriptedStrategy env(Player::kEnvironment, {"2.2.7", "1.9", "2.1.1"});
  Formula f = Parse(testing::kDecisionReduction);
  MatchResult match =
      RunMatch(machine, env, MakeState(f, Interpretation(kSymbolicDomain)));
  std::vector<std::string> expected(std::begin(testing::kReductionRun),
                                    std::end(testing::kReductionRun));
  CHECK(match.run == ParseRun(expected));
  CHECK(match.machine_moves ==
        std::vector<std::string>{"1.7", "2.1.9", "2.2.1"});
  CHECK(match.final_state.formula ==
        Parse(testing::kReductionPositions[6]));
  CHECK_FALSE(machine.stuck());

  Interpretation t(10);
  t.Set("p", {7}, true);
  t.Set("q", {9}, true);
  CHECK(WnRun(MakeState(f, t), match.run) == Player::kMachine);
}

TEST_CASE("machine waits on an elementary tautology") {
  auto proof = ProofFor("p -> p");
  MachineLoop machine(proof, {});
  SilentStrategy env(Player::kEnvironment);
  MatchResult match = RunMatch(
      machine, env, MakeState(Parse("p -> p"), Interpretation(kSymbolicDomain)));
  CHECK(match.run.empty());
  CHECK(match.winner == Player::kMachine);
}

TEST_CASE("machine rejects a derivation that fails to check") {
  Derivation bad;
  Step s;
  s.id = 1;
  s.formula = Parse("p + ~p");
  s.rule = Rule::kA;
  bad.steps.push_back(s);
  CHECK_THROWS_AS(MachineLoop(std::make_shared<const Proof>(bad), {}), Error);
}

TEST_CASE("environment counters the swapped copy choice") {
  auto refutation = RefutationFor(testing::kSwappedCopyChoice);
  EnvironmentLoop env(refutation);
  CHECK(env.valuation().empty());
  ScriptedStrategy machine(Player::kMachine, {"5"});
  Formula f = Parse(testing::kSwappedCopyChoice);
  MatchResult match =
      RunMatch(machine, env, MakeState(f, Interpretation(kSymbolicDomain)));
  CHECK(match.run == ParseRun({"+5", "-0"}));
  CHECK(env.records().E == Parse("p(v1) \\/ ~p(v0)"));
  CHECK(env.records().f == Valuation{{"v0", 5}, {"v1", 0}});
  CHECK_FALSE(env.stuck());

  ScriptedStrategy again(Player::kMachine, {"5"});
  CounterCertificate cert = MakeCounterCertificate(refutation, again);
  CHECK(cert.verified);
  CHECK(cert.interpretation.Holds("p", {5}));
  CHECK_FALSE(cert.interpretation.Holds("p", {0}));
}

TEST_CASE("environment picks the false disjunct's complement") {
  auto refutation = RefutationFor("p + ~p");
  for (const char* choice : {"1", "2"}) {
    ScriptedStrategy machine(Player::kMachine, {choice});
    CounterCertificate cert = MakeCounterCertificate(refutation, machine);
    INFO(choice);
    CHECK(cert.verified);
    CHECK(cert.run.size() == 1);
  }
  SilentStrategy silent(Player::kMachine);
  CounterCertificate cert = MakeCounterCertificate(refutation, silent);
  CHECK(cert.verified);
  CHECK(cert.run.empty());
}

TEST_CASE("environment merges a replayed constant") {
  const char* text = "p(z) -> cex y . (p(y) /\\ q)";
  auto refutation = RefutationFor(text);
  EnvironmentLoop env(refutation);
  CHECK(env.valuation() == Valuation{{"z", 1}});
  ScriptedStrategy machine(Player::kMachine, {"2.1"});
  MatchResult match = RunMatch(
      machine, env,
      MakeState(Parse(text), Interpretation(kSymbolicDomain), env.valuation()));
  CHECK(match.run == ParseRun({"+2.1"}));
  CHECK(FreeVariables(env.records().E).count("z") == 0);
  REQUIRE(env.records().f.size() == 1);
  CHECK(env.records().f.begin()->second == 1);

  ScriptedStrategy again(Player::kMachine, {"2.1"});
  CounterCertificate cert = MakeCounterCertificate(refutation, again);
  CHECK(cert.verified);
}

TEST_CASE("environment counters the converse reduction") {
  auto refutation = RefutationFor(testing::kConverseReduction);
  for (const BatteryEntry& entry : MachineBattery(5)) {
    auto machine = entry.make(refutation->conclusion(), {});
    CounterCertificate cert = MakeCounterCertificate(refutation, *machine);
    INFO(entry.name);
    CHECK(cert.verified);
    CHECK(cert.winner == Player::kEnvironment);
  }
}

TEST_CASE("battery on the unprovable corpus") {
  for (const char* name : {"choice.txt", "classical.txt"}) {
    for (const CorpusEntry& e : LoadCorpus(name)) {
      if (!e.expected || *e.expected) continue;
      auto refutation = RefutationFor(e.text);
      for (const BatteryEntry& entry : MachineBattery(8)) {
        EnvironmentLoop probe(refutation);
        auto machine = entry.make(refutation->conclusion(), probe.valuation());
        CounterCertificate cert = MakeCounterCertificate(refutation, *machine);
        INFO(e.text << " vs " << entry.name);
        CHECK(cert.verified);
        // The certificate replays to the same verdict from its JSON.
        nlohmann::json j = cert.ToJson();
        GameState replay =
            MakeState(Parse(e.text),
                      InterpretationFromJson(j["interpretation"]),
                      ValuationFromJson(j["valuation"]));
        CHECK(WnRun(replay, RunFromJson(j["run"])) == Player::kEnvironment);
      }
    }
  }
}

TEST_CASE("proof machines are sound against every environment") {
  std::mt19937 rng(3);
  int formulas = 0;
  for (const char* name : {"choice.txt", "classical.txt"}) {
    for (const CorpusEntry& e : LoadCorpus(name)) {
      if (!e.expected || !*e.expected) continue;
      Formula f = Parse(e.text);
      auto proof = ProofFor(e.text);
      auto letters = testing::LettersOf(f);
      Constant low = MaxConstantOf(f) + 1;
      std::set<std::string> free_set = FreeVariables(f);
      std::vector<std::string> free(free_set.begin(), free_set.end());
      ++formulas;
      for (Constant domain = low; domain <= low + 2; ++domain) {
        auto tables = testing::Interpretations(letters, domain, 9, 20, rng);
        // Every valuation of the free variables over the domain.
        std::vector<Constant> values(free.size(), 0);
        for (;;) {
          Valuation e0;
          for (std::size_t i = 0; i < free.size(); ++i) e0[free[i]] = values[i];
          MachineLoop machine(proof, e0);
          long leaves = ExploreEnvironments(
              machine, f, domain, [&](const SoundnessLeaf& leaf) {
                INFO(e.text << " run " << RunToJson(leaf.run).dump());
                CHECK_FALSE(leaf.machine_illegal);
                for (const Interpretation& t : tables) {
                  CHECK(WnRun(MakeState(f, t, e0), leaf.run) ==
                        Player::kMachine);
                }
              });
          CHECK(leaves > 0);
          std::size_t i = free.size();
          while (i > 0 && ++values[i - 1] == domain) values[--i] = 0;
          if (i == 0) break;
        }
      }
    }
  }
  CHECK(formulas >= 30);
}

TEST_CASE("machine moves at most once per step") {
  auto proof = ProofFor(testing::kDecisionReduction);
  Formula f = Parse(testing::kDecisionReduction);
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    Counting machine(std::make_unique<MachineLoop>(proof, Valuation{}));
    RandomStrategy env(Player::kEnvironment, f, seed, 4);
    MatchResult match = RunMatch(machine, env, MakeState(f, Interpretation(5)));
    CHECK(machine.most() <= 1);
    CHECK_FALSE(match.illegal_at);
    CHECK(MovesBy(match.run, Player::kMachine) == match.machine_moves);
    CHECK(match.winner == Player::kMachine);
  }
}

TEST_CASE("environment records stay distinctive") {
  auto refutation = RefutationFor(testing::kConverseReduction);
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    EnvironmentLoop env(refutation);
    RandomStrategy machine(Player::kMachine, refutation->conclusion(), seed, 3);
    MatchResult match = RunMatch(
        machine, env,
        MakeState(refutation->conclusion(), Interpretation(kSymbolicDomain)));
    std::set<Constant> seen;
    for (const auto& [v, c] : env.records().f) {
      CHECK(seen.insert(c).second);
      CHECK(Constants(env.records().E).count(c) == 0);
    }
    CHECK(MovesBy(match.run, Player::kEnvironment).size() <=
          MovesBy(match.run, Player::kMachine).size() + 2);
  }
}

TEST_CASE("matches stop at illegal moves and at the step cap") {
  Formula f = Parse(testing::kCopyChoice);
  auto proof = ProofFor(testing::kCopyChoice);
  MachineLoop machine(proof, {});
  ScriptedStrategy bogus(Player::kEnvironment, {"9.9"});
  MatchResult match = RunMatch(machine, bogus, MakeState(f, Interpretation(3)));
  CHECK(match.illegal_at == std::size_t{0});
  CHECK(match.winner == Player::kMachine);

  MachineLoop again(proof, {});
  Restless restless(Player::kEnvironment);
  MatchResult capped =
      RunMatch(again, restless, MakeState(f, Interpretation(3)), 50);
  CHECK_FALSE(capped.settled);
}

TEST_CASE("greedy machines keep winnable games") {
  const char* text = "call x . (p(x) + ~p(x))";
  Formula f = Parse(text);
  std::mt19937 rng(9);
  for (const Interpretation& t :
       testing::Interpretations({{"p", 1}}, 3, 3, 0, rng)) {
    auto table = std::make_shared<const Interpretation>(t);
    for (std::uint32_t seed = 0; seed < 5; ++seed) {
      GreedyStrategy machine(Player::kMachine, f, {}, table);
      RandomStrategy env(Player::kEnvironment, f, seed, 2);
      MatchResult match = RunMatch(machine, env, GameState{f, table, {}});
      CHECK(match.winner == Player::kMachine);
    }
  }
}

TEST_CASE("copycat mirrors across components") {
  Formula f = Parse("(call x . p(x)) -> call x . p(x)");
  CopycatStrategy machine(Player::kMachine, f);
  ScriptedStrategy env(Player::kEnvironment, {"2.4"});
  MatchResult match = RunMatch(machine, env, MakeState(f, Interpretation(5)));
  CHECK(match.run == ParseRun({"-2.4", "+1.4"}));
}

}  // namespace
}  // namespace colog
