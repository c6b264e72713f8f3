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

#include "colog/strategies.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "colog/parser.h"

namespace colog {

namespace {

std::shared_ptr<const std::map<std::string, int>> IndexSteps(
    const Derivation& d) {
  auto index = std::make_shared<std::map<std::string, int>>();
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    (*index)[Print(d.steps[i].formula)] = static_cast<int>(i);
  }
  return index;
}

std::vector<Formula> PremiseFormulas(const Derivation& d, const Step& s) {
  std::vector<Formula> out;
  for (int id : s.premises) out.push_back(d.Find(id)->formula);
  return out;
}

Valuation Prune(const Valuation& f, const Formula& e) {
  Valuation out;
  for (const std::string& v : FreeVariables(e)) {
    if (auto it = f.find(v); it != f.end()) out.emplace(v, it->second);
  }
  return out;
}

std::optional<Detail> DetailOf(const Derivation& d, const Step& s,
                               System system) {
  if (!s.details.empty()) return s.details.front();
  if (s.premises.size() != 1) return std::nullopt;
  return InferDetail(s.formula, d.Find(s.premises[0])->formula, s.rule, system);
}

Constant MaxConstant(const Formula& f, const Valuation& e) {
  Constant m = 0;
  for (Constant c : Constants(f)) m = std::max(m, c);
  for (const auto& [v, c] : e) m = std::max(m, c);
  return m;
}

}  // namespace

// --- Machine LOOP ------------------------------------------------------------

MachineLoop::MachineLoop(std::shared_ptr<const Proof> proof,
                         const Valuation& valuation)
    : proof_(std::move(proof)) {
  CheckResult check = CheckProof(*proof_);
  if (check.status == CheckResult::Status::kFailure) {
    throw Error("proof does not check: " + check.ToString());
  }
  index_ = IndexSteps(*proof_);
  records_.E = proof_->conclusion();
  records_.cursor = proof_->steps.back().id;
  for (const std::string& v : FreeVariables(records_.E)) {
    records_.f[v] = ValueOf(valuation, Term::Variable(v));
  }
}

const colog::Step& MachineLoop::Current() const {
  return proof_->steps[index_->at(Print(records_.E))];
}

void MachineLoop::Enter(const Formula& premise) {
  records_.E = premise;
  records_.cursor = Current().id;
  records_.f = Prune(records_.f, premise);
}

StepOutput MachineLoop::Step(std::span<const LabMove> incoming) {
  for (const LabMove& m : incoming) {
    if (m.player == Player::kEnvironment) pending_.push_back(m);
  }
  while (!stuck_) {
    const colog::Step& s = Current();
    const Formula& e = records_.E;
    if (s.rule != Rule::kA) {
      std::optional<Detail> d = DetailOf(*proof_, s, System::kProof);
      if (!d) break;
      Formula premise = proof_->Find(s.premises[0])->formula;
      MoveToken move{d->spec, 0};
      if (s.rule == Rule::kB1) {
        move.payload = *d->index;
      } else {
        const Term& t = *d->term;
        if (t.is_constant()) {
          move.payload = t.value();
        } else if (HasFreeVariable(e, t.name()) && records_.f.count(t.name())) {
          move.payload = records_.f.at(t.name());
        }
        if (t.is_variable()) records_.f.emplace(t.name(), move.payload);
      }
      Enter(premise);
      return {{move.ToString()}, false};
    }
    if (pending_.empty()) return {};
    LabMove alpha = pending_.front();
    pending_.pop_front();
    auto token = MoveToken::Parse(alpha.move);
    auto occ = token ? ResolveChoice(e, token->spec) : std::nullopt;
    if (!occ || OwnerOf(*occ) != Player::kEnvironment) break;
    std::vector<Formula> premises = PremiseFormulas(*proof_, s);
    if (!IsQuantifier(occ->kind)) {
      if (token->payload < 1 || token->payload > occ->subformula.arity()) break;
      Formula h =
          ReplaceAtPath(e, occ->path, occ->subformula.child(token->payload - 1));
      if (std::find(premises.begin(), premises.end(), h) == premises.end()) {
        break;
      }
      Enter(h);
      continue;
    }
    auto match = FindFreshInstance(e, *occ, std::nullopt, premises);
    if (!match) break;
    records_.f[match->variable.name()] = token->payload;
    Enter(premises[match->premise]);
  }
  stuck_ = true;
  return {};
}

// --- Environment LOOP --------------------------------------------------------

EnvironmentLoop::EnvironmentLoop(std::shared_ptr<const Refutation> refutation)
    : refutation_(std::move(refutation)) {
  CheckResult check = CheckRefutation(*refutation_);
  if (check.status == CheckResult::Status::kFailure) {
    throw Error("refutation does not check: " + check.ToString());
  }
  index_ = IndexSteps(*refutation_);
  records_.E = refutation_->conclusion();
  records_.cursor = refutation_->steps.back().id;
  Constant next = 0;
  for (Constant c : Constants(records_.E)) next = std::max(next, c);
  for (const Term& t : FreeTerms(records_.E)) {
    if (t.is_variable()) valuation_[t.name()] = ++next;
  }
  records_.f = valuation_;
}

const colog::Step& EnvironmentLoop::Current() const {
  return refutation_->steps[index_->at(Print(records_.E))];
}

void EnvironmentLoop::Enter(const Formula& premise) {
  records_.E = premise;
  records_.cursor = Current().id;
  records_.f = Prune(records_.f, premise);
}

std::set<Constant> EnvironmentLoop::ConstantsOfFE() const {
  std::set<Constant> out = Constants(records_.E);
  for (const std::string& v : FreeVariables(records_.E)) {
    if (auto it = records_.f.find(v); it != records_.f.end()) {
      out.insert(it->second);
    }
  }
  return out;
}

void EnvironmentLoop::AssertDistinctive() const {
  std::set<Constant> values = Constants(records_.E);
  std::size_t expected = values.size();
  for (const std::string& v : FreeVariables(records_.E)) {
    auto it = records_.f.find(v);
    if (it == records_.f.end()) {
      throw std::logic_error("no value for " + v + " in " + Print(records_.E));
    }
    values.insert(it->second);
    ++expected;
  }
  if (values.size() != expected) {
    throw std::logic_error("valuation is not distinctive for " +
                           Print(records_.E));
  }
}

StepOutput EnvironmentLoop::Step(std::span<const LabMove> incoming) {
  for (const LabMove& m : incoming) {
    if (m.player == Player::kMachine) pending_.push_back(m);
  }
  while (!stuck_) {
    AssertDistinctive();
    const colog::Step& s = Current();
    const Formula& e = records_.E;
    if (s.rule != Rule::kA) {
      std::optional<Detail> d = DetailOf(*refutation_, s, System::kRefutation);
      if (!d) break;
      Formula premise = refutation_->Find(s.premises[0])->formula;
      MoveToken move{d->spec, 0};
      if (s.rule == Rule::kB1) {
        move.payload = *d->index;
      } else {
        std::set<Constant> used = ConstantsOfFE();
        while (used.count(move.payload)) ++move.payload;
        records_.f[d->term->name()] = move.payload;
      }
      Enter(premise);
      return {{move.ToString()}, false};
    }
    if (pending_.empty()) return {};
    LabMove alpha = pending_.front();
    pending_.pop_front();
    auto token = MoveToken::Parse(alpha.move);
    auto occ = token ? ResolveChoice(e, token->spec) : std::nullopt;
    if (!occ || OwnerOf(*occ) != Player::kMachine) break;
    std::vector<Formula> premises = PremiseFormulas(*refutation_, s);
    if (!IsQuantifier(occ->kind)) {
      if (token->payload < 1 || token->payload > occ->subformula.arity()) break;
      Formula h =
          ReplaceAtPath(e, occ->path, occ->subformula.child(token->payload - 1));
      if (std::find(premises.begin(), premises.end(), h) == premises.end()) {
        break;
      }
      Enter(h);
      continue;
    }
    Constant c = token->payload;
    std::optional<Term> merge;
    if (ConstantsOfFE().count(c)) {
      if (Constants(e).count(c)) {
        merge = Term::Const(c);
      } else {
        for (const std::string& v : FreeVariables(e)) {
          if (records_.f.at(v) == c) merge = Term::Variable(v);
        }
      }
    }
    auto match = FindFreshInstance(e, *occ, merge, premises);
    if (!match) break;
    if (merge && merge->is_variable()) records_.f.erase(merge->name());
    records_.f[match->variable.name()] = c;
    Enter(premises[match->premise]);
  }
  stuck_ = true;
  return {};
}

// --- Simple strategies -------------------------------------------------------

StepOutput ScriptedStrategy::Step(std::span<const LabMove>) {
  if (next_ >= moves_.size()) return {};
  return {{moves_[next_++]}, true};
}

std::vector<LabMove> TrackingStrategy::Absorb(
    std::span<const LabMove> incoming) {
  std::vector<LabMove> applied;
  for (const LabMove& m : incoming) {
    if (m.player == role_) continue;
    auto token = LegalMove(position_, m.player, m.move, domain_);
    if (!token) continue;
    position_ = BringDown(position_, m.player, *token, domain_);
    applied.push_back(m);
  }
  return applied;
}

StepOutput TrackingStrategy::Emit(const MoveToken& move) {
  position_ = BringDown(position_, role_, move, domain_);
  return {{move.ToString()}, false};
}

RandomStrategy::RandomStrategy(Player role, Formula start, std::uint32_t seed,
                               Constant max_constant)
    : TrackingStrategy(role, std::move(start), kSymbolicDomain),
      seed_(seed),
      max_constant_(max_constant),
      rng_(seed) {}

std::string RandomStrategy::name() const {
  return "random(" + std::to_string(seed_) + ")";
}

StepOutput RandomStrategy::Step(std::span<const LabMove> incoming) {
  Absorb(incoming);
  std::vector<MoveToken> moves =
      LegalMoves(position_, role_, max_constant_ + 1);
  if (moves.empty() || rng_() % 4 == 0) return {};
  return Emit(moves[rng_() % moves.size()]);
}

Interpretation BeliefInterpretation(const Formula& f, Constant domain) {
  Interpretation interp(domain);
  std::set<std::pair<std::string, std::size_t>> letters;
  for (const auto& [letter, args] : AtomsOf(f)) {
    letters.insert({letter, args.size()});
  }
  for (const auto& [letter, arity] : letters) {
    interp.DeclareLetter(letter, arity);
    std::vector<Constant> args(arity, 0);
    for (;;) {
      std::uint64_t h = 1469598103934665603ull;
      for (char ch : letter) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
      for (Constant a : args) h = (h ^ (a + 1)) * 1099511628211ull;
      if ((h >> 17) & 1) interp.Set(letter, args, true);
      std::size_t i = 0;
      while (i < arity && ++args[i] == domain) args[i++] = 0;
      if (i == arity) break;
    }
  }
  return interp;
}

GreedyStrategy::GreedyStrategy(
    Player role, Formula start, Valuation valuation,
    std::shared_ptr<const Interpretation> interpretation)
    : TrackingStrategy(role, std::move(start),
                       interpretation ? interpretation->domain()
                                      : kSymbolicDomain),
      valuation_(std::move(valuation)),
      interpretation_(std::move(interpretation)) {}

std::shared_ptr<const Interpretation> GreedyStrategy::Table() const {
  if (interpretation_) return interpretation_;
  Constant domain = std::max<Constant>(2, MaxConstant(position_, valuation_) + 2);
  return std::make_shared<const Interpretation>(
      BeliefInterpretation(position_, domain));
}

StepOutput GreedyStrategy::Step(std::span<const LabMove> incoming) {
  Absorb(incoming);
  std::shared_ptr<const Interpretation> table = Table();
  Constant d = table->domain();
  WinnabilityOracle oracle(table);
  Player other = Adversary(role_);
  if (role_ == Player::kMachine) {
    bool passive = Truth(Elementarize(position_), *table, valuation_);
    for (const MoveToken& m : LegalMoves(position_, other, d)) {
      if (!passive) break;
      passive = oracle.Winnable(BringDown(position_, other, m, d), valuation_);
    }
    if (passive) return {};
    for (const MoveToken& m : LegalMoves(position_, role_, d)) {
      if (oracle.Winnable(BringDown(position_, role_, m, d), valuation_)) {
        return Emit(m);
      }
    }
    return {};
  }
  for (const MoveToken& m : LegalMoves(position_, role_, d)) {
    if (!oracle.Winnable(BringDown(position_, role_, m, d), valuation_)) {
      return Emit(m);
    }
  }
  return {};
}

CopycatStrategy::CopycatStrategy(Player role, Formula start)
    : TrackingStrategy(role, std::move(start), kSymbolicDomain) {}

StepOutput CopycatStrategy::Step(std::span<const LabMove> incoming) {
  std::size_t components =
      (position_.op() == Op::kAnd || position_.op() == Op::kOr ||
       position_.op() == Op::kImplies)
          ? position_.arity()
          : 0;
  for (const LabMove& m : Absorb(incoming)) {
    auto token = MoveToken::Parse(m.move);
    if (!token || token->spec.empty()) continue;
    for (std::size_t j = 1; j <= components; ++j) {
      std::vector<int> indices = token->spec.indices();
      if (indices[0] == static_cast<int>(j)) continue;
      indices[0] = static_cast<int>(j);
      planned_.push_back(
          MoveToken{OccurrenceSpec(std::move(indices)), token->payload}
              .ToString());
    }
  }
  while (!planned_.empty()) {
    std::string next = planned_.front();
    planned_.pop_front();
    if (auto token = LegalMove(position_, role_, next, domain_)) {
      return Emit(*token);
    }
  }
  return {};
}

// --- Matches -----------------------------------------------------------------

MatchResult RunMatch(ReactiveStrategy& machine, ReactiveStrategy& environment,
                     const GameState& start, int max_steps) {
  MatchResult result;
  Constant domain = start.interpretation->domain();
  Formula position = start.formula;
  std::vector<LabMove> to_machine, to_environment;
  int steps = 0;
  bool over = false;

  // Appends a move; false once the run contains an illegal move.
  auto play = [&](Player who, const std::string& move) {
    LabMove labeled{who, move};
    result.run.push_back(labeled);
    if (who == Player::kMachine) result.machine_moves.push_back(move);
    auto token = LegalMove(position, who, move, domain);
    if (!token) return false;
    position = BringDown(position, who, *token, domain);
    (who == Player::kMachine ? to_environment : to_machine).push_back(labeled);
    return true;
  };

  while (!over) {
    bool moved = false;
    for (;;) {
      if (steps >= max_steps) {
        result.settled = false;
        over = true;
        break;
      }
      ++steps;
      StepOutput out = environment.Step(to_environment);
      to_environment.clear();
      for (const std::string& m : out.moves) {
        moved = true;
        if (!play(Player::kEnvironment, m)) over = true;
        if (over) break;
      }
      if (over || out.waiting) break;
    }
    if (over) break;
    if (steps >= max_steps) {
      result.settled = false;
      break;
    }
    ++steps;
    StepOutput out = machine.Step(to_machine);
    to_machine.clear();
    for (const std::string& m : out.moves) {
      moved = true;
      if (!play(Player::kMachine, m)) over = true;
      if (over) break;
    }
    if (!moved && out.waiting) break;
  }

  Adjudication adj = Adjudicate(start, result.run);
  result.winner = adj.winner;
  result.illegal_at = adj.illegal_at;
  result.final_state = std::move(adj.final_state);
  return result;
}

nlohmann::json CounterCertificate::ToJson() const {
  return {{"machine", machine},
          {"winner", PlayerName(winner)},
          {"verified", verified},
          {"run", RunToJson(run)},
          {"valuation", ValuationToJson(valuation)},
          {"interpretation", InterpretationToJson(interpretation)},
          {"final_formula", Print(records.E)},
          {"final_records", ValuationToJson(records.f)}};
}

CounterCertificate MakeCounterCertificate(
    std::shared_ptr<const Refutation> refutation, ReactiveStrategy& machine,
    int max_steps) {
  const Formula f = refutation->conclusion();
  EnvironmentLoop environment(std::move(refutation));
  GameState symbolic =
      MakeState(f, Interpretation(kSymbolicDomain), environment.valuation());
  MatchResult match = RunMatch(machine, environment, symbolic, max_steps);

  CounterCertificate cert;
  cert.machine = machine.name();
  cert.valuation = environment.valuation();
  cert.run = match.run;
  cert.illegal_at = match.illegal_at;
  cert.records = environment.records();

  Constant max = MaxConstant(match.final_state.formula, cert.valuation);
  Interpretation interp(max + 1);
  if (!match.illegal_at) {
    std::vector<std::pair<Term, Term>> bindings;
    for (const auto& [v, c] : cert.records.f) {
      bindings.push_back({Term::Variable(v), Term::Const(c)});
    }
    Formula ground = Elementarize(Substitute(cert.records.E, bindings));
    for (Constant c : Constants(ground)) max = std::max(max, c);
    interp = Interpretation(max + 1);
    auto falsifying = FindFalsifyingAssignment(ground);
    if (!falsifying) {
      cert.interpretation = interp;
      cert.winner = Player::kMachine;
      return cert;
    }
    for (const auto& [key, value] : *falsifying) {
      std::vector<Constant> args;
      for (const Term& t : key.second) args.push_back(t.value());
      interp.Set(key.first, args, value);
    }
  }
  for (const auto& [letter, args] : AtomsOf(f)) {
    interp.DeclareLetter(letter, args.size());
  }
  cert.interpretation = interp;
  GameState real = MakeState(f, interp, cert.valuation);
  cert.winner = WnRun(real, cert.run);
  cert.verified = match.settled && cert.winner == Player::kEnvironment;
  return cert;
}

std::vector<BatteryEntry> MachineBattery(int random_seeds) {
  std::vector<BatteryEntry> out;
  out.push_back({"silent", [](const Formula&, const Valuation&) {
                   return std::make_unique<SilentStrategy>(Player::kMachine);
                 }});
  out.push_back({"greedy", [](const Formula& f, const Valuation& e) {
                   return std::make_unique<GreedyStrategy>(Player::kMachine, f,
                                                           e);
                 }});
  out.push_back({"copycat", [](const Formula& f, const Valuation&) {
                   return std::make_unique<CopycatStrategy>(Player::kMachine, f);
                 }});
  for (int seed = 0; seed < random_seeds; ++seed) {
    out.push_back({"random(" + std::to_string(seed) + ")",
                   [seed](const Formula& f, const Valuation& e) {
                     return std::make_unique<RandomStrategy>(
                         Player::kMachine, f, static_cast<std::uint32_t>(seed),
                         MaxConstant(f, e) + 3);
                   }});
  }
  return out;
}

// --- Exhaustive environments -------------------------------------------------

namespace {

struct Explorer {
  Constant domain;
  const std::function<void(const SoundnessLeaf&)>& visit;
  long leaves = 0;

  struct Node {
    std::unique_ptr<ReactiveStrategy> machine;
    Formula position;
    Run run;
    std::vector<LabMove> to_machine;

    Node Copy() const {
      return {machine->Clone(), position, run, to_machine};
    }
  };

  void Leaf(const Node& n, bool illegal) {
    ++leaves;
    visit({n.run, n.position, illegal});
  }

  void EnvironmentTurn(Node n) {
    for (const MoveToken& m :
         LegalMoves(n.position, Player::kEnvironment, domain)) {
      Node child = n.Copy();
      LabMove labeled = LabMove::Of(Player::kEnvironment, m);
      child.position = BringDown(child.position, Player::kEnvironment, m, domain);
      child.run.push_back(labeled);
      child.to_machine.push_back(labeled);
      EnvironmentTurn(std::move(child));
    }
    MachineTurn(std::move(n));
  }

  void MachineTurn(Node n) {
    for (int guard = 0; guard < 1000; ++guard) {
      StepOutput out = n.machine->Step(n.to_machine);
      n.to_machine.clear();
      if (out.moves.empty()) {
        if (out.waiting) return Leaf(n, false);
        continue;
      }
      for (const std::string& move : out.moves) {
        n.run.push_back({Player::kMachine, move});
        auto token = LegalMove(n.position, Player::kMachine, move, domain);
        if (!token) return Leaf(n, true);
        n.position = BringDown(n.position, Player::kMachine, *token, domain);
      }
      return EnvironmentTurn(std::move(n));
    }
    throw std::logic_error("machine neither moves nor waits");
  }
};

}  // namespace

long ExploreEnvironments(const MachineLoop& machine, const Formula& f,
                         Constant domain,
                         const std::function<void(const SoundnessLeaf&)>& visit) {
  Explorer explorer{domain, visit};
  explorer.EnvironmentTurn({machine.Clone(), f, {}, {}});
  return explorer.leaves;
}

}  // namespace colog
