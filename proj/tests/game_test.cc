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

#include <random>
#include <string>
#include <vector>

#include "colog/game.h"
#include "colog/parser.h"
#include "doctest.h"
#include "support/formulas.h"
#include "support/game_enumeration.h"
#include "support/game_properties.h"
#include "support/generators.h"

namespace colog {
namespace {

using testing::kDecisionReduction;

MoveToken Tok(const char* spec, Constant payload) {
  return {OccurrenceSpec::Parse(spec), payload};
}

Interpretation AllFalse(Constant domain) { return Interpretation(domain); }

TEST_CASE("move tokens") {
  auto t = MoveToken::Parse("2.2.7");
  REQUIRE(t.has_value());
  CHECK(t->spec.ToString() == "2.2.");
  CHECK(t->payload == 7);
  CHECK(MoveToken::Parse("7")->spec.empty());
  CHECK_FALSE(MoveToken::Parse(testing::kSpade).has_value());
  CHECK_FALSE(MoveToken::Parse("2..1").has_value());
  CHECK_FALSE(MoveToken::Parse("0.1").has_value());
  CHECK_FALSE(MoveToken::Parse("").has_value());
  CHECK(LabMove::Parse("-2.2.7") ==
        LabMove{Player::kEnvironment, "2.2.7"});
}

TEST_CASE("legal moves") {
  Formula f = Parse(kDecisionReduction);
  auto env = LegalMoves(f, Player::kEnvironment, 10);
  CHECK(std::find(env.begin(), env.end(), Tok("2.2.", 7)) != env.end());
  CHECK(LegalMoves(f, Player::kMachine, 10).size() == 20);

  Formula pp = Parse("p -> p");
  CHECK(LegalMoves(pp, Player::kMachine, 3).empty());
  CHECK(LegalMoves(pp, Player::kEnvironment, 3).empty());

  Formula pq = Parse("p & q");
  CHECK(LegalMoves(pq, Player::kEnvironment, 2) ==
        std::vector<MoveToken>{Tok("", 1), Tok("", 2)});
  CHECK(LegalMoves(pq, Player::kMachine, 2).empty());
  // Negative occurrences change hands.
  CHECK(LegalMoves(Parse("~(p & q)"), Player::kMachine, 2).size() == 2);
  CHECK(LegalMoves(Parse("(p + q) -> r"), Player::kEnvironment, 2).size() == 2);
}

TEST_CASE("bringing down moves") {
  Formula f = Parse(kDecisionReduction);
  CHECK(BringDown(f, Player::kEnvironment, Tok("2.2.", 7), 10) ==
        Parse(testing::kReductionPositions[1]));
  CHECK(BringDown(Parse("p & q"), Player::kEnvironment, Tok("", 1), 2) ==
        Parse("p"));
  CHECK(BringDown(Parse("cex y . (p(z) \\/ ~p(y))"), Player::kMachine,
                  Tok("", 9), 10) == Parse("p(z) \\/ ~p(9)"));
  CHECK_THROWS_AS(BringDown(Parse("p & q"), Player::kMachine, Tok("", 1), 2),
                  Error);
  CHECK_THROWS_AS(
      BringDown(Parse("call x . p(x)"), Player::kEnvironment, Tok("", 5), 2),
      Error);
}

TEST_CASE("winner of the empty run") {
  Interpretation interp(10);
  CHECK(WnEmpty(MakeState(Parse("p & q"), interp)) == Player::kMachine);
  interp.Set("p", {7}, true);
  CHECK(WnEmpty(MakeState(Parse(testing::kReductionPositions[6]), interp)) ==
        Player::kMachine);
  CHECK(WnEmpty(MakeState(Parse("bot"), interp)) == Player::kEnvironment);
  CHECK(WnEmpty(MakeState(Parse("fa x . p(x)"), interp)) ==
        Player::kEnvironment);
  CHECK(WnEmpty(MakeState(Parse("ex x . p(x)"), interp)) == Player::kMachine);
  CHECK_THROWS_AS(WnEmpty(MakeState(Parse("p(12)"), interp)), Error);
}

TEST_CASE("winner of runs") {
  Interpretation interp(10);
  interp.Set("p", {7}, true);
  interp.Set("q", {9}, true);
  Run run;
  for (const char* m : testing::kReductionRun) run.push_back(LabMove::Parse(m));
  GameState start = MakeState(Parse(kDecisionReduction), interp);
  CHECK(WnRun(start, run) == Player::kMachine);

  CHECK(WnRun(start, {{Player::kMachine, testing::kSpade}}) ==
        Player::kEnvironment);
  CHECK(WnRun(start, {{Player::kEnvironment, testing::kSpade}}) ==
        Player::kMachine);
  // The first illegal move decides, whatever follows.
  Adjudication adj =
      Adjudicate(start, {{Player::kEnvironment, "2.2.7"},
                         {Player::kEnvironment, "1.7"},
                         {Player::kMachine, testing::kSpade}});
  CHECK(adj.winner == Player::kMachine);
  CHECK(adj.illegal_at == 1u);

  GameState pq = MakeState(Parse("p & q"), AllFalse(2));
  CHECK(WnRun(pq, {{Player::kEnvironment, "1"}}) == Player::kEnvironment);
}

TEST_CASE("winnability by backward induction") {
  std::mt19937 rng(1);
  Formula decide = Parse("call x . (p(x) + ~p(x))");
  Formula copy = Parse("(p & q) \\/ (~p + ~q)");
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    Interpretation interp = testing::InterpretationFromBits({{"p", 1}}, 2, mask);
    CHECK(Winnable(MakeState(decide, interp)));
  }
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    Interpretation interp =
        testing::InterpretationFromBits({{"p", 0}, {"q", 0}}, 1, mask);
    CHECK(Winnable(MakeState(copy, interp)));
  }
  Interpretation p_true(1);
  p_true.Set("p", {}, true);
  CHECK(Winnable(MakeState(Parse("p + ~p"), p_true)));
  CHECK_FALSE(Winnable(MakeState(Parse("p & ~p"), p_true)));
  CHECK_FALSE(Winnable(MakeState(Parse("p"), AllFalse(1))));
}

TEST_CASE("elementary games are winnable iff true") {
  testing::GenOptions options;
  options.choice = false;
  testing::FormulaGenerator gen(5, options);
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.Next();
    auto tables = testing::Interpretations(testing::LettersOf(f), 2, 4, 4, rng);
    for (const Interpretation& interp : tables) {
      GameState s = MakeState(f, interp, {{"x", 1}});
      CHECK(Winnable(s) == (WnEmpty(s) == Player::kMachine));
    }
  }
}

TEST_CASE("delays") {
  LabMove a{Player::kMachine, "1"};
  LabMove b{Player::kEnvironment, "2"};
  auto d = Delays({a, b}, Player::kMachine);
  CHECK(d.size() == 2);
  CHECK(std::find(d.begin(), d.end(), Run{a, b}) != d.end());
  CHECK(std::find(d.begin(), d.end(), Run{b, a}) != d.end());
  CHECK(Delays({}, Player::kMachine) == std::vector<Run>{Run{}});
  CHECK(Delays({b, a}, Player::kMachine) == std::vector<Run>{Run{b, a}});
  // Adversary moves may slide earlier past several own moves.
  LabMove a2{Player::kMachine, "3"};
  CHECK(Delays({a, a2, b}, Player::kMachine).size() == 3);
  CHECK(Delays({a, a2, b}, Player::kEnvironment).size() == 1);
}

TEST_CASE("interpretation files") {
  Interpretation interp(2);
  interp.Set("p", {1}, true);
  interp.Set("r", {0, 1}, true);
  interp.DeclareLetter("s", 0);
  nlohmann::json j = InterpretationToJson(interp);
  Interpretation back = InterpretationFromJson(j);
  CHECK(back.Holds("p", {1}));
  CHECK_FALSE(back.Holds("p", {0}));
  CHECK(back.Holds("r", {0, 1}));
  CHECK(j["tables"]["r/2"].size() == 4);

  nlohmann::json partial = {{"domain", 2},
                            {"tables", {{"p/1", {{{0}, true}}}}}};
  CHECK_THROWS_AS(InterpretationFromJson(partial), Error);
  nlohmann::json out_of_range = {
      {"domain", 1}, {"tables", {{"p/1", {{{3}, true}}}}}};
  CHECK_THROWS_AS(InterpretationFromJson(out_of_range), Error);
  CHECK_THROWS_AS(InterpretationFromJson({{"domain", 0}}), Error);
}

TEST_CASE("engine agrees with the structural reference semantics") {
  testing::GenOptions options;
  options.max_depth = 3;
  options.max_arity = 2;
  options.letters = {{"p", 0}, {"q", 1}};
  options.variables = {"x", "y"};
  testing::FormulaGenerator gen(21, options);
  std::mt19937 rng(21);
  testing::PropertyReport report;
  for (int i = 0; i < 60; ++i) {
    Formula f = gen.Next();
    for (const Interpretation& interp :
         testing::Interpretations(testing::LettersOf(f), 2, 3, 4, rng)) {
      Valuation e = {{"x", 1}};
      testing::CheckPrefixation(f, interp, e, 3, report);
      testing::CheckDoubleNegation(f, interp, e, 2, report);
      testing::CheckDeMorgan({f, gen.Next()}, interp, e, 2, report);
      testing::CheckQuantifierDuality("x", f, interp, e, 2, report);
      for (int k = 0; k < 3; ++k) {
        testing::CheckStaticSample(f, interp, e, rng, report);
      }
    }
  }
  for (const std::string& s : report.examples) MESSAGE(s);
  CHECK(report.checks > 1000);
  CHECK(report.violations == 0);
}

TEST_CASE("valuation locality and instantiation") {
  testing::GenOptions options;
  options.variables = {"x", "y"};
  options.letters = {{"p", 1}, {"q", 0}};
  testing::FormulaGenerator gen(8, options);
  std::mt19937 rng(8);
  for (int i = 0; i < 150; ++i) {
    Formula f = gen.Next();
    auto tables = testing::Interpretations(testing::LettersOf(f), 2, 3, 3, rng);
    for (const Interpretation& interp : tables) {
      auto shared = std::make_shared<const Interpretation>(interp);
      Valuation e = {{"x", 1}, {"y", 0}};
      Valuation e2 = e;
      e2["unused"] = 1;
      if (!FreeVariables(f).count("y")) e2["y"] = 1;
      GameState a{f, shared, e};
      GameState b{f, shared, e2};
      CHECK(Winnable(a) == Winnable(b));
      Run run = testing::RandomLegalRun(f, 2, rng);
      CHECK(WnRun(a, run) == WnRun(b, run));

      // G[x/c] under e equals G under e[x:=c].
      for (Constant c = 0; c < 2; ++c) {
        Formula inst = Substitute(f, Term::Variable("x"), Term::Const(c));
        Valuation ec = e;
        ec["x"] = c;
        GameState si{inst, shared, e};
        GameState sv{f, shared, ec};
        CHECK(Winnable(si) == Winnable(sv));
        CHECK(WnEmpty(si) == WnEmpty(sv));
      }
    }
  }
}

}  // namespace
}  // namespace colog
