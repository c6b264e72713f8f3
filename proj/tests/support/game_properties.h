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

#ifndef COLOG_TESTS_SUPPORT_GAME_PROPERTIES_H_
#define COLOG_TESTS_SUPPORT_GAME_PROPERTIES_H_

#include <random>
#include <set>
#include <string>
#include <vector>

#include "colog/game.h"
#include "colog/parser.h"
#include "support/game_enumeration.h"
#include "support/reference_semantics.h"

namespace colog::testing {

struct PropertyReport {
  long checks = 0;
  long violations = 0;
  std::vector<std::string> examples;

  void Expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++violations;
    if (examples.size() < 5) examples.push_back(what);
  }
};

inline std::string Describe(const Formula& f, const Run& run) {
  std::string out = Print(f) + " run <";
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (i) out += ",";
    out += run[i].ToString();
  }
  return out + ">";
}

inline std::set<std::string> MoveSet(const Formula& f, Player p,
                                     Constant domain) {
  std::set<std::string> out;
  for (const MoveToken& t : LegalMoves(f, p, domain)) out.insert(t.ToString());
  return out;
}

// Engine vs. reference on every run up to `depth`: winners, prefixation
// (winner of <m>.D equals winner of D on the brought-down game) and the
// legal-move sets of every reached position.
inline void CheckPrefixation(const Formula& f, const Interpretation& interp,
                             const Valuation& e, int depth,
                             PropertyReport& report) {
  auto shared = std::make_shared<const Interpretation>(interp);
  GameState start{f, shared, e};
  ReferenceGame ref(interp);
  Constant d = interp.domain();
  ForEachRun(f, d, depth, [&](const Run& run) {
    RefRun rr = ToRef(run);
    Player reference = ref.Winner(f, e, rr);
    Adjudication adj = Adjudicate(start, run);
    report.Expect(adj.winner == reference, "winner " + Describe(f, run));
    if (!run.empty() && LegalMove(f, run[0].player, run[0].move, d)) {
      GameState next = ApplyMove(start, run[0]);
      Run rest(run.begin() + 1, run.end());
      report.Expect(WnRun(next, rest) == reference,
                    "prefixation " + Describe(f, run));
    }
    if (!adj.illegal_at) {
      for (const LabMove& m : CandidateMoves(adj.final_state.formula, d)) {
        RefRun extended = rr;
        extended.push_back({m.player, m.move});
        bool engine = LegalMove(adj.final_state.formula, m.player, m.move, d)
                          .has_value();
        report.Expect(engine == ref.Legal(f, e, extended),
                      "legality of " + m.ToString() + " after " +
                          Describe(f, run));
      }
    }
  });
}

// Games g and h must agree on legal moves and winners along every run of g
// up to `depth`, moves translated by identity.
inline void CheckSameGame(const Formula& g, const Formula& h,
                          const Interpretation& interp, const Valuation& e,
                          int depth, const std::string& label,
                          PropertyReport& report) {
  auto shared = std::make_shared<const Interpretation>(interp);
  GameState sg{g, shared, e};
  GameState sh{h, shared, e};
  Constant d = interp.domain();
  ForEachRun(g, d, depth, [&](const Run& run) {
    Adjudication ag = Adjudicate(sg, run);
    Adjudication ah = Adjudicate(sh, run);
    report.Expect(ag.winner == ah.winner && ag.illegal_at == ah.illegal_at,
                  label + " winner " + Describe(g, run));
    if (!ag.illegal_at && !ah.illegal_at) {
      for (Player p : {Player::kMachine, Player::kEnvironment}) {
        report.Expect(MoveSet(ag.final_state.formula, p, d) ==
                          MoveSet(ah.final_state.formula, p, d),
                      label + " moves " + Describe(g, run));
      }
    }
  });
}

inline void CheckDoubleNegation(const Formula& f, const Interpretation& interp,
                                const Valuation& e, int depth,
                                PropertyReport& report) {
  CheckSameGame(f, Formula::Not(Formula::Not(f)), interp, e, depth,
                "double negation", report);
}

// A1 + ... + An vs ~(~A1 & ... & ~An) and the dual forms.
inline void CheckDeMorgan(const std::vector<Formula>& operands,
                          const Interpretation& interp, const Valuation& e,
                          int depth, PropertyReport& report) {
  std::vector<Formula> negated;
  for (const Formula& a : operands) negated.push_back(Formula::Not(a));
  CheckSameGame(Formula::ChoiceOr(operands),
                Formula::Not(Formula::ChoiceAnd(negated)), interp, e, depth,
                "de morgan +", report);
  CheckSameGame(Formula::ChoiceAnd(operands),
                Formula::Not(Formula::ChoiceOr(negated)), interp, e, depth,
                "de morgan &", report);
}

inline void CheckQuantifierDuality(const std::string& var, const Formula& body,
                                   const Interpretation& interp,
                                   const Valuation& e, int depth,
                                   PropertyReport& report) {
  CheckSameGame(Formula::ChoiceExists(var, body),
                Formula::Not(Formula::ChoiceForall(var, Formula::Not(body))),
                interp, e, depth, "cex duality", report);
}

// Samples a legal run, its winner w, and a random w-delay; the delay must be
// won by w as well.
inline void CheckStaticSample(const Formula& f, const Interpretation& interp,
                              const Valuation& e, std::mt19937& rng,
                              PropertyReport& report) {
  auto shared = std::make_shared<const Interpretation>(interp);
  GameState start{f, shared, e};
  Run run = RandomLegalRun(f, interp.domain(), rng);
  Player w = WnRun(start, run);
  std::vector<Run> delays = Delays(run, w);
  const Run& delayed = delays[rng() % delays.size()];
  report.Expect(WnRun(start, delayed) == w,
                "static " + Describe(f, run) + " delayed " +
                    Describe(f, delayed));
}

}  // namespace colog::testing

#endif  // COLOG_TESTS_SUPPORT_GAME_PROPERTIES_H_
