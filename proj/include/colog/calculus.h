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

#ifndef COLOG_CALCULUS_H_
#define COLOG_CALCULUS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colog/classical.h"
#include "colog/formula.h"
#include "json.hpp"

namespace colog {

enum class Rule { kA, kB1, kB2 };

const char* RuleName(Rule rule);  // "A", "B1", "B2"
Rule RuleFromName(const std::string& name);

// Which calculus a derivation is read in: proofs use CL2, refutations the
// dual system CL2°.
enum class System { kProof, kRefutation };

// How one premise arises from its conclusion: the occurrence addressed by
// `spec` is replaced by operand `index`, or by its body instantiated at
// `term`. For fresh-variable instantiations `fresh` is set and `term` is the
// variable used. `merge` is the free term that was additionally renamed to
// the fresh variable (the third kind of CL2° rule A obligation).
struct Detail {
  OccurrenceSpec spec;
  std::optional<std::size_t> index;
  std::optional<Term> term;
  bool fresh = false;
  std::optional<Term> merge;
  // Premise step id; used in rule A details only.
  std::optional<int> premise;

  nlohmann::json ToJson() const;
  static Detail FromJson(const nlohmann::json& j);
  friend bool operator==(const Detail&, const Detail&) = default;
};

struct Replacement {
  Formula premise;
  Detail detail;
};

// Premises that rule A of CL2 requires: one per operand of each positive
// surface choice conjunction (negative choice disjunction), and one per
// positive choice universal (negative choice existential) instantiated at
// FreshVariable(f).
std::vector<Replacement> RuleAObligations(const Formula& f);

// Candidate premises for B1 / B2 of CL2. B2 instantiates every machine-side
// choice quantifier at each candidate term that passes the capture
// condition.
std::vector<Replacement> EnumerateB1(const Formula& f);
std::vector<Replacement> EnumerateB2(const Formula& f,
                                     std::span<const Term> candidates);

// The CL2° counterparts. Rule A covers conditions (i)-(iii); B2 always
// instantiates at FreshVariable(f).
std::vector<Replacement> DualRuleAObligations(const Formula& f);
std::vector<Replacement> DualEnumerateB1(const Formula& f);
std::vector<Replacement> DualEnumerateB2(const Formula& f);

// Formula obtained from `f` by applying `detail`; nullopt when the detail
// does not address a suitable occurrence.
std::optional<Formula> ApplyDetail(const Formula& f, const Detail& detail);

// A premise among `premises` that equals the instance of the choice
// quantifier at `occ` at some variable y not occurring in f, with the free
// term `merge` (if given) renamed to y as well. The smallest such y wins.
struct FreshMatch {
  std::size_t premise;  // index into `premises`
  Term variable;
};
std::optional<FreshMatch> FindFreshInstance(const Formula& f,
                                            const ChoiceOccurrence& occ,
                                            const std::optional<Term>& merge,
                                            std::span<const Formula> premises);

// The detail of a B1/B2 step whose certificate line omits it: the
// replacement (meeting the side conditions of `system`) that turns f into
// `premise`.
std::optional<Detail> InferDetail(const Formula& f, const Formula& premise,
                                  Rule rule, System system);

struct Step {
  int id = 0;
  Formula formula = Formula::Top();
  Rule rule = Rule::kA;
  std::vector<int> premises;
  // One entry for B1/B2; for A either empty or one entry per obligation.
  std::vector<Detail> details;
};

struct Derivation {
  std::vector<Step> steps;

  const Formula& conclusion() const { return steps.back().formula; }
  const Step* Find(int id) const;
};

using Proof = Derivation;
using Refutation = Derivation;

nlohmann::json StepToJson(const Step& step);
Step StepFromJson(const nlohmann::json& j, ArityMap* arities = nullptr);

// One JSON object per line; blank lines are skipped. Throws Error naming
// the offending line.
Derivation ReadDerivation(std::istream& in);
Derivation ParseDerivation(const std::string& text);
std::string FormatDerivation(const Derivation& d);

struct CheckResult {
  enum class Status { kOk, kFailure, kStabilityUnverified };
  Status status = Status::kOk;
  int step = 0;  // failing step for kFailure
  std::string reason;
  // Steps whose (in)stability could not be settled within the budget.
  std::vector<int> unverified;

  bool ok() const { return status == Status::kOk; }
  std::string ToString() const;
};

CheckResult CheckDerivation(const Derivation& d, System system,
                            long budget = kDefaultValidityBudget);
inline CheckResult CheckProof(const Proof& pf,
                              long budget = kDefaultValidityBudget) {
  return CheckDerivation(pf, System::kProof, budget);
}
inline CheckResult CheckRefutation(const Refutation& rf,
                                   long budget = kDefaultValidityBudget) {
  return CheckDerivation(rf, System::kRefutation, budget);
}

}  // namespace colog

#endif  // COLOG_CALCULUS_H_
