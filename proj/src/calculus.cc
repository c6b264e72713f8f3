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

#include "colog/calculus.h"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "colog/parser.h"

namespace colog {

const char* RuleName(Rule rule) {
  switch (rule) {
    case Rule::kA: return "A";
    case Rule::kB1: return "B1";
    case Rule::kB2: return "B2";
  }
  return "?";
}

Rule RuleFromName(const std::string& name) {
  if (name == "A") return Rule::kA;
  if (name == "B1") return Rule::kB1;
  if (name == "B2") return Rule::kB2;
  throw Error("unknown rule: " + name);
}

nlohmann::json Detail::ToJson() const {
  nlohmann::json j = {{"spec", spec.ToString()}};
  if (index) j["index"] = *index;
  if (term) j[fresh ? "fresh" : "term"] = term->ToString();
  if (merge) j["merge"] = merge->ToString();
  if (premise) j["premise"] = *premise;
  return j;
}

Detail Detail::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("spec")) {
    throw Error("detail needs a \"spec\" field");
  }
  Detail d;
  d.spec = OccurrenceSpec::Parse(j["spec"].get<std::string>());
  if (j.contains("index")) d.index = j["index"].get<std::size_t>();
  if (j.contains("term")) d.term = ParseTerm(j["term"].get<std::string>());
  if (j.contains("fresh")) {
    if (d.term) throw Error("detail has both \"term\" and \"fresh\"");
    d.term = ParseTerm(j["fresh"].get<std::string>());
    if (!d.term->is_variable()) throw Error("\"fresh\" must be a variable");
    d.fresh = true;
  }
  if (j.contains("merge")) d.merge = ParseTerm(j["merge"].get<std::string>());
  if (j.contains("premise")) d.premise = j["premise"].get<int>();
  if (d.index.has_value() == d.term.has_value()) {
    throw Error("detail needs exactly one of \"index\", \"term\", \"fresh\"");
  }
  return d;
}

namespace {

// True when the environment moves at the occurrence.
bool EnvironmentSide(const ChoiceOccurrence& occ) {
  return IsChoiceUniversalType(occ.kind) ==
         (occ.polarity == Polarity::kPositive);
}

Formula Instance(const Formula& f, const ChoiceOccurrence& occ,
                 const Term& term, const std::optional<Term>& merge) {
  Formula out = ReplaceAtPath(f, occ.path, Instantiate(occ.subformula, term));
  if (merge) out = Substitute(out, *merge, term);
  return out;
}

void AddOperands(const Formula& f, const ChoiceOccurrence& occ,
                 std::vector<Replacement>& out) {
  for (std::size_t i = 0; i < occ.subformula.arity(); ++i) {
    Detail d;
    d.spec = occ.spec;
    d.index = i + 1;
    out.push_back({ReplaceAtPath(f, occ.path, occ.subformula.child(i)), d});
  }
}

void AddFresh(const Formula& f, const ChoiceOccurrence& occ, const Term& y,
              const std::optional<Term>& merge,
              std::vector<Replacement>& out) {
  Detail d;
  d.spec = occ.spec;
  d.term = y;
  d.fresh = true;
  d.merge = merge;
  out.push_back({Instance(f, occ, y, merge), d});
}

// Obligations on the given side: operands and fresh instances, plus the
// merged instances when `merge` is set.
std::vector<Replacement> Obligations(const Formula& f, bool environment_side,
                                     bool merge) {
  std::vector<Replacement> out;
  Term y = FreshVariable(f);
  std::vector<Term> free_terms = FreeTerms(f);
  for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
    if (EnvironmentSide(occ) != environment_side) continue;
    if (!IsQuantifier(occ.kind)) {
      AddOperands(f, occ, out);
      continue;
    }
    AddFresh(f, occ, y, std::nullopt, out);
    if (!merge) continue;
    for (const Term& t : free_terms) AddFresh(f, occ, y, t, out);
  }
  return out;
}

std::vector<Replacement> Operands(const Formula& f, bool environment_side) {
  std::vector<Replacement> out;
  for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
    if (EnvironmentSide(occ) == environment_side && !IsQuantifier(occ.kind)) {
      AddOperands(f, occ, out);
    }
  }
  return out;
}

}  // namespace

std::vector<Replacement> RuleAObligations(const Formula& f) {
  return Obligations(f, true, false);
}

std::vector<Replacement> EnumerateB1(const Formula& f) {
  return Operands(f, false);
}

std::vector<Replacement> EnumerateB2(const Formula& f,
                                     std::span<const Term> candidates) {
  std::vector<Replacement> out;
  for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
    if (EnvironmentSide(occ) || !IsQuantifier(occ.kind)) continue;
    for (const Term& t : candidates) {
      if (!InstantiationIsCaptureFree(occ, t)) continue;
      Detail d;
      d.spec = occ.spec;
      d.term = t;
      out.push_back({Instance(f, occ, t, std::nullopt), d});
    }
  }
  return out;
}

std::vector<Replacement> DualRuleAObligations(const Formula& f) {
  return Obligations(f, false, true);
}

std::vector<Replacement> DualEnumerateB1(const Formula& f) {
  return Operands(f, true);
}

std::vector<Replacement> DualEnumerateB2(const Formula& f) {
  std::vector<Replacement> out;
  Term y = FreshVariable(f);
  for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
    if (EnvironmentSide(occ) && IsQuantifier(occ.kind)) {
      AddFresh(f, occ, y, std::nullopt, out);
    }
  }
  return out;
}

std::optional<Formula> ApplyDetail(const Formula& f, const Detail& detail) {
  auto occ = ResolveChoice(f, detail.spec);
  if (!occ) return std::nullopt;
  if (detail.index) {
    if (IsQuantifier(occ->kind) || *detail.index < 1 ||
        *detail.index > occ->subformula.arity()) {
      return std::nullopt;
    }
    return ReplaceAtPath(f, occ->path, occ->subformula.child(*detail.index - 1));
  }
  if (!detail.term || !IsQuantifier(occ->kind)) return std::nullopt;
  if (detail.merge && !detail.term->is_variable()) return std::nullopt;
  return Instance(f, *occ, *detail.term, detail.merge);
}

std::optional<FreshMatch> FindFreshInstance(const Formula& f,
                                            const ChoiceOccurrence& occ,
                                            const std::optional<Term>& merge,
                                            std::span<const Formula> premises) {
  std::set<std::string> in_f = AllVariables(f);
  std::optional<FreshMatch> best;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    std::set<std::string> candidates = AllVariables(premises[i]);
    candidates.insert(FreshVariable(f).name());
    for (const std::string& y : candidates) {
      if (in_f.count(y)) continue;
      if (best && !(Term::Variable(y) < best->variable)) continue;
      if (Instance(f, occ, Term::Variable(y), merge) == premises[i]) {
        best = FreshMatch{i, Term::Variable(y)};
      }
    }
  }
  return best;
}

std::optional<Detail> InferDetail(const Formula& f, const Formula& premise,
                                  Rule rule, System system) {
  bool proof = system == System::kProof;
  bool quantifier = rule == Rule::kB2;
  for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
    // B rules act on the machine's occurrences in proofs.
    if (EnvironmentSide(occ) == proof || IsQuantifier(occ.kind) != quantifier) {
      continue;
    }
    Detail d;
    d.spec = occ.spec;
    if (!quantifier) {
      for (std::size_t i = 0; i < occ.subformula.arity(); ++i) {
        if (ReplaceAtPath(f, occ.path, occ.subformula.child(i)) == premise) {
          d.index = i + 1;
          return d;
        }
      }
      continue;
    }
    std::set<Term> candidates = FreeTermSet(premise);
    for (const std::string& v : AllVariables(premise)) {
      candidates.insert(Term::Variable(v));
    }
    candidates.insert(FreshVariable(f));
    for (const Term& t : candidates) {
      if (!(Instance(f, occ, t, std::nullopt) == premise)) continue;
      bool fresh = t.is_variable() && !Occurs(f, t);
      if (proof ? InstantiationIsCaptureFree(occ, t) : fresh) {
        d.term = t;
        d.fresh = fresh;
        return d;
      }
    }
  }
  return std::nullopt;
}

const Step* Derivation::Find(int id) const {
  auto it = std::lower_bound(
      steps.begin(), steps.end(), id,
      [](const Step& s, int value) { return s.id < value; });
  if (it == steps.end() || it->id != id) return nullptr;
  return &*it;
}

nlohmann::json StepToJson(const Step& step) {
  nlohmann::json j = {{"id", step.id},
                      {"formula", Print(step.formula)},
                      {"rule", RuleName(step.rule)},
                      {"premises", step.premises}};
  if (step.rule == Rule::kA) {
    if (!step.details.empty()) {
      nlohmann::json list = nlohmann::json::array();
      for (const Detail& d : step.details) list.push_back(d.ToJson());
      j["detail"] = {{"obligations", std::move(list)}};
    }
  } else if (!step.details.empty()) {
    j["detail"] = step.details.front().ToJson();
  }
  return j;
}

Step StepFromJson(const nlohmann::json& j, ArityMap* arities) {
  if (!j.is_object()) throw Error("step must be a JSON object");
  for (const char* key : {"id", "formula", "rule"}) {
    if (!j.contains(key)) throw Error(std::string("step lacks \"") + key + "\"");
  }
  Step step;
  step.id = j["id"].get<int>();
  step.formula = Parse(j["formula"].get<std::string>(), arities);
  step.rule = RuleFromName(j["rule"].get<std::string>());
  if (j.contains("premises")) step.premises = j["premises"].get<std::vector<int>>();
  if (j.contains("detail") && !j["detail"].is_null()) {
    const nlohmann::json& d = j["detail"];
    if (d.is_object() && d.contains("obligations")) {
      for (const auto& entry : d["obligations"]) {
        step.details.push_back(Detail::FromJson(entry));
      }
    } else if (d.is_object() && !d.empty()) {
      step.details.push_back(Detail::FromJson(d));
    }
  }
  return step;
}

Derivation ReadDerivation(std::istream& in) {
  Derivation d;
  ArityMap arities;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      d.steps.push_back(StepFromJson(nlohmann::json::parse(line), &arities));
    } catch (const std::exception& e) {
      throw Error("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (d.steps.empty()) throw Error("derivation has no steps");
  return d;
}

Derivation ParseDerivation(const std::string& text) {
  std::istringstream in(text);
  return ReadDerivation(in);
}

std::string FormatDerivation(const Derivation& d) {
  std::string out;
  for (const Step& s : d.steps) out += StepToJson(s).dump() + "\n";
  return out;
}

std::string CheckResult::ToString() const {
  switch (status) {
    case Status::kOk: return "ok";
    case Status::kFailure:
      return "failure(" + std::to_string(step) + ", " + reason + ")";
    case Status::kStabilityUnverified: {
      std::string ids;
      for (int id : unverified) ids += (ids.empty() ? "" : ",") + std::to_string(id);
      return "stability_unverified(" + ids + ")";
    }
  }
  return "?";
}

namespace {

struct StepFailure {
  std::string reason;
};

class Checker {
 public:
  Checker(const Derivation& d, System system, long budget)
      : d_(d), proof_(system == System::kProof), budget_(budget) {}

  CheckResult Run() {
    CheckResult result;
    if (d_.steps.empty()) return Fail(result, 0, "empty derivation");
    for (std::size_t i = 1; i < d_.steps.size(); ++i) {
      if (d_.steps[i].id <= d_.steps[i - 1].id) {
        return Fail(result, d_.steps[i].id, "ids must increase");
      }
    }
    std::set<std::string> seen;
    for (const Step& s : d_.steps) {
      if (!seen.insert(Print(s.formula)).second) {
        return Fail(result, s.id, "repeated formula");
      }
      for (int p : s.premises) {
        if (p >= s.id || d_.Find(p) == nullptr) {
          return Fail(result, s.id,
                      "premise " + std::to_string(p) + " does not precede");
        }
      }
      std::optional<std::string> failure = CheckStep(s, result.unverified);
      if (failure) return Fail(result, s.id, *failure);
    }
    if (!result.unverified.empty()) {
      result.status = CheckResult::Status::kStabilityUnverified;
    }
    return result;
  }

 private:
  static CheckResult Fail(CheckResult& r, int step, std::string reason) {
    r.status = CheckResult::Status::kFailure;
    r.step = step;
    r.reason = std::move(reason);
    return r;
  }

  // Rule A quantifies over the environment's occurrences in proofs and over
  // the machine's in refutations; B1/B2 the other way round.
  bool ASide() const { return proof_; }

  std::optional<std::string> CheckStep(const Step& s, std::vector<int>& unverified) {
    switch (s.rule) {
      case Rule::kA: return CheckA(s, unverified);
      case Rule::kB1: return CheckB(s, false);
      case Rule::kB2: return CheckB(s, true);
    }
    return "unknown rule";
  }

  std::optional<std::string> CheckA(const Step& s, std::vector<int>& unverified) {
    const Formula& f = s.formula;
    ValidityVerdict v = ClassicalValidity(Elementarize(f), budget_);
    if (v.kind == ValidityVerdict::Kind::kUnknown) {
      unverified.push_back(s.id);
    } else if (proof_ && !v.valid()) {
      return "instable";
    } else if (!proof_ && !v.invalid()) {
      return "stable";
    }
    std::vector<Formula> premises;
    for (int p : s.premises) premises.push_back(d_.Find(p)->formula);

    for (const Detail& d : s.details) {
      if (!d.premise) continue;
      auto it = std::find(s.premises.begin(), s.premises.end(), *d.premise);
      if (it == s.premises.end()) {
        return "detail names uncited premise " + std::to_string(*d.premise);
      }
      if (auto why = CheckReplacement(f, d, ASide(), d.merge.has_value())) {
        return *why;
      }
      if (!(*ApplyDetail(f, d) == d_.Find(*d.premise)->formula)) {
        return "replacement mismatch for premise " + std::to_string(*d.premise);
      }
    }

    Term fresh = FreshVariable(f);
    std::vector<Term> free_terms = FreeTerms(f);
    for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
      if (EnvironmentSide(occ) != ASide()) continue;
      if (!IsQuantifier(occ.kind)) {
        for (std::size_t i = 0; i < occ.subformula.arity(); ++i) {
          Formula want = ReplaceAtPath(f, occ.path, occ.subformula.child(i));
          if (std::find(premises.begin(), premises.end(), want) ==
              premises.end()) {
            return "missing obligation " + Print(want);
          }
        }
        continue;
      }
      if (!HasFreshInstance(f, occ, std::nullopt, premises)) {
        return "missing obligation " +
               Print(Instance(f, occ, fresh, std::nullopt));
      }
      if (proof_) continue;
      for (const Term& t : free_terms) {
        if (!HasFreshInstance(f, occ, t, premises)) {
          return "missing obligation " + Print(Instance(f, occ, fresh, t));
        }
      }
    }
    return std::nullopt;
  }

  static bool HasFreshInstance(const Formula& f, const ChoiceOccurrence& occ,
                               const std::optional<Term>& merge,
                               const std::vector<Formula>& premises) {
    return FindFreshInstance(f, occ, merge, premises).has_value();
  }

  // Side conditions of a single replacement, short of comparing formulas.
  std::optional<std::string> CheckReplacement(const Formula& f, const Detail& d,
                                              bool environment_side,
                                              bool merge_allowed) const {
    auto occ = ResolveChoice(f, d.spec);
    if (!occ) return "no choice occurrence at \"" + d.spec.ToString() + "\"";
    if (EnvironmentSide(*occ) != environment_side) {
      return "occurrence at \"" + d.spec.ToString() + "\" has the wrong polarity";
    }
    if (!ApplyDetail(f, d)) return "detail does not fit the occurrence";
    if (d.merge && !merge_allowed) return "unexpected merge";
    if (d.term && d.merge) {
      if (!FreeTermSet(f).count(*d.merge)) {
        return "merged term is not free in the conclusion";
      }
    }
    if (d.term && (d.fresh || !proof_ || d.merge) && Occurs(f, *d.term)) {
      return "variable " + d.term->ToString() + " is not fresh";
    }
    if (d.term && proof_ && !InstantiationIsCaptureFree(*occ, *d.term)) {
      return "capture";
    }
    return std::nullopt;
  }

  std::optional<std::string> CheckB(const Step& s, bool quantifier) {
    const char* name = quantifier ? "B2" : "B1";
    if (s.premises.size() != 1) {
      return std::string(name) + " needs exactly one premise";
    }
    const Formula& f = s.formula;
    const Formula& premise = d_.Find(s.premises[0])->formula;
    bool side = !ASide();
    if (!s.details.empty()) {
      const Detail& d = s.details.front();
      if (quantifier == d.index.has_value()) {
        return std::string(name) + " detail of the wrong kind";
      }
      if (auto why = CheckReplacement(f, d, side, false)) return *why;
      if (!(*ApplyDetail(f, d) == premise)) return "replacement mismatch";
      return std::nullopt;
    }
    bool captured = false;
    for (const ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
      if (EnvironmentSide(occ) != side || IsQuantifier(occ.kind) != quantifier) {
        continue;
      }
      if (!quantifier) {
        for (std::size_t i = 0; i < occ.subformula.arity(); ++i) {
          if (ReplaceAtPath(f, occ.path, occ.subformula.child(i)) == premise) {
            return std::nullopt;
          }
        }
        continue;
      }
      std::set<Term> candidates = FreeTermSet(premise);
      for (const std::string& v : AllVariables(premise)) {
        candidates.insert(Term::Variable(v));
      }
      candidates.insert(FreshVariable(f));
      for (const Term& t : candidates) {
        if (!(Instance(f, occ, t, std::nullopt) == premise)) continue;
        if (proof_ ? InstantiationIsCaptureFree(occ, t)
                   : t.is_variable() && !Occurs(f, t)) {
          return std::nullopt;
        }
        captured = true;
      }
    }
    if (captured) return proof_ ? "capture" : "variable is not fresh";
    return "premise is not a " + std::string(name) + " instance";
  }

  const Derivation& d_;
  bool proof_;
  long budget_;
};

}  // namespace

CheckResult CheckDerivation(const Derivation& d, System system, long budget) {
  return Checker(d, system, budget).Run();
}

}  // namespace colog
