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

#include "colog/decider.h"

#include <chrono>
#include <istream>
#include <map>
#include <stdexcept>
#include <utility>

#include "colog/classical.h"
#include "colog/parser.h"

namespace colog {

std::string MemoKey(const Formula& f) { return Print(CanonicalRenaming(f)); }

std::optional<Decider::Justification> Decider::Justify(const Formula& f) {
  if (ContainsBlindQuantifier(f)) {
    throw Error("the decider does not handle blind quantifiers: " + Print(f));
  }
  if (IsTautology(Elementarize(f))) {
    std::vector<Replacement> obligations = RuleAObligations(f);
    bool all = true;
    for (const Replacement& r : obligations) {
      if (!Provable(r.premise)) {
        all = false;
        break;
      }
    }
    if (all) return Justification{Rule::kA, std::move(obligations)};
  }
  for (Replacement& r : EnumerateB1(f)) {
    if (Provable(r.premise)) return Justification{Rule::kB1, {std::move(r)}};
  }
  std::vector<Term> candidates = {FreshVariable(f)};
  for (const Term& t : FreeTerms(f)) candidates.push_back(t);
  for (Replacement& r : EnumerateB2(f, candidates)) {
    if (Provable(r.premise)) {
      if (r.detail.term == candidates.front()) r.detail.fresh = true;
      return Justification{Rule::kB2, {std::move(r)}};
    }
  }
  return std::nullopt;
}

bool Decider::Provable(const Formula& f) {
  std::string key = MemoKey(f);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool result = Justify(f).has_value();
  memo_.emplace(std::move(key), result);
  return result;
}

namespace {

class Assembler {
 public:
  explicit Assembler(Decider& decider) : decider_(decider) {}

  int Prove(const Formula& f) {
    std::string text = Print(f);
    if (auto it = ids_.find(text); it != ids_.end()) return it->second;
    auto j = decider_.Justify(f);
    if (!j) throw std::logic_error("no proof of " + text);
    Step step;
    step.formula = f;
    step.rule = j->rule;
    for (const Replacement& r : j->premises) {
      Link(step, Prove(r.premise), r.detail);
    }
    return Emit(std::move(step), std::move(text));
  }

  int Refute(const Formula& f) {
    std::string text = Print(f);
    if (auto it = ids_.find(text); it != ids_.end()) return it->second;
    Step step;
    step.formula = f;
    if (!IsTautology(Elementarize(f))) {
      step.rule = Rule::kA;
      for (const Replacement& r : DualRuleAObligations(f)) {
        Link(step, Refute(r.premise), r.detail);
      }
    } else {
      // Stable and unprovable, so some rule A obligation of CL2 fails; its
      // premise is refuted through B1 or B2 of CL2°.
      std::optional<Replacement> witness;
      for (Replacement& r : RuleAObligations(f)) {
        if (!decider_.Provable(r.premise)) {
          witness = std::move(r);
          break;
        }
      }
      if (!witness) throw std::logic_error("no refutation of " + text);
      step.rule = witness->detail.index ? Rule::kB1 : Rule::kB2;
      Link(step, Refute(witness->premise), witness->detail);
    }
    return Emit(std::move(step), std::move(text));
  }

  Derivation Take() { return std::move(out_); }

 private:
  static void Link(Step& step, int id, Detail detail) {
    bool cited = false;
    for (int p : step.premises) cited = cited || p == id;
    if (!cited) step.premises.push_back(id);
    if (step.rule == Rule::kA) detail.premise = id;
    step.details.push_back(std::move(detail));
  }

  int Emit(Step step, std::string text) {
    step.id = next_++;
    ids_.emplace(std::move(text), step.id);
    out_.steps.push_back(std::move(step));
    return out_.steps.back().id;
  }

  Decider& decider_;
  Derivation out_;
  std::map<std::string, int> ids_;
  int next_ = 1;
};

}  // namespace

Proof Decider::ProofOf(const Formula& f) {
  Assembler a(*this);
  a.Prove(f);
  return a.Take();
}

Refutation Decider::RefutationOf(const Formula& f) {
  if (Provable(f)) throw Error("formula is provable: " + Print(f));
  Assembler a(*this);
  a.Refute(f);
  return a.Take();
}

Verdict Decider::Decide(const Formula& f) {
  if (Provable(f)) return {true, ProofOf(f)};
  return {false, RefutationOf(f)};
}

Verdict Decide(const Formula& f) {
  Decider decider;
  return decider.Decide(f);
}

namespace {

std::string Trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<CorpusEntry> ReadCorpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string text = Trim(line);
    if (text.empty() || text[0] == '#') continue;
    CorpusEntry entry;
    entry.line = number;
    std::size_t bar = text.find('|');
    if (bar == std::string::npos) {
      entry.text = text;
    } else {
      std::string label = Trim(text.substr(0, bar));
      entry.text = Trim(text.substr(bar + 1));
      if (label == "provable") {
        entry.expected = true;
      } else if (label == "unprovable") {
        entry.expected = false;
      } else {
        entry.error = "unknown verdict label '" + label + "'";
      }
    }
    if (entry.error.empty()) {
      try {
        Parse(entry.text);
      } catch (const SyntaxError& e) {
        entry.error = e.what();
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

CorpusReport DecideCorpus(const std::vector<CorpusEntry>& entries) {
  CorpusReport report;
  Decider decider;
  for (const CorpusEntry& entry : entries) {
    CorpusRow row;
    row.entry = entry;
    if (!entry.error.empty()) {
      ++report.errors;
      report.rows.push_back(std::move(row));
      continue;
    }
    auto start = std::chrono::steady_clock::now();
    try {
      Verdict v = decider.Decide(Parse(entry.text));
      row.provable = v.provable;
      row.certificate_steps = v.certificate.steps.size();
      row.check = CheckDerivation(
          v.certificate, v.provable ? System::kProof : System::kRefutation);
    } catch (const Error& e) {
      row.entry.error = e.what();
      ++report.errors;
    }
    row.millis = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
    if (row.entry.error.empty() && !row.matches()) ++report.mismatches;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace colog
