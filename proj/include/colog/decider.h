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

#ifndef COLOG_DECIDER_H_
#define COLOG_DECIDER_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "colog/calculus.h"
#include "colog/formula.h"

namespace colog {

// Print of the canonical renaming; alpha-variants share a key.
std::string MemoKey(const Formula& f);

struct Verdict {
  bool provable = false;
  // A CL2 proof when provable, a CL2° refutation otherwise.
  Derivation certificate;
};

// Decision procedure for formulas without blind quantifiers. Results are
// memoized per instance; reuse one Decider across related queries.
class Decider {
 public:
  // The rule (and premises) by which f is derivable, trying A, then B1,
  // then B2. Nullopt when f is unprovable. Throws Error on blind
  // quantifiers.
  struct Justification {
    Rule rule;
    std::vector<Replacement> premises;
  };
  std::optional<Justification> Justify(const Formula& f);

  bool Provable(const Formula& f);
  Verdict Decide(const Formula& f);
  Proof ProofOf(const Formula& f);
  Refutation RefutationOf(const Formula& f);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::unordered_map<std::string, bool> memo_;
};

Verdict Decide(const Formula& f);

// Corpus files hold one "provable | <formula>" or "unprovable | <formula>"
// per line; a bare formula carries no expectation. Blank lines and lines
// starting with '#' are ignored.
struct CorpusEntry {
  int line = 0;
  std::string text;
  std::optional<bool> expected;
  // Set when the line could not be read.
  std::string error;
};

std::vector<CorpusEntry> ReadCorpus(std::istream& in);

struct CorpusRow {
  CorpusEntry entry;
  std::optional<bool> provable;
  CheckResult check;
  std::size_t certificate_steps = 0;
  double millis = 0;

  bool matches() const {
    return entry.error.empty() && provable && check.ok() &&
           (!entry.expected || *entry.expected == *provable);
  }
};

struct CorpusReport {
  std::vector<CorpusRow> rows;
  int mismatches = 0;  // wrong verdicts or failed certificate checks
  int errors = 0;      // unreadable lines

  bool ok() const { return mismatches == 0 && errors == 0; }
};

CorpusReport DecideCorpus(const std::vector<CorpusEntry>& entries);

}  // namespace colog

#endif  // COLOG_DECIDER_H_
