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

#ifndef COLOG_CLASSICAL_H_
#define COLOG_CLASSICAL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "colog/formula.h"

namespace colog {

// Syntactic atom identity: letter plus argument tuple.
using AtomKey = std::pair<std::string, std::vector<Term>>;
// Truth values per atom key; keys not listed are false.
using Assignment = std::map<AtomKey, bool>;

std::string AtomKeyToString(const AtomKey& key);

// Evaluates a quantifier-free elementary formula. Throws Error otherwise.
bool Evaluate(const Formula& f, const Assignment& assignment);

bool IsTautology(const Formula& f);
// Returns an assignment, total on the atom keys of f, that makes f false.
// Throws Error when f is a tautology.
Assignment FalsifyingAssignment(const Formula& f);
std::optional<Assignment> FindFalsifyingAssignment(const Formula& f);

// A finite classical model falsifying a quantified formula. Free terms are
// mapped to elements 0..domain-1; `ground` lists atom truth values over
// element tuples (stored as constant terms), absent entries false.
struct FiniteModel {
  Constant domain = 1;
  std::map<Term, Constant> terms;
  Assignment ground;
};

// Evaluates an elementary formula (possibly quantified) in a finite model.
bool EvaluateInModel(const Formula& f, const FiniteModel& model);

struct ValidityVerdict {
  enum class Kind { kValid, kInvalid, kUnknown };
  Kind kind = Kind::kUnknown;
  // Set for Invalid verdicts on quantifier-free input.
  std::optional<Assignment> assignment;
  // Set for Invalid verdicts on quantified input.
  std::optional<FiniteModel> model;

  bool valid() const { return kind == Kind::kValid; }
  bool invalid() const { return kind == Kind::kInvalid; }
};

const char* VerdictName(ValidityVerdict::Kind kind);

inline constexpr std::int64_t kDefaultValidityBudget = 200000;
inline constexpr Constant kMaxModelDomain = 4;

// Classical validity of an elementary formula. Quantifier-free input is
// decided exactly. Quantified input runs a bounded tableau (for Valid) and
// a finite-model search over domains 1..kMaxModelDomain (for Invalid),
// splitting `budget` between them; Unknown when both give up.
ValidityVerdict ClassicalValidity(const Formula& f,
                                  std::int64_t budget = kDefaultValidityBudget);

}  // namespace colog

#endif  // COLOG_CLASSICAL_H_
