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

#ifndef COLOG_TESTS_SUPPORT_TRUTH_TABLE_H_
#define COLOG_TESTS_SUPPORT_TRUTH_TABLE_H_

#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "colog/formula.h"

namespace colog::testing {

using Key = std::pair<std::string, std::vector<Term>>;

// Direct recursive evaluation, independent of the library's evaluator.
inline bool TruthValue(const Formula& f, const std::map<Key, bool>& row) {
  switch (f.op()) {
    case Op::kTop: return true;
    case Op::kBot: return false;
    case Op::kAtom: return row.at({f.letter(), f.args()});
    case Op::kNot: return !TruthValue(f.body(), row);
    case Op::kAnd: {
      bool v = true;
      for (const Formula& c : f.children()) v = v && TruthValue(c, row);
      return v;
    }
    case Op::kOr: {
      bool v = false;
      for (const Formula& c : f.children()) v = v || TruthValue(c, row);
      return v;
    }
    case Op::kImplies:
      return !TruthValue(f.child(0), row) || TruthValue(f.child(1), row);
    default:
      throw std::logic_error("truth table needs quantifier-free elementary");
  }
}

inline std::vector<Key> Keys(const Formula& f) {
  std::vector<Key> keys;
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->op() == Op::kAtom) {
      Key k{g->letter(), g->args()};
      bool seen = false;
      for (const Key& e : keys) seen = seen || e == k;
      if (!seen) keys.push_back(std::move(k));
    }
    for (const Formula& c : g->children()) stack.push_back(&c);
  }
  return keys;
}

// Enumerates all 2^n rows over the atom keys of f.
inline bool TruthTableTautology(const Formula& f) {
  std::vector<Key> keys = Keys(f);
  for (std::size_t mask = 0; mask < (std::size_t{1} << keys.size()); ++mask) {
    std::map<Key, bool> row;
    for (std::size_t i = 0; i < keys.size(); ++i) row[keys[i]] = (mask >> i) & 1;
    if (!TruthValue(f, row)) return false;
  }
  return true;
}

}  // namespace colog::testing

#endif  // COLOG_TESTS_SUPPORT_TRUTH_TABLE_H_
