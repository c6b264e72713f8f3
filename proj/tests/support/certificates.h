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

#ifndef COLOG_TESTS_SUPPORT_CERTIFICATES_H_
#define COLOG_TESTS_SUPPORT_CERTIFICATES_H_

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "colog/calculus.h"
#include "colog/parser.h"

namespace colog::testing {

// Hand-written derivation lines.
struct Line {
  int id;
  const char* formula;
  Rule rule;
  std::vector<int> premises;
  std::optional<Detail> detail = std::nullopt;
};

inline Derivation Build(const std::vector<Line>& lines) {
  Derivation d;
  for (const Line& l : lines) {
    Step s;
    s.id = l.id;
    s.formula = Parse(l.formula);
    s.rule = l.rule;
    s.premises = l.premises;
    if (l.detail) s.details.push_back(*l.detail);
    d.steps.push_back(std::move(s));
  }
  return d;
}

inline Detail TermDetail(const char* spec, Term t, bool fresh = false) {
  Detail d;
  d.spec = OccurrenceSpec::Parse(spec);
  d.term = std::move(t);
  d.fresh = fresh;
  return d;
}

inline Detail IndexDetail(const char* spec, std::size_t index) {
  Detail d;
  d.spec = OccurrenceSpec::Parse(spec);
  d.index = index;
  return d;
}

inline Term Rename(const Term& t, const std::map<std::string, std::string>& m) {
  if (!t.is_variable()) return t;
  auto it = m.find(t.name());
  return it == m.end() ? t : Term::Variable(it->second);
}

// Renames free occurrences of variables throughout a derivation, details
// included.
inline Derivation RenameVariables(const Derivation& d,
                                  const std::map<std::string, std::string>& m) {
  std::vector<std::pair<Term, Term>> bindings;
  for (const auto& [from, to] : m) {
    bindings.push_back({Term::Variable(from), Term::Variable(to)});
  }
  Derivation out = d;
  for (Step& s : out.steps) {
    s.formula = Substitute(s.formula, bindings);
    for (Detail& det : s.details) {
      if (det.term) det.term = Rename(*det.term, m);
      if (det.merge) det.merge = Rename(*det.merge, m);
    }
  }
  return out;
}

// Injective renaming of the variables that occur in the derivation but not
// in its conclusion onto random unused names.
inline std::map<std::string, std::string> RandomFreshRenaming(
    const Derivation& d, std::mt19937& rng) {
  std::set<std::string> used;
  for (const Step& s : d.steps) {
    for (const std::string& v : AllVariables(s.formula)) used.insert(v);
  }
  std::set<std::string> keep = AllVariables(d.conclusion());
  std::map<std::string, std::string> m;
  std::set<std::string> taken = used;
  for (const std::string& v : used) {
    if (keep.count(v)) continue;
    std::string name;
    do {
      name = "w" + std::to_string(rng() % 1000);
    } while (taken.count(name));
    taken.insert(name);
    m[v] = name;
  }
  return m;
}

}  // namespace colog::testing

#endif  // COLOG_TESTS_SUPPORT_CERTIFICATES_H_
