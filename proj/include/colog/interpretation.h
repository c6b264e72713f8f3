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

#ifndef COLOG_INTERPRETATION_H_
#define COLOG_INTERPRETATION_H_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "colog/formula.h"
#include "json.hpp"

namespace colog {

// Variable assignment; variables outside the map evaluate to 0.
using Valuation = std::map<std::string, Constant>;

Constant ValueOf(const Valuation& e, const Term& t);

// Finite interpretation over the constants 0..domain-1. Predicate tables are
// stored sparsely; unlisted tuples are false.
class Interpretation {
 public:
  using Entry = std::pair<std::string, std::vector<Constant>>;

  explicit Interpretation(Constant domain = 1);

  Constant domain() const { return domain_; }

  // Throws Error on out-of-domain arguments or an arity clash.
  void Set(const std::string& letter, std::vector<Constant> args, bool value);
  bool Holds(const std::string& letter,
             const std::vector<Constant>& args) const;

  // Registers a letter without listing any true tuple.
  void DeclareLetter(const std::string& letter, std::size_t arity);
  const std::map<std::string, std::size_t>& arities() const {
    return arities_;
  }
  const std::map<Entry, bool>& entries() const { return entries_; }

 private:
  Constant domain_;
  std::map<std::string, std::size_t> arities_;
  std::map<Entry, bool> entries_;
};

// {"domain": d, "tables": {"p/2": [[[0, 1], true], ...]}} with every tuple
// of every listed letter present exactly once.
Interpretation InterpretationFromJson(const nlohmann::json& j);
nlohmann::json InterpretationToJson(const Interpretation& interp);

Valuation ValuationFromJson(const nlohmann::json& j);
nlohmann::json ValuationToJson(const Valuation& e);

}  // namespace colog

#endif  // COLOG_INTERPRETATION_H_
