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

#include "colog/interpretation.h"

#include <set>

namespace colog {

Constant ValueOf(const Valuation& e, const Term& t) {
  if (t.is_constant()) return t.value();
  auto it = e.find(t.name());
  return it == e.end() ? 0 : it->second;
}

Interpretation::Interpretation(Constant domain) : domain_(domain) {
  if (domain < 1) throw Error("interpretation domain must be nonempty");
}

void Interpretation::DeclareLetter(const std::string& letter,
                                   std::size_t arity) {
  auto [it, inserted] = arities_.emplace(letter, arity);
  if (!inserted && it->second != arity) {
    throw Error("arity conflict for predicate letter '" + letter + "'");
  }
}

void Interpretation::Set(const std::string& letter, std::vector<Constant> args,
                         bool value) {
  DeclareLetter(letter, args.size());
  for (Constant c : args) {
    if (c >= domain_) {
      throw Error("constant " + std::to_string(c) + " outside domain of size " +
                  std::to_string(domain_));
    }
  }
  entries_[{letter, std::move(args)}] = value;
}

bool Interpretation::Holds(const std::string& letter,
                           const std::vector<Constant>& args) const {
  auto it = entries_.find({letter, args});
  return it != entries_.end() && it->second;
}

namespace {

std::pair<std::string, std::size_t> SplitSignature(const std::string& sig) {
  auto slash = sig.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == sig.size()) {
    throw Error("table key must look like \"p/2\": " + sig);
  }
  std::size_t arity = 0;
  for (char c : sig.substr(slash + 1)) {
    if (c < '0' || c > '9') throw Error("bad arity in table key " + sig);
    arity = arity * 10 + static_cast<std::size_t>(c - '0');
  }
  return {sig.substr(0, slash), arity};
}

}  // namespace

Interpretation InterpretationFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("domain")) {
    throw Error("interpretation needs a \"domain\" field");
  }
  if (!j["domain"].is_number_unsigned() || j["domain"].get<Constant>() < 1) {
    throw Error("interpretation domain must be a positive integer");
  }
  Interpretation interp(j["domain"].get<Constant>());
  Constant d = interp.domain();
  if (!j.contains("tables")) return interp;
  if (!j["tables"].is_object()) throw Error("\"tables\" must be an object");
  for (const auto& [sig, rows] : j["tables"].items()) {
    auto [letter, arity] = SplitSignature(sig);
    if (!rows.is_array()) throw Error("table " + sig + " must be an array");
    interp.DeclareLetter(letter, arity);
    std::set<std::vector<Constant>> seen;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_array() ||
          !row[1].is_boolean()) {
        throw Error("table " + sig + " rows must be [[args...], bool]");
      }
      std::vector<Constant> args;
      for (const auto& a : row[0]) {
        if (!a.is_number_unsigned()) {
          throw Error("table " + sig + " arguments must be naturals");
        }
        args.push_back(a.get<Constant>());
      }
      if (args.size() != arity) {
        throw Error("table " + sig + " row has wrong arity");
      }
      if (!seen.insert(args).second) {
        throw Error("table " + sig + " lists a tuple twice");
      }
      interp.Set(letter, args, row[1].get<bool>());
    }
    double expected = 1;
    for (std::size_t i = 0; i < arity; ++i) expected *= static_cast<double>(d);
    if (static_cast<double>(seen.size()) != expected) {
      throw Error("table " + sig + " is partial: " +
                  std::to_string(seen.size()) + " of " +
                  std::to_string(static_cast<long long>(expected)) +
                  " tuples listed");
    }
  }
  return interp;
}

nlohmann::json InterpretationToJson(const Interpretation& interp) {
  nlohmann::json tables = nlohmann::json::object();
  Constant d = interp.domain();
  for (const auto& [letter, arity] : interp.arities()) {
    nlohmann::json rows = nlohmann::json::array();
    std::vector<Constant> args(arity, 0);
    for (;;) {
      rows.push_back({args, interp.Holds(letter, args)});
      std::size_t k = arity;
      while (k > 0 && ++args[k - 1] == d) args[--k] = 0;
      if (k == 0) break;
    }
    tables[letter + "/" + std::to_string(arity)] = std::move(rows);
  }
  return {{"domain", d}, {"tables", std::move(tables)}};
}

Valuation ValuationFromJson(const nlohmann::json& j) {
  Valuation e;
  if (j.is_null()) return e;
  if (!j.is_object()) throw Error("valuation must be an object");
  for (const auto& [var, value] : j.items()) {
    if (!value.is_number_unsigned()) {
      throw Error("valuation value for " + var + " must be a natural");
    }
    e[var] = value.get<Constant>();
  }
  return e;
}

nlohmann::json ValuationToJson(const Valuation& e) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [var, value] : e) j[var] = value;
  return j;
}

}  // namespace colog
