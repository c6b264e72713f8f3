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

#ifndef COLOG_TERM_H_
#define COLOG_TERM_H_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace colog {

using Constant = std::uint64_t;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A term is either a variable (named by an identifier) or a natural-number
// constant. Variables order before constants; within a kind the natural
// order of names / values applies.
class Term {
 public:
  static Term Variable(std::string name) { return Term(std::move(name)); }
  static Term Const(Constant value) { return Term(value); }

  bool is_variable() const { return rep_.index() == 0; }
  bool is_constant() const { return rep_.index() == 1; }

  const std::string& name() const { return std::get<0>(rep_); }
  Constant value() const { return std::get<1>(rep_); }

  std::string ToString() const {
    return is_variable() ? name() : std::to_string(value());
  }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  explicit Term(std::string name) : rep_(std::move(name)) {}
  explicit Term(Constant value) : rep_(value) {}

  std::variant<std::string, Constant> rep_;
};

// Name of the i-th variable of the canonical enumeration v0, v1, ...
inline std::string CanonicalVariable(int index) {
  return "v" + std::to_string(index);
}

}  // namespace colog

#endif  // COLOG_TERM_H_
