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

#ifndef COLOG_PARSER_H_
#define COLOG_PARSER_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "colog/formula.h"

namespace colog {

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Concrete syntax, loosest to tightest:
//   F -> G (right associative), F <-> G (sugar for (F -> G) /\ (G -> F))
//   F \/ G, F + G (choice), F cor G (choice)
//   F /\ G, F & G (choice), F cand G (choice)
//   ~F, fa x . F, ex x . F, call x . F, cex x . F (bodies extend right)
//   p(t1,...,tn), p, top, bot, (F)
// Different connectives at the same level need parentheses.
//
// When `arities` is non-null the letters of the result are checked against
// and recorded into it. Arity conflicts inside `text` are always errors.
Formula Parse(std::string_view text, ArityMap* arities = nullptr);

std::string Print(const Formula& f);

// Parses a single term: a decimal constant or a variable identifier.
Term ParseTerm(std::string_view text);

bool IsReservedWord(std::string_view word);

}  // namespace colog

#endif  // COLOG_PARSER_H_
