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

#ifndef COLOG_TESTS_SUPPORT_FORMULAS_H_
#define COLOG_TESTS_SUPPORT_FORMULAS_H_

namespace colog::testing {

// call x . cex y . (p(x) \/ ~p(y)): answer any x with y := x.
inline constexpr char kCopyChoice[] = "call x . cex y . (p(x) \\/ ~p(y))";
// The same matrix with the choice quantifiers swapped.
inline constexpr char kSwappedCopyChoice[] =
    "cex y . call x . (p(x) \\/ ~p(y))";
// Deciding p reduces to deciding q along a choice-mapped equivalence.
inline constexpr char kDecisionReduction[] =
    "(call x . cex y . (p(x) <-> q(y))) -> "
    "(call x . (q(x) + ~q(x))) -> call x . (p(x) + ~p(x))";
// The converse reduction, which has no uniform solution.
inline constexpr char kConverseReduction[] =
    "((call x . (q(x) + ~q(x))) -> call x . (p(x) + ~p(x))) -> "
    "call x . cex y . (p(x) <-> q(y))";

// Positions of the six-move run over kDecisionReduction.
inline constexpr const char* kReductionRun[] = {
    "-2.2.7", "+1.7", "-1.9", "+2.1.9", "-2.1.1", "+2.2.1"};
inline constexpr const char* kReductionPositions[] = {
    "(call x . cex y . (p(x) <-> q(y))) -> "
    "(call x . (q(x) + ~q(x))) -> call x . (p(x) + ~p(x))",
    "(call x . cex y . (p(x) <-> q(y))) -> "
    "(call x . (q(x) + ~q(x))) -> p(7) + ~p(7)",
    "(cex y . (p(7) <-> q(y))) -> (call x . (q(x) + ~q(x))) -> p(7) + ~p(7)",
    "(p(7) <-> q(9)) -> (call x . (q(x) + ~q(x))) -> p(7) + ~p(7)",
    "(p(7) <-> q(9)) -> (q(9) + ~q(9)) -> p(7) + ~p(7)",
    "(p(7) <-> q(9)) -> q(9) -> p(7) + ~p(7)",
    "(p(7) <-> q(9)) -> q(9) -> p(7)",
};

}  // namespace colog::testing

#endif  // COLOG_TESTS_SUPPORT_FORMULAS_H_
