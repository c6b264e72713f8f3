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

#ifndef COLOG_TESTS_SUPPORT_GENERATORS_H_
#define COLOG_TESTS_SUPPORT_GENERATORS_H_

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "colog/formula.h"

namespace colog::testing {

struct GenOptions {
  int max_depth = 3;
  bool choice = true;
  bool blind = true;
  bool quantifiers = true;
  int max_arity = 3;  // of n-ary connectives
  std::vector<std::pair<std::string, int>> letters = {{"p", 0}, {"q", 1},
                                                      {"r", 2}};
  std::vector<std::string> variables = {"x", "y", "z"};
  std::vector<Constant> constants = {0, 1};
};

class FormulaGenerator {
 public:
  FormulaGenerator(std::uint32_t seed, GenOptions options)
      : rng_(seed), options_(std::move(options)) {}

  Formula Next() { return Gen(options_.max_depth); }

  std::mt19937& rng() { return rng_; }

 private:
  int Pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term RandomTerm() {
    const auto& vars = options_.variables;
    const auto& consts = options_.constants;
    int n = static_cast<int>(vars.size() + consts.size());
    int i = Pick(n);
    if (i < static_cast<int>(vars.size())) return Term::Variable(vars[i]);
    return Term::Const(consts[i - vars.size()]);
  }

  Formula Leaf() {
    int k = Pick(10);
    if (k == 0) return Formula::Top();
    if (k == 1) return Formula::Bot();
    const auto& [letter, arity] =
        options_.letters[Pick(static_cast<int>(options_.letters.size()))];
    std::vector<Term> args;
    for (int i = 0; i < arity; ++i) args.push_back(RandomTerm());
    return Formula::Atom(letter, std::move(args));
  }

  Formula Gen(int depth) {
    if (depth <= 0 || Pick(4) == 0) return Leaf();
    std::vector<Op> ops = {Op::kNot, Op::kAnd, Op::kOr, Op::kImplies};
    if (options_.choice) {
      ops.push_back(Op::kChoiceAnd);
      ops.push_back(Op::kChoiceOr);
      if (options_.quantifiers) {
        ops.push_back(Op::kChoiceForall);
        ops.push_back(Op::kChoiceExists);
      }
    }
    if (options_.blind && options_.quantifiers) {
      ops.push_back(Op::kForall);
      ops.push_back(Op::kExists);
    }
    Op op = ops[Pick(static_cast<int>(ops.size()))];
    switch (op) {
      case Op::kNot:
        return Formula::Not(Gen(depth - 1));
      case Op::kImplies:
        return Formula::Implies(Gen(depth - 1), Gen(depth - 1));
      case Op::kAnd:
      case Op::kOr:
      case Op::kChoiceAnd:
      case Op::kChoiceOr: {
        int n = 2 + Pick(options_.max_arity - 1);
        std::vector<Formula> operands;
        for (int i = 0; i < n; ++i) operands.push_back(Gen(depth - 1));
        return Formula::MakeNary(op, std::move(operands));
      }
      default: {
        const auto& vars = options_.variables;
        std::string v = vars[Pick(static_cast<int>(vars.size()))];
        return Formula::MakeQuantifier(op, v, Gen(depth - 1));
      }
    }
  }

  std::mt19937 rng_;
  GenOptions options_;
};

}  // namespace colog::testing

#endif  // COLOG_TESTS_SUPPORT_GENERATORS_H_
