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

#include "colog/classical.h"

#include <utility>

namespace colog {

namespace {

struct Signed {
  Formula f;
  bool sign;
};

class BudgetExhausted {};

bool IsBranching(const Signed& s) {
  switch (s.f.op()) {
    case Op::kAnd: return !s.sign;
    case Op::kOr: return s.sign;
    case Op::kImplies: return s.sign;
    default: return false;
  }
}

// Alternatives of a branching signed formula.
std::vector<Signed> Alternatives(const Signed& s) {
  std::vector<Signed> out;
  if (s.f.op() == Op::kImplies) {
    out.push_back({s.f.child(0), false});
    out.push_back({s.f.child(1), true});
    return out;
  }
  for (const Formula& c : s.f.children()) out.push_back({c, s.sign});
  return out;
}

// Components of a non-branching compound signed formula.
std::vector<Signed> Components(const Signed& s) {
  std::vector<Signed> out;
  switch (s.f.op()) {
    case Op::kNot:
      out.push_back({s.f.body(), !s.sign});
      break;
    case Op::kImplies:
      out.push_back({s.f.child(0), true});
      out.push_back({s.f.child(1), false});
      break;
    default:
      for (const Formula& c : s.f.children()) out.push_back({c, s.sign});
  }
  return out;
}

std::size_t PickNext(const std::vector<Signed>& todo) {
  for (std::size_t i = todo.size(); i-- > 0;) {
    if (!IsBranching(todo[i])) return i;
  }
  return todo.size() - 1;
}

// Returns true and fills `lits` when some branch stays open.
bool OpenBranch(std::vector<Signed> todo, Assignment& lits) {
  while (!todo.empty()) {
    std::size_t i = PickNext(todo);
    Signed s = std::move(todo[i]);
    todo.erase(todo.begin() + static_cast<std::ptrdiff_t>(i));
    switch (s.f.op()) {
      case Op::kTop:
        if (!s.sign) return false;
        continue;
      case Op::kBot:
        if (s.sign) return false;
        continue;
      case Op::kAtom: {
        AtomKey key{s.f.letter(), s.f.args()};
        auto [it, inserted] = lits.emplace(std::move(key), s.sign);
        if (!inserted && it->second != s.sign) return false;
        continue;
      }
      case Op::kNot:
      case Op::kAnd:
      case Op::kOr:
      case Op::kImplies:
        break;
      default:
        throw Error("propositional check applied to a formula with " +
                    std::string(OpName(s.f.op())));
    }
    if (IsBranching(s)) {
      for (Signed& alt : Alternatives(s)) {
        std::vector<Signed> next = todo;
        next.push_back(std::move(alt));
        Assignment branch = lits;
        if (OpenBranch(std::move(next), branch)) {
          lits = std::move(branch);
          return true;
        }
      }
      return false;
    }
    for (Signed& c : Components(s)) todo.push_back(std::move(c));
  }
  return true;
}

void RequireQuantifierFreeElementary(const Formula& f) {
  if (CountChoiceOperators(f) > 0 || ContainsQuantifier(f)) {
    throw Error("expected a quantifier-free elementary formula");
  }
}

// --- First-order tableau ---------------------------------------------------

enum class TableauResult { kClosed, kOpen, kOutOfBudget };

struct FoBranch {
  std::vector<Signed> todo;
  std::vector<std::pair<Signed, std::size_t>> gammas;
  std::vector<Term> terms;
  Assignment lits;
};

bool IsGamma(const Signed& s) {
  return (s.f.op() == Op::kForall && s.sign) ||
         (s.f.op() == Op::kExists && !s.sign);
}

TableauResult RunTableau(FoBranch b, std::int64_t& budget, int& params) {
  for (;;) {
    while (!b.todo.empty()) {
      if (--budget < 0) return TableauResult::kOutOfBudget;
      std::size_t i = PickNext(b.todo);
      Signed s = std::move(b.todo[i]);
      b.todo.erase(b.todo.begin() + static_cast<std::ptrdiff_t>(i));
      switch (s.f.op()) {
        case Op::kTop:
          if (!s.sign) return TableauResult::kClosed;
          continue;
        case Op::kBot:
          if (s.sign) return TableauResult::kClosed;
          continue;
        case Op::kAtom: {
          AtomKey key{s.f.letter(), s.f.args()};
          auto [it, inserted] = b.lits.emplace(std::move(key), s.sign);
          if (!inserted && it->second != s.sign) return TableauResult::kClosed;
          continue;
        }
        case Op::kForall:
        case Op::kExists:
          if (IsGamma(s)) {
            b.gammas.push_back({std::move(s), 0});
          } else {
            Term p = Term::Variable("_p" + std::to_string(params++));
            b.terms.push_back(p);
            b.todo.push_back({Instantiate(s.f, p), s.sign});
          }
          continue;
        case Op::kNot:
        case Op::kAnd:
        case Op::kOr:
        case Op::kImplies:
          break;
        default:
          throw Error("classical validity applied to a non-elementary formula");
      }
      if (IsBranching(s)) {
        for (Signed& alt : Alternatives(s)) {
          FoBranch next = b;
          next.todo.push_back(std::move(alt));
          TableauResult r = RunTableau(std::move(next), budget, params);
          if (r != TableauResult::kClosed) return r;
        }
        return TableauResult::kClosed;
      }
      for (Signed& c : Components(s)) b.todo.push_back(std::move(c));
    }
    bool added = false;
    for (auto& [g, next] : b.gammas) {
      while (next < b.terms.size()) {
        b.todo.push_back({Instantiate(g.f, b.terms[next++]), g.sign});
        added = true;
      }
    }
    if (!added) return TableauResult::kOpen;
  }
}

// --- Finite-model search ---------------------------------------------------

Formula Ground(const Formula& f, std::map<std::string, Constant>& vars,
               const std::map<Term, Constant>& terms, Constant domain,
               std::int64_t& budget) {
  if (--budget < 0) throw BudgetExhausted();
  switch (f.op()) {
    case Op::kAtom: {
      std::vector<Term> args;
      for (const Term& t : f.args()) {
        if (t.is_variable()) {
          auto it = vars.find(t.name());
          if (it != vars.end()) {
            args.push_back(Term::Const(it->second));
            continue;
          }
        }
        args.push_back(Term::Const(terms.at(t)));
      }
      return Formula::Atom(f.letter(), std::move(args));
    }
    case Op::kForall:
    case Op::kExists: {
      std::vector<Formula> instances;
      std::optional<Constant> saved;
      if (auto it = vars.find(f.variable()); it != vars.end()) saved = it->second;
      for (Constant c = 0; c < domain; ++c) {
        vars[f.variable()] = c;
        instances.push_back(Ground(f.body(), vars, terms, domain, budget));
      }
      if (saved) {
        vars[f.variable()] = *saved;
      } else {
        vars.erase(f.variable());
      }
      if (instances.size() == 1) return instances.front();
      return Formula::MakeNary(f.op() == Op::kForall ? Op::kAnd : Op::kOr,
                               std::move(instances));
    }
    case Op::kTop:
    case Op::kBot:
      return f;
    default: {
      std::vector<Formula> children;
      for (const Formula& c : f.children()) {
        children.push_back(Ground(c, vars, terms, domain, budget));
      }
      return Formula::WithChildren(f, std::move(children));
    }
  }
}

std::optional<FiniteModel> SearchModels(const Formula& f,
                                        std::int64_t& budget) {
  std::vector<Term> free = FreeTerms(f);
  for (Constant d = 1; d <= kMaxModelDomain; ++d) {
    std::vector<Constant> choice(free.size(), 0);
    for (;;) {
      std::map<Term, Constant> terms;
      for (std::size_t i = 0; i < free.size(); ++i) terms[free[i]] = choice[i];
      std::map<std::string, Constant> vars;
      Formula ground = Ground(f, vars, terms, d, budget);
      Assignment lits;
      if (OpenBranch({{ground, false}}, lits)) {
        FiniteModel model;
        model.domain = d;
        model.terms = std::move(terms);
        for (const auto& key : AtomsOf(ground)) {
          auto it = lits.find(key);
          model.ground[key] = it != lits.end() && it->second;
        }
        return model;
      }
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == d) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  }
  return std::nullopt;
}

bool EvalModel(const Formula& f, const FiniteModel& model,
               std::map<std::string, Constant>& vars) {
  switch (f.op()) {
    case Op::kTop: return true;
    case Op::kBot: return false;
    case Op::kAtom: {
      std::vector<Term> args;
      for (const Term& t : f.args()) {
        if (t.is_variable()) {
          auto it = vars.find(t.name());
          if (it != vars.end()) {
            args.push_back(Term::Const(it->second));
            continue;
          }
        }
        auto it = model.terms.find(t);
        if (it == model.terms.end()) {
          throw Error("model does not interpret term " + t.ToString());
        }
        args.push_back(Term::Const(it->second));
      }
      auto it = model.ground.find({f.letter(), args});
      return it != model.ground.end() && it->second;
    }
    case Op::kNot: return !EvalModel(f.body(), model, vars);
    case Op::kAnd:
      for (const Formula& c : f.children()) {
        if (!EvalModel(c, model, vars)) return false;
      }
      return true;
    case Op::kOr:
      for (const Formula& c : f.children()) {
        if (EvalModel(c, model, vars)) return true;
      }
      return false;
    case Op::kImplies:
      return !EvalModel(f.child(0), model, vars) ||
             EvalModel(f.child(1), model, vars);
    case Op::kForall:
    case Op::kExists: {
      bool universal = f.op() == Op::kForall;
      std::optional<Constant> saved;
      if (auto it = vars.find(f.variable()); it != vars.end()) saved = it->second;
      bool result = universal;
      for (Constant c = 0; c < model.domain; ++c) {
        vars[f.variable()] = c;
        if (EvalModel(f.body(), model, vars) != universal) {
          result = !universal;
          break;
        }
      }
      if (saved) {
        vars[f.variable()] = *saved;
      } else {
        vars.erase(f.variable());
      }
      return result;
    }
    default:
      throw Error("cannot evaluate choice operators classically");
  }
}

}  // namespace

std::string AtomKeyToString(const AtomKey& key) {
  std::string out = key.first;
  if (!key.second.empty()) {
    out += '(';
    for (std::size_t i = 0; i < key.second.size(); ++i) {
      if (i) out += ',';
      out += key.second[i].ToString();
    }
    out += ')';
  }
  return out;
}

bool Evaluate(const Formula& f, const Assignment& assignment) {
  switch (f.op()) {
    case Op::kTop: return true;
    case Op::kBot: return false;
    case Op::kAtom: {
      auto it = assignment.find({f.letter(), f.args()});
      return it != assignment.end() && it->second;
    }
    case Op::kNot: return !Evaluate(f.body(), assignment);
    case Op::kAnd:
      for (const Formula& c : f.children()) {
        if (!Evaluate(c, assignment)) return false;
      }
      return true;
    case Op::kOr:
      for (const Formula& c : f.children()) {
        if (Evaluate(c, assignment)) return true;
      }
      return false;
    case Op::kImplies:
      return !Evaluate(f.child(0), assignment) ||
             Evaluate(f.child(1), assignment);
    default:
      throw Error("expected a quantifier-free elementary formula");
  }
}

std::optional<Assignment> FindFalsifyingAssignment(const Formula& f) {
  RequireQuantifierFreeElementary(f);
  Assignment lits;
  if (!OpenBranch({{f, false}}, lits)) return std::nullopt;
  Assignment total;
  for (const AtomKey& key : AtomsOf(f)) {
    auto it = lits.find(key);
    total[key] = it != lits.end() && it->second;
  }
  return total;
}

bool IsTautology(const Formula& f) {
  return !FindFalsifyingAssignment(f).has_value();
}

Assignment FalsifyingAssignment(const Formula& f) {
  auto a = FindFalsifyingAssignment(f);
  if (!a) throw Error("formula is a tautology: no falsifying assignment");
  return *std::move(a);
}

bool EvaluateInModel(const Formula& f, const FiniteModel& model) {
  std::map<std::string, Constant> vars;
  return EvalModel(f, model, vars);
}

const char* VerdictName(ValidityVerdict::Kind kind) {
  switch (kind) {
    case ValidityVerdict::Kind::kValid: return "valid";
    case ValidityVerdict::Kind::kInvalid: return "invalid";
    case ValidityVerdict::Kind::kUnknown: return "unknown";
  }
  return "?";
}

ValidityVerdict ClassicalValidity(const Formula& f, std::int64_t budget) {
  if (budget <= 0) throw Error("validity budget must be positive");
  if (CountChoiceOperators(f) > 0) {
    throw Error("classical validity needs an elementary formula");
  }
  ValidityVerdict verdict;
  if (!ContainsQuantifier(f)) {
    verdict.assignment = FindFalsifyingAssignment(f);
    verdict.kind = verdict.assignment ? ValidityVerdict::Kind::kInvalid
                                      : ValidityVerdict::Kind::kValid;
    return verdict;
  }

  // Free terms become parameters whose names cannot be bound in f.
  std::vector<std::pair<Term, Term>> renaming;
  std::vector<Term> params;
  for (const Term& t : FreeTerms(f)) {
    Term p = Term::Variable("_f" + std::to_string(renaming.size()));
    renaming.push_back({t, p});
    params.push_back(p);
  }
  FoBranch root;
  root.todo.push_back({Substitute(f, renaming), false});
  int fresh = 0;
  if (params.empty()) params.push_back(Term::Variable("_p" + std::to_string(fresh++)));
  root.terms = params;
  std::int64_t tableau_budget = budget / 2 + 1;
  if (RunTableau(std::move(root), tableau_budget, fresh) ==
      TableauResult::kClosed) {
    verdict.kind = ValidityVerdict::Kind::kValid;
    return verdict;
  }

  std::int64_t model_budget = budget - budget / 2;
  try {
    verdict.model = SearchModels(f, model_budget);
  } catch (const BudgetExhausted&) {
  }
  verdict.kind = verdict.model ? ValidityVerdict::Kind::kInvalid
                               : ValidityVerdict::Kind::kUnknown;
  return verdict;
}

}  // namespace colog
