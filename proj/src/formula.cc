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

#include "colog/formula.h"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

namespace colog {

bool IsChoiceOp(Op op) {
  return op == Op::kChoiceAnd || op == Op::kChoiceOr ||
         op == Op::kChoiceForall || op == Op::kChoiceExists;
}

bool IsQuantifier(Op op) {
  return op == Op::kForall || op == Op::kExists || op == Op::kChoiceForall ||
         op == Op::kChoiceExists;
}

bool IsBlindQuantifier(Op op) {
  return op == Op::kForall || op == Op::kExists;
}

bool IsChoiceUniversalType(Op op) {
  return op == Op::kChoiceAnd || op == Op::kChoiceForall;
}

const char* OpName(Op op) {
  switch (op) {
    case Op::kAtom: return "atom";
    case Op::kTop: return "top";
    case Op::kBot: return "bot";
    case Op::kNot: return "not";
    case Op::kAnd: return "and";
    case Op::kOr: return "or";
    case Op::kImplies: return "implies";
    case Op::kChoiceAnd: return "choice_and";
    case Op::kChoiceOr: return "choice_or";
    case Op::kForall: return "forall";
    case Op::kExists: return "exists";
    case Op::kChoiceForall: return "choice_forall";
    case Op::kChoiceExists: return "choice_exists";
  }
  return "?";
}

const char* FragmentName(Fragment fragment) {
  switch (fragment) {
    case Fragment::kElementary: return "elementary";
    case Fragment::kBlindFree: return "blind-free";
    case Fragment::kFull: return "full";
  }
  return "?";
}

// --- Formula ---------------------------------------------------------------

Formula Formula::Make(Node node) {
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::Atom(std::string letter, std::vector<Term> args) {
  return Make({Op::kAtom, std::move(letter), std::move(args), {}});
}

Formula Formula::Top() { return Make({Op::kTop, "", {}, {}}); }
Formula Formula::Bot() { return Make({Op::kBot, "", {}, {}}); }

Formula Formula::Not(Formula operand) {
  return Make({Op::kNot, "", {}, {std::move(operand)}});
}

Formula Formula::MakeNary(Op op, std::vector<Formula> operands) {
  if (op == Op::kImplies) {
    if (operands.size() != 2) throw Error("implication takes two operands");
  } else if (op == Op::kAnd || op == Op::kOr || op == Op::kChoiceAnd ||
             op == Op::kChoiceOr) {
    if (operands.size() < 2) {
      throw Error(std::string(OpName(op)) + " needs at least two operands");
    }
  } else {
    throw Error(std::string(OpName(op)) + " is not an n-ary connective");
  }
  return Make({op, "", {}, std::move(operands)});
}

Formula Formula::MakeQuantifier(Op op, std::string var, Formula body) {
  if (!IsQuantifier(op)) {
    throw Error(std::string(OpName(op)) + " is not a quantifier");
  }
  return Make({op, std::move(var), {}, {std::move(body)}});
}

Formula Formula::And(std::vector<Formula> operands) {
  return MakeNary(Op::kAnd, std::move(operands));
}
Formula Formula::Or(std::vector<Formula> operands) {
  return MakeNary(Op::kOr, std::move(operands));
}
Formula Formula::Implies(Formula antecedent, Formula consequent) {
  return MakeNary(Op::kImplies, {std::move(antecedent), std::move(consequent)});
}
Formula Formula::ChoiceAnd(std::vector<Formula> operands) {
  return MakeNary(Op::kChoiceAnd, std::move(operands));
}
Formula Formula::ChoiceOr(std::vector<Formula> operands) {
  return MakeNary(Op::kChoiceOr, std::move(operands));
}
Formula Formula::Forall(std::string var, Formula body) {
  return MakeQuantifier(Op::kForall, std::move(var), std::move(body));
}
Formula Formula::Exists(std::string var, Formula body) {
  return MakeQuantifier(Op::kExists, std::move(var), std::move(body));
}
Formula Formula::ChoiceForall(std::string var, Formula body) {
  return MakeQuantifier(Op::kChoiceForall, std::move(var), std::move(body));
}
Formula Formula::ChoiceExists(std::string var, Formula body) {
  return MakeQuantifier(Op::kChoiceExists, std::move(var), std::move(body));
}

Formula Formula::WithChildren(const Formula& shape,
                              std::vector<Formula> children) {
  Node node = *shape.node_;
  node.children = std::move(children);
  return Make(std::move(node));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.name == y.name && x.args == y.args &&
         x.children == y.children;
}

// --- OccurrenceSpec ----------------------------------------------------------

OccurrenceSpec OccurrenceSpec::Parse(const std::string& text) {
  std::vector<int> indices;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = i;
    long value = 0;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') {
      value = value * 10 + (text[j] - '0');
      if (value > 1000000) throw Error("spec index too large: " + text);
      ++j;
    }
    if (j == i || j >= text.size() || text[j] != '.' || value < 1) {
      throw Error("malformed occurrence spec: \"" + text + "\"");
    }
    indices.push_back(static_cast<int>(value));
    i = j + 1;
  }
  return OccurrenceSpec(std::move(indices));
}

std::string OccurrenceSpec::ToString() const {
  std::string out;
  for (int i : indices_) out += std::to_string(i) + ".";
  return out;
}

// --- Queries -------------------------------------------------------------

namespace {

void CollectFreeTerms(const Formula& f, std::vector<std::string>& bound,
                      std::vector<Term>& out, std::set<Term>& seen) {
  switch (f.op()) {
    case Op::kAtom:
      for (const Term& t : f.args()) {
        if (t.is_variable() &&
            std::find(bound.begin(), bound.end(), t.name()) != bound.end()) {
          continue;
        }
        if (seen.insert(t).second) out.push_back(t);
      }
      return;
    case Op::kForall:
    case Op::kExists:
    case Op::kChoiceForall:
    case Op::kChoiceExists:
      bound.push_back(f.variable());
      CollectFreeTerms(f.body(), bound, out, seen);
      bound.pop_back();
      return;
    default:
      for (const Formula& c : f.children()) {
        CollectFreeTerms(c, bound, out, seen);
      }
  }
}

void Walk(const Formula& f, const std::function<void(const Formula&)>& fn) {
  fn(f);
  for (const Formula& c : f.children()) Walk(c, fn);
}

}  // namespace

std::vector<Term> FreeTerms(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<Term> out;
  std::set<Term> seen;
  CollectFreeTerms(f, bound, out, seen);
  return out;
}

std::set<Term> FreeTermSet(const Formula& f) {
  auto terms = FreeTerms(f);
  return {terms.begin(), terms.end()};
}

std::set<std::string> FreeVariables(const Formula& f) {
  std::set<std::string> out;
  for (const Term& t : FreeTerms(f)) {
    if (t.is_variable()) out.insert(t.name());
  }
  return out;
}

bool HasFreeVariable(const Formula& f, const std::string& var) {
  return FreeVariables(f).count(var) > 0;
}

std::set<std::string> AllVariables(const Formula& f) {
  std::set<std::string> out;
  Walk(f, [&](const Formula& g) {
    if (IsQuantifier(g.op())) out.insert(g.variable());
    if (g.op() == Op::kAtom) {
      for (const Term& t : g.args()) {
        if (t.is_variable()) out.insert(t.name());
      }
    }
  });
  return out;
}

std::set<Constant> Constants(const Formula& f) {
  std::set<Constant> out;
  Walk(f, [&](const Formula& g) {
    if (g.op() != Op::kAtom) return;
    for (const Term& t : g.args()) {
      if (t.is_constant()) out.insert(t.value());
    }
  });
  return out;
}

bool Occurs(const Formula& f, const Term& term) {
  if (term.is_variable()) return AllVariables(f).count(term.name()) > 0;
  return Constants(f).count(term.value()) > 0;
}

int CountChoiceOperators(const Formula& f) {
  int n = 0;
  Walk(f, [&](const Formula& g) {
    if (IsChoiceOp(g.op())) ++n;
  });
  return n;
}

bool ContainsBlindQuantifier(const Formula& f) {
  bool found = false;
  Walk(f, [&](const Formula& g) {
    if (IsBlindQuantifier(g.op())) found = true;
  });
  return found;
}

bool ContainsQuantifier(const Formula& f) {
  bool found = false;
  Walk(f, [&](const Formula& g) {
    if (IsQuantifier(g.op())) found = true;
  });
  return found;
}

Fragment FragmentOf(const Formula& f) {
  if (CountChoiceOperators(f) == 0) return Fragment::kElementary;
  if (!ContainsBlindQuantifier(f)) return Fragment::kBlindFree;
  return Fragment::kFull;
}

namespace {

void CollectSurface(const Formula& f, Path& path, std::vector<int>& spec,
                    Polarity polarity, std::vector<std::string>& binders,
                    std::vector<ChoiceOccurrence>& out) {
  switch (f.op()) {
    case Op::kAtom:
    case Op::kTop:
    case Op::kBot:
      return;
    case Op::kNot:
      path.push_back(0);
      CollectSurface(f.body(), path, spec, Flip(polarity), binders, out);
      path.pop_back();
      return;
    case Op::kForall:
    case Op::kExists:
      path.push_back(0);
      binders.push_back(f.variable());
      CollectSurface(f.body(), path, spec, polarity, binders, out);
      binders.pop_back();
      path.pop_back();
      return;
    case Op::kAnd:
    case Op::kOr:
    case Op::kImplies:
      for (std::size_t i = 0; i < f.arity(); ++i) {
        path.push_back(static_cast<int>(i));
        spec.push_back(static_cast<int>(i) + 1);
        Polarity p =
            (f.op() == Op::kImplies && i == 0) ? Flip(polarity) : polarity;
        CollectSurface(f.child(i), path, spec, p, binders, out);
        spec.pop_back();
        path.pop_back();
      }
      return;
    case Op::kChoiceAnd:
    case Op::kChoiceOr:
    case Op::kChoiceForall:
    case Op::kChoiceExists:
      out.push_back({OccurrenceSpec(spec), path, polarity, f.op(), f, binders});
      return;
  }
}

}  // namespace

std::vector<ChoiceOccurrence> SurfaceChoiceOccurrences(const Formula& f) {
  Path path;
  std::vector<int> spec;
  std::vector<std::string> binders;
  std::vector<ChoiceOccurrence> out;
  CollectSurface(f, path, spec, Polarity::kPositive, binders, out);
  return out;
}

// --- Rewriting -------------------------------------------------------------

namespace {

Formula SubstituteRec(const Formula& f,
                      const std::vector<std::pair<Term, Term>>& bindings) {
  if (bindings.empty()) return f;
  switch (f.op()) {
    case Op::kAtom: {
      bool changed = false;
      std::vector<Term> args = f.args();
      for (Term& t : args) {
        for (const auto& [from, to] : bindings) {
          if (t == from) {
            t = to;
            changed = true;
            break;
          }
        }
      }
      return changed ? Formula::Atom(f.letter(), std::move(args)) : f;
    }
    case Op::kTop:
    case Op::kBot:
      return f;
    case Op::kForall:
    case Op::kExists:
    case Op::kChoiceForall:
    case Op::kChoiceExists: {
      std::vector<std::pair<Term, Term>> inner;
      for (const auto& b : bindings) {
        if (b.first.is_variable() && b.first.name() == f.variable()) continue;
        inner.push_back(b);
      }
      Formula body = SubstituteRec(f.body(), inner);
      if (body.SameNode(f.body())) return f;
      return Formula::WithChildren(f, {std::move(body)});
    }
    default: {
      bool changed = false;
      std::vector<Formula> children;
      children.reserve(f.arity());
      for (const Formula& c : f.children()) {
        children.push_back(SubstituteRec(c, bindings));
        if (!children.back().SameNode(c)) changed = true;
      }
      return changed ? Formula::WithChildren(f, std::move(children)) : f;
    }
  }
}

}  // namespace

Formula Substitute(const Formula& f,
                   std::span<const std::pair<Term, Term>> bindings) {
  std::set<Term> sources;
  for (const auto& b : bindings) {
    if (!sources.insert(b.first).second) {
      throw Error("duplicate source term in substitution: " +
                  b.first.ToString());
    }
  }
  return SubstituteRec(f, {bindings.begin(), bindings.end()});
}

Formula Substitute(const Formula& f, const Term& from, const Term& to) {
  return SubstituteRec(f, {{from, to}});
}

Formula Instantiate(const Formula& quantifier, const Term& term) {
  if (!IsQuantifier(quantifier.op())) {
    throw Error("instantiation of a non-quantifier");
  }
  return Substitute(quantifier.body(), Term::Variable(quantifier.variable()),
                    term);
}

const Formula& SubformulaAt(const Formula& f, const Path& path) {
  const Formula* cur = &f;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->arity()) {
      throw Error("path does not address a subformula");
    }
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return *cur;
}

namespace {

Formula ReplaceRec(const Formula& f, const Path& path, std::size_t depth,
                   Formula g) {
  if (depth == path.size()) return g;
  int i = path[depth];
  if (i < 0 || static_cast<std::size_t>(i) >= f.arity()) {
    throw Error("path does not address a subformula");
  }
  std::vector<Formula> children = f.children();
  children[static_cast<std::size_t>(i)] =
      ReplaceRec(children[static_cast<std::size_t>(i)], path, depth + 1,
                 std::move(g));
  return Formula::WithChildren(f, std::move(children));
}

bool IsTransparent(Op op) {
  return op == Op::kNot || op == Op::kForall || op == Op::kExists;
}

}  // namespace

Formula ReplaceAtPath(const Formula& f, const Path& path, Formula g) {
  return ReplaceRec(f, path, 0, std::move(g));
}

std::optional<Path> ResolveSpec(const Formula& f, const OccurrenceSpec& spec) {
  Path path;
  const Formula* cur = &f;
  for (int index : spec.indices()) {
    while (IsTransparent(cur->op())) {
      path.push_back(0);
      cur = &cur->body();
    }
    Op op = cur->op();
    if (op != Op::kAnd && op != Op::kOr && op != Op::kImplies) {
      return std::nullopt;
    }
    if (index < 1 || static_cast<std::size_t>(index) > cur->arity()) {
      return std::nullopt;
    }
    path.push_back(index - 1);
    cur = &cur->child(static_cast<std::size_t>(index - 1));
  }
  Path probe = path;
  const Formula* look = cur;
  while (IsTransparent(look->op())) {
    probe.push_back(0);
    look = &look->body();
  }
  if (IsChoiceOp(look->op())) return probe;
  return path;
}

std::optional<ChoiceOccurrence> ResolveChoice(const Formula& f,
                                              const OccurrenceSpec& spec) {
  for (ChoiceOccurrence& occ : SurfaceChoiceOccurrences(f)) {
    if (occ.spec == spec) return std::move(occ);
  }
  return std::nullopt;
}

Formula ReplaceAt(const Formula& f, const OccurrenceSpec& spec, Formula g) {
  auto path = ResolveSpec(f, spec);
  if (!path) {
    throw Error("occurrence spec \"" + spec.ToString() + "\" does not resolve");
  }
  return ReplaceAtPath(f, *path, std::move(g));
}

Formula Elementarize(const Formula& f) {
  switch (f.op()) {
    case Op::kAtom:
    case Op::kTop:
    case Op::kBot:
      return f;
    case Op::kChoiceAnd:
    case Op::kChoiceForall:
      return Formula::Top();
    case Op::kChoiceOr:
    case Op::kChoiceExists:
      return Formula::Bot();
    default: {
      std::vector<Formula> children;
      children.reserve(f.arity());
      for (const Formula& c : f.children()) children.push_back(Elementarize(c));
      return Formula::WithChildren(f, std::move(children));
    }
  }
}

Term FreshVariable(const Formula& f) {
  return FreshVariable(std::span<const Formula>(&f, 1));
}

Term FreshVariable(std::span<const Formula> formulas) {
  std::set<std::string> used;
  for (const Formula& f : formulas) used.merge(AllVariables(f));
  for (int i = 0;; ++i) {
    std::string name = CanonicalVariable(i);
    if (!used.count(name)) return Term::Variable(name);
  }
}

namespace {

Formula RenameRec(const Formula& f, std::map<std::string, std::string>& names) {
  auto rename = [&](const std::string& v) {
    auto it = names.find(v);
    if (it != names.end()) return it->second;
    std::string fresh = "_" + std::to_string(names.size());
    names.emplace(v, fresh);
    return fresh;
  };
  switch (f.op()) {
    case Op::kAtom: {
      std::vector<Term> args;
      for (const Term& t : f.args()) {
        args.push_back(t.is_variable() ? Term::Variable(rename(t.name())) : t);
      }
      return Formula::Atom(f.letter(), std::move(args));
    }
    case Op::kForall:
    case Op::kExists:
    case Op::kChoiceForall:
    case Op::kChoiceExists: {
      std::string v = rename(f.variable());
      return Formula::MakeQuantifier(f.op(), v, RenameRec(f.body(), names));
    }
    default: {
      std::vector<Formula> children;
      for (const Formula& c : f.children()) {
        children.push_back(RenameRec(c, names));
      }
      return Formula::WithChildren(f, std::move(children));
    }
  }
}

bool CaptureFreeBody(const Formula& f, const std::string& x,
                     const std::string& t, bool under_t) {
  switch (f.op()) {
    case Op::kAtom:
      if (!under_t) return true;
      for (const Term& a : f.args()) {
        if (a.is_variable() && a.name() == x) return false;
      }
      return true;
    case Op::kForall:
    case Op::kExists:
    case Op::kChoiceForall:
    case Op::kChoiceExists:
      if (f.variable() == x) return true;
      return CaptureFreeBody(f.body(), x, t, under_t || f.variable() == t);
    default:
      for (const Formula& c : f.children()) {
        if (!CaptureFreeBody(c, x, t, under_t)) return false;
      }
      return true;
  }
}

}  // namespace

Formula CanonicalRenaming(const Formula& f) {
  std::map<std::string, std::string> names;
  return RenameRec(f, names);
}

bool InstantiationIsCaptureFree(const ChoiceOccurrence& occurrence,
                                const Term& term) {
  if (term.is_constant()) return true;
  const std::string& t = term.name();
  if (std::find(occurrence.binders.begin(), occurrence.binders.end(), t) !=
      occurrence.binders.end()) {
    return false;
  }
  const Formula& q = occurrence.subformula;
  return CaptureFreeBody(q.body(), q.variable(), t, false);
}

// --- ArityMap ----------------------------------------------------------------

void ArityMap::Declare(const std::string& letter, std::size_t arity) {
  auto [it, inserted] = entries_.emplace(letter, arity);
  if (!inserted && it->second != arity) {
    throw Error("arity conflict for predicate letter '" + letter + "': " +
                std::to_string(it->second) + " vs " + std::to_string(arity));
  }
}

void ArityMap::DeclareAll(const Formula& f) {
  Walk(f, [&](const Formula& g) {
    if (g.op() == Op::kAtom) Declare(g.letter(), g.args().size());
  });
}

std::optional<std::size_t> ArityMap::Lookup(const std::string& letter) const {
  auto it = entries_.find(letter);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::string, std::vector<Term>>> AtomsOf(
    const Formula& f) {
  std::vector<std::pair<std::string, std::vector<Term>>> out;
  Walk(f, [&](const Formula& g) {
    if (g.op() != Op::kAtom) return;
    std::pair<std::string, std::vector<Term>> key{g.letter(), g.args()};
    if (std::find(out.begin(), out.end(), key) == out.end()) {
      out.push_back(std::move(key));
    }
  });
  return out;
}

}  // namespace colog
