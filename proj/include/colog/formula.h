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

#ifndef COLOG_FORMULA_H_
#define COLOG_FORMULA_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "colog/term.h"

namespace colog {

enum class Op {
  kAtom,
  kTop,
  kBot,
  kNot,
  kAnd,            // parallel conjunction, n >= 2
  kOr,             // parallel disjunction, n >= 2
  kImplies,        // parallel implication, exactly 2 operands
  kChoiceAnd,      // n >= 2
  kChoiceOr,       // n >= 2
  kForall,         // blind
  kExists,         // blind
  kChoiceForall,
  kChoiceExists,
};

bool IsChoiceOp(Op op);
bool IsQuantifier(Op op);
bool IsBlindQuantifier(Op op);
// The operators whose legal moves belong to the environment when the
// occurrence is positive: choice conjunction and choice universal.
bool IsChoiceUniversalType(Op op);
const char* OpName(Op op);

// Immutable formula tree with value semantics; copies share structure.
class Formula {
 public:
  static Formula Atom(std::string letter, std::vector<Term> args = {});
  static Formula Top();
  static Formula Bot();
  static Formula Not(Formula operand);
  static Formula And(std::vector<Formula> operands);
  static Formula Or(std::vector<Formula> operands);
  static Formula Implies(Formula antecedent, Formula consequent);
  static Formula ChoiceAnd(std::vector<Formula> operands);
  static Formula ChoiceOr(std::vector<Formula> operands);
  static Formula Forall(std::string var, Formula body);
  static Formula Exists(std::string var, Formula body);
  static Formula ChoiceForall(std::string var, Formula body);
  static Formula ChoiceExists(std::string var, Formula body);

  // Generic constructors used by rewriting code.
  static Formula MakeNary(Op op, std::vector<Formula> operands);
  static Formula MakeQuantifier(Op op, std::string var, Formula body);
  // Rebuilds a node of the same shape as `shape` with new children.
  static Formula WithChildren(const Formula& shape,
                              std::vector<Formula> children);

  Op op() const { return node_->op; }
  const std::string& letter() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  // Bound variable of a quantifier node.
  const std::string& variable() const { return node_->name; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }
  const Formula& body() const { return node_->children.at(0); }
  std::size_t arity() const { return node_->children.size(); }

  bool SameNode(const Formula& other) const { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    std::string name;  // predicate letter or bound variable
    std::vector<Term> args;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula Make(Node node);

  std::shared_ptr<const Node> node_;
};

enum class Polarity { kPositive, kNegative };

inline Polarity Flip(Polarity p) {
  return p == Polarity::kPositive ? Polarity::kNegative : Polarity::kPositive;
}

// Exact address of a subformula occurrence: child indices from the root,
// with 0 used to descend through unary nodes (negation and quantifiers).
using Path = std::vector<int>;

// An occurrence address: the 1-based operand indices taken at parallel
// connectives on the way to an occurrence. Negation and blind quantifiers
// are crossed without an index. Rendered as "3.2.2." (empty for the root).
class OccurrenceSpec {
 public:
  OccurrenceSpec() = default;
  explicit OccurrenceSpec(std::vector<int> indices)
      : indices_(std::move(indices)) {}

  // Parses "3.2.2." style strings; throws Error on malformed input.
  static OccurrenceSpec Parse(const std::string& text);

  const std::vector<int>& indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }
  std::string ToString() const;

  friend bool operator==(const OccurrenceSpec&,
                         const OccurrenceSpec&) = default;
  friend auto operator<=>(const OccurrenceSpec&,
                          const OccurrenceSpec&) = default;

 private:
  std::vector<int> indices_;
};

struct ChoiceOccurrence {
  OccurrenceSpec spec;
  Path path;
  Polarity polarity;
  Op kind;
  Formula subformula;
  // Variables bound by quantifiers enclosing the occurrence, outermost first.
  std::vector<std::string> binders;
};

enum class Fragment { kElementary, kBlindFree, kFull };
const char* FragmentName(Fragment fragment);

// --- Queries -------------------------------------------------------------

// Free variables plus constants, in order of first (left-to-right)
// occurrence. Every constant occurrence counts as free.
std::vector<Term> FreeTerms(const Formula& f);
std::set<Term> FreeTermSet(const Formula& f);
std::set<std::string> FreeVariables(const Formula& f);
bool HasFreeVariable(const Formula& f, const std::string& var);
// Every variable name that occurs anywhere, bound or free (including the
// variables named by quantifier prefixes).
std::set<std::string> AllVariables(const Formula& f);
std::set<Constant> Constants(const Formula& f);
// True iff `term` occurs in f (a variable occurs if its name appears at all).
bool Occurs(const Formula& f, const Term& term);

int CountChoiceOperators(const Formula& f);
bool ContainsBlindQuantifier(const Formula& f);
bool ContainsQuantifier(const Formula& f);
Fragment FragmentOf(const Formula& f);

// Surface occurrences of choice operators, in left-to-right order.
std::vector<ChoiceOccurrence> SurfaceChoiceOccurrences(const Formula& f);

// --- Rewriting -------------------------------------------------------------

// Simultaneous substitution of free occurrences of terms. Source terms must
// be pairwise distinct; throws Error otherwise.
Formula Substitute(const Formula& f,
                   std::span<const std::pair<Term, Term>> bindings);
Formula Substitute(const Formula& f, const Term& from, const Term& to);

// Body of a choice/blind quantifier node instantiated at `term`.
Formula Instantiate(const Formula& quantifier, const Term& term);

const Formula& SubformulaAt(const Formula& f, const Path& path);
Formula ReplaceAtPath(const Formula& f, const Path& path, Formula g);

// Resolves an occurrence address. Indices select operands of parallel
// connectives; negations and blind quantifiers are crossed implicitly. When
// the indices run out, the address is the first choice occurrence reached
// through further negations / blind quantifiers, or else the node reached.
std::optional<Path> ResolveSpec(const Formula& f, const OccurrenceSpec& spec);
// Resolves `spec` to a surface choice occurrence, if there is one there.
std::optional<ChoiceOccurrence> ResolveChoice(const Formula& f,
                                              const OccurrenceSpec& spec);
// Throws Error when the address does not resolve.
Formula ReplaceAt(const Formula& f, const OccurrenceSpec& spec, Formula g);

Formula Elementarize(const Formula& f);

// Smallest v<i> that does not occur in f.
Term FreshVariable(const Formula& f);
// Smallest v<i> that occurs in none of the given formulas.
Term FreshVariable(std::span<const Formula> formulas);

// Renames every variable (bound or free) to _0, _1, ... in order of first
// occurrence. Alpha-variants by variable renaming share an image.
Formula CanonicalRenaming(const Formula& f);

// Capture condition for instantiating the choice quantifier at `occurrence`
// with `term`: when term is a variable t, neither the occurrence nor any free
// occurrence of the bound variable in its body may lie in the scope of a
// quantifier (of any of the four kinds) binding t.
bool InstantiationIsCaptureFree(const ChoiceOccurrence& occurrence,
                                const Term& term);

// Map from predicate letter to arity, consistent across a formula set.
class ArityMap {
 public:
  // Records the arity of `letter`; throws Error on conflict.
  void Declare(const std::string& letter, std::size_t arity);
  void DeclareAll(const Formula& f);
  std::optional<std::size_t> Lookup(const std::string& letter) const;
  const std::map<std::string, std::size_t>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::size_t> entries_;
};

// Atoms (letter, argument tuple) occurring in f, in order of first occurrence.
std::vector<std::pair<std::string, std::vector<Term>>> AtomsOf(
    const Formula& f);

}  // namespace colog

#endif  // COLOG_FORMULA_H_
