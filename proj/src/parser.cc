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

#include "colog/parser.h"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace colog {

namespace {

constexpr std::string_view kReserved[] = {"top", "bot", "fa",  "ex",
                                          "call", "cex", "cor", "cand"};

enum class Tok {
  kIdent,
  kNumber,
  kLParen,
  kRParen,
  kComma,
  kDot,
  kNot,
  kImplies,
  kIff,
  kOr,
  kAnd,
  kChoiceOr,
  kChoiceAnd,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> Lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (s.compare(i, 3, "\xE2\x99\xA0") == 0) {
      throw SyntaxError("reserved move token \xE2\x99\xA0 is not allowed", i);
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && is_ident(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      if (word == "cor") {
        out.push_back({Tok::kChoiceOr, word, start});
      } else if (word == "cand") {
        out.push_back({Tok::kChoiceAnd, word, start});
      } else {
        out.push_back({Tok::kIdent, word, start});
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
      }
      if (i < s.size() && is_ident(s[i])) {
        throw SyntaxError("malformed number", start);
      }
      out.push_back({Tok::kNumber, std::string(s.substr(start, i - start)),
                     start});
      continue;
    }
    auto sym = [&](Tok kind, std::size_t len) {
      out.push_back({kind, std::string(s.substr(i, len)), start});
      i += len;
    };
    if (s.compare(i, 3, "<->") == 0) {
      sym(Tok::kIff, 3);
    } else if (s.compare(i, 2, "->") == 0) {
      sym(Tok::kImplies, 2);
    } else if (s.compare(i, 2, "\\/") == 0) {
      sym(Tok::kOr, 2);
    } else if (s.compare(i, 2, "/\\") == 0) {
      sym(Tok::kAnd, 2);
    } else if (c == '(') {
      sym(Tok::kLParen, 1);
    } else if (c == ')') {
      sym(Tok::kRParen, 1);
    } else if (c == ',') {
      sym(Tok::kComma, 1);
    } else if (c == '.') {
      sym(Tok::kDot, 1);
    } else if (c == '~') {
      sym(Tok::kNot, 1);
    } else if (c == '+') {
      sym(Tok::kChoiceOr, 1);
    } else if (c == '&') {
      sym(Tok::kChoiceAnd, 1);
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

Constant ParseConstant(const std::string& digits, std::size_t pos) {
  Constant value = 0;
  for (char d : digits) {
    Constant next = value * 10 + static_cast<Constant>(d - '0');
    if (next / 10 != value) throw SyntaxError("constant out of range", pos);
    value = next;
  }
  return value;
}

bool IsVariableName(std::string_view w) {
  return !w.empty() && w[0] >= 'a' && w[0] <= 'z' && !IsReservedWord(w);
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, ArityMap* arities)
      : tokens_(std::move(tokens)), arities_(arities) {}

  Formula ParseAll() {
    Formula f = ParseImplication();
    if (Peek().kind != Tok::kEnd) Fail("unexpected '" + Peek().text + "'");
    return f;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_++]; }
  [[noreturn]] void Fail(const std::string& message) const {
    throw SyntaxError(message, Peek().pos);
  }
  void Expect(Tok kind, const char* what) {
    if (Peek().kind != kind) {
      Fail(std::string("expected ") + what +
           (Peek().kind == Tok::kEnd ? " before end of input"
                                     : ", found '" + Peek().text + "'"));
    }
    ++pos_;
  }

  Formula ParseImplication() {
    Formula left = ParseLevel(Tok::kOr, Tok::kChoiceOr, Op::kOr, Op::kChoiceOr,
                              /*conjunctive=*/false);
    if (Peek().kind == Tok::kImplies) {
      ++pos_;
      return Formula::Implies(left, ParseImplication());
    }
    if (Peek().kind == Tok::kIff) {
      ++pos_;
      Formula right = ParseImplication();
      return Formula::And(
          {Formula::Implies(left, right), Formula::Implies(right, left)});
    }
    return left;
  }

  Formula ParseLevel(Tok par, Tok cho, Op par_op, Op cho_op, bool conjunctive) {
    auto operand = [&] {
      return conjunctive ? ParseUnary()
                         : ParseLevel(Tok::kAnd, Tok::kChoiceAnd, Op::kAnd,
                                      Op::kChoiceAnd, true);
    };
    Formula first = operand();
    Tok kind = Peek().kind;
    if (kind != par && kind != cho) return first;
    std::vector<Formula> operands{first};
    while (Peek().kind == par || Peek().kind == cho) {
      if (Peek().kind != kind) {
        Fail("mixing '" + tokens_[pos_].text +
             "' with a different connective of the same precedence needs "
             "parentheses");
      }
      ++pos_;
      operands.push_back(operand());
    }
    return Formula::MakeNary(kind == par ? par_op : cho_op,
                             std::move(operands));
  }

  Formula ParseUnary() {
    const Token& t = Peek();
    if (t.kind == Tok::kNot) {
      ++pos_;
      return Formula::Not(ParseUnary());
    }
    if (t.kind == Tok::kIdent) {
      std::optional<Op> q;
      if (t.text == "fa") q = Op::kForall;
      if (t.text == "ex") q = Op::kExists;
      if (t.text == "call") q = Op::kChoiceForall;
      if (t.text == "cex") q = Op::kChoiceExists;
      if (q) {
        ++pos_;
        if (Peek().kind != Tok::kIdent || !IsVariableName(Peek().text)) {
          Fail("expected a variable after quantifier");
        }
        std::string var = Next().text;
        Expect(Tok::kDot, "'.'");
        return Formula::MakeQuantifier(*q, var, ParseImplication());
      }
    }
    return ParsePrimary();
  }

  Formula ParsePrimary() {
    const Token& t = Peek();
    if (t.kind == Tok::kLParen) {
      ++pos_;
      Formula f = ParseImplication();
      Expect(Tok::kRParen, "')'");
      return f;
    }
    if (t.kind != Tok::kIdent) {
      Fail(t.kind == Tok::kEnd ? "unexpected end of input"
                               : "unexpected '" + t.text + "'");
    }
    if (t.text == "top") {
      ++pos_;
      return Formula::Top();
    }
    if (t.text == "bot") {
      ++pos_;
      return Formula::Bot();
    }
    if (IsReservedWord(t.text)) Fail("unexpected keyword '" + t.text + "'");
    std::size_t letter_pos = t.pos;
    std::string letter = Next().text;
    std::vector<Term> args;
    if (Peek().kind == Tok::kLParen) {
      ++pos_;
      for (;;) {
        const Token& a = Peek();
        if (a.kind == Tok::kNumber) {
          args.push_back(Term::Const(ParseConstant(a.text, a.pos)));
        } else if (a.kind == Tok::kIdent && IsVariableName(a.text)) {
          args.push_back(Term::Variable(a.text));
        } else {
          Fail("expected a term");
        }
        ++pos_;
        if (Peek().kind == Tok::kComma) {
          ++pos_;
          continue;
        }
        Expect(Tok::kRParen, "',' or ')'");
        break;
      }
    }
    try {
      local_.Declare(letter, args.size());
      if (arities_) arities_->Declare(letter, args.size());
    } catch (const Error& e) {
      throw SyntaxError(e.what(), letter_pos);
    }
    return Formula::Atom(std::move(letter), std::move(args));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ArityMap* arities_;
  ArityMap local_;
};

// Precedence levels used by the printer.
constexpr int kLevelImplies = 0;
constexpr int kLevelDisj = 1;
constexpr int kLevelConj = 2;
constexpr int kLevelUnary = 3;
constexpr int kLevelPrimary = 4;

int LevelOf(Op op) {
  switch (op) {
    case Op::kImplies: return kLevelImplies;
    case Op::kOr:
    case Op::kChoiceOr: return kLevelDisj;
    case Op::kAnd:
    case Op::kChoiceAnd: return kLevelConj;
    case Op::kNot:
    case Op::kForall:
    case Op::kExists:
    case Op::kChoiceForall:
    case Op::kChoiceExists: return kLevelUnary;
    default: return kLevelPrimary;
  }
}

const char* Symbol(Op op) {
  switch (op) {
    case Op::kOr: return " \\/ ";
    case Op::kChoiceOr: return " + ";
    case Op::kAnd: return " /\\ ";
    case Op::kChoiceAnd: return " & ";
    case Op::kImplies: return " -> ";
    case Op::kForall: return "fa ";
    case Op::kExists: return "ex ";
    case Op::kChoiceForall: return "call ";
    case Op::kChoiceExists: return "cex ";
    default: return "";
  }
}

void PrintRec(const Formula& f, int min_level, bool tail_open,
              std::string& out) {
  bool parens = LevelOf(f.op()) < min_level ||
                (IsQuantifier(f.op()) && !tail_open);
  if (parens) {
    out += '(';
    PrintRec(f, kLevelImplies, true, out);
    out += ')';
    return;
  }
  switch (f.op()) {
    case Op::kTop:
      out += "top";
      return;
    case Op::kBot:
      out += "bot";
      return;
    case Op::kAtom:
      out += f.letter();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          out += f.args()[i].ToString();
        }
        out += ')';
      }
      return;
    case Op::kNot:
      out += '~';
      PrintRec(f.body(), kLevelUnary, tail_open, out);
      return;
    case Op::kForall:
    case Op::kExists:
    case Op::kChoiceForall:
    case Op::kChoiceExists:
      out += Symbol(f.op());
      out += f.variable();
      out += " . ";
      PrintRec(f.body(), kLevelImplies, true, out);
      return;
    case Op::kImplies:
      PrintRec(f.child(0), kLevelDisj, false, out);
      out += Symbol(f.op());
      PrintRec(f.child(1), kLevelImplies, tail_open, out);
      return;
    default: {
      int level = LevelOf(f.op()) + 1;
      for (std::size_t i = 0; i < f.arity(); ++i) {
        if (i) out += Symbol(f.op());
        bool last = i + 1 == f.arity();
        PrintRec(f.child(i), level, last && tail_open, out);
      }
    }
  }
}

}  // namespace

bool IsReservedWord(std::string_view word) {
  for (std::string_view r : kReserved) {
    if (word == r) return true;
  }
  return false;
}

Formula Parse(std::string_view text, ArityMap* arities) {
  ArityMap scratch;
  if (arities) scratch = *arities;
  Parser parser(Lex(text), &scratch);
  Formula f = parser.ParseAll();
  if (arities) *arities = std::move(scratch);
  return f;
}

std::string Print(const Formula& f) {
  std::string out;
  PrintRec(f, kLevelImplies, true, out);
  return out;
}

Term ParseTerm(std::string_view text) {
  auto tokens = Lex(text);
  if (tokens.size() != 2) throw SyntaxError("expected a single term", 0);
  const Token& t = tokens[0];
  if (t.kind == Tok::kNumber) return Term::Const(ParseConstant(t.text, t.pos));
  if (t.kind == Tok::kIdent && IsVariableName(t.text)) {
    return Term::Variable(t.text);
  }
  throw SyntaxError("expected a term", t.pos);
}

}  // namespace colog
