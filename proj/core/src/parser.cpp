// Copyright 2026 The atlkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "atlkd/parser.hpp"

#include <cctype>
#include <sstream>

namespace atlkd {

namespace {

enum class Tok {
  Word,      // [A-Za-z0-9_]+
  Bang,      // !
  Amp,       // &
  Pipe,      // |
  Arrow,     // ->
  DArrow,    // <->
  LParen,
  RParen,
  LBrace,
  RBrace,
  LLAngle,   // <<
  RRAngle,   // >>
  LLBrack,   // [[
  RRBrack,   // ]]
  Comma,
  End,
};

struct Token {
  Tok type;
  std::string text;
  int line;
  int col;
};

std::string tok_name(Tok t) {
  switch (t) {
    case Tok::Word: return "identifier";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LLAngle: return "'<<'";
    case Tok::RRAngle: return "'>>'";
    case Tok::LLBrack: return "'[['";
    case Tok::RRBrack: return "']]'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::vector<Token> lex(const std::string& text, int first_line) {
  std::vector<Token> out;
  int line = first_line;
  int col = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError(line, col, msg, {});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++col;
      ++i;
      continue;
    }
    const int tline = line;
    const int tcol = col;
    auto push = [&](Tok t, std::size_t len) {
      out.push_back({t, text.substr(i, len), tline, tcol});
      i += len;
      col += static_cast<int>(len);
    };
    if (word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      push(Tok::Word, j - i);
      continue;
    }
    switch (c) {
      case '!': push(Tok::Bang, 1); break;
      case '&': push(Tok::Amp, 1); break;
      case '|': push(Tok::Pipe, 1); break;
      case '(': push(Tok::LParen, 1); break;
      case ')': push(Tok::RParen, 1); break;
      case '{': push(Tok::LBrace, 1); break;
      case '}': push(Tok::RBrace, 1); break;
      case ',': push(Tok::Comma, 1); break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') push(Tok::Arrow, 2);
        else fail("stray '-'; did you mean '->'?");
        break;
      case '<':
        if (text.compare(i, 3, "<->") == 0) push(Tok::DArrow, 3);
        else if (i + 1 < text.size() && text[i + 1] == '<') push(Tok::LLAngle, 2);
        else fail("stray '<'; expected '<<' or '<->'");
        break;
      case '>':
        if (i + 1 < text.size() && text[i + 1] == '>') push(Tok::RRAngle, 2);
        else fail("stray '>'; expected '>>'");
        break;
      case '[':
        if (i + 1 < text.size() && text[i + 1] == '[') push(Tok::LLBrack, 2);
        else fail("stray '['; expected '[['");
        break;
      case ']':
        if (i + 1 < text.size() && text[i + 1] == ']') push(Tok::RRBrack, 2);
        else fail("stray ']'; expected ']]'");
        break;
      default: {
        std::ostringstream os;
        os << "unexpected character '" << c << "'";
        fail(os.str());
      }
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_atom_word(const std::string& w) {
  if (w.empty()) return false;
  const char c = w[0];
  if (!(std::islower(static_cast<unsigned char>(c)) != 0 || c == '_'))
    return false;
  return w != "true" && w != "false";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    Formula f = parse_iff();
    expect(Tok::End, {"end of formula"});
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool at(Tok t) const { return peek().type == t; }
  bool at_word(const char* w) const {
    return peek().type == Tok::Word && peek().text == w;
  }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    const Token& t = peek();
    std::ostringstream os;
    os << "unexpected " << (t.type == Tok::Word ? "'" + t.text + "'"
                                                : tok_name(t.type));
    throw ParseError(t.line, t.col, os.str(), expected);
  }

  Token expect(Tok t, const std::vector<std::string>& expected) {
    if (!at(t)) fail(expected);
    return advance();
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (at(Tok::DArrow)) {
      advance();
      return Formula::equivalence(lhs, parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (at(Tok::Arrow)) {
      advance();
      return Formula::implies(lhs, parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (at(Tok::Pipe)) {
      advance();
      lhs = Formula::disjunction(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (at(Tok::Amp)) {
      advance();
      lhs = Formula::conjunction(lhs, parse_unary());
    }
    return lhs;
  }

  Coalition parse_coalition_braced() {
    expect(Tok::LBrace, {"'{'"});
    Coalition g = parse_members(Tok::RBrace);
    expect(Tok::RBrace, {"'}'"});
    return g;
  }

  Coalition parse_members(Tok closing) {
    std::vector<AgentId> members;
    if (!at(closing)) {
      while (true) {
        const Token& t = peek();
        if (t.type != Tok::Word) fail({"agent id"});
        if (t.text == kEnvironmentAgent)
          throw ParseError(t.line, t.col,
                           "the environment \"e\" cannot be a coalition member",
                           {"agent id other than \"e\""});
        members.push_back(t.text);
        advance();
        if (at(Tok::Comma)) {
          advance();
          continue;
        }
        break;
      }
    }
    return Coalition(std::move(members));
  }

  // Parses the body after a cooperation/path prefix: X φ, F φ, G φ or
  // ( φ U ψ ) / ( φ W ψ ).  `build` receives an operator tag and operands.
  enum class TempOp { Next, Eventually, Globally, Until, WeakUntil };

  struct TempForm {
    TempOp op;
    Formula a;
    Formula b;  // meaningful for Until/WeakUntil
  };

  TempForm parse_temporal_body(const char* who) {
    if (at_word("X")) {
      advance();
      return {TempOp::Next, parse_unary(), Formula::falsum()};
    }
    if (at_word("F")) {
      advance();
      return {TempOp::Eventually, parse_unary(), Formula::falsum()};
    }
    if (at_word("G")) {
      advance();
      return {TempOp::Globally, parse_unary(), Formula::falsum()};
    }
    if (at(Tok::LParen)) {
      advance();
      Formula a = parse_iff();
      TempOp op;
      if (at_word("U")) {
        op = TempOp::Until;
      } else if (at_word("W")) {
        op = TempOp::WeakUntil;
      } else {
        fail({"'U'", "'W'"});
      }
      advance();
      Formula b = parse_iff();
      expect(Tok::RParen, {"')'"});
      return {op, std::move(a), std::move(b)};
    }
    fail({std::string("'X', 'F', 'G' or '(' after ") + who});
  }

  Formula parse_unary() {
    if (at(Tok::Bang)) {
      advance();
      return Formula::negation(parse_unary());
    }
    if (at_word("K") || at_word("P")) {
      const bool knows = peek().text == "K";
      advance();
      Coalition g = parse_coalition_braced();
      Formula body = parse_unary();
      return knows ? Formula::dknows(std::move(g), std::move(body))
                   : Formula::poss(std::move(g), std::move(body));
    }
    if (at(Tok::LLAngle)) {
      advance();
      Coalition g = parse_members(Tok::RRAngle);
      expect(Tok::RRAngle, {"'>>'"});
      TempForm t = parse_temporal_body("'<<...>>'");
      switch (t.op) {
        case TempOp::Next: return Formula::coop_next(g, t.a);
        case TempOp::Eventually: return Formula::coop_eventually(g, t.a);
        case TempOp::Globally: return Formula::coop_globally(g, t.a);
        case TempOp::Until: return Formula::coop_until(g, t.a, t.b);
        case TempOp::WeakUntil: return Formula::coop_weak_until(g, t.a, t.b);
      }
      fail({"temporal operator"});
    }
    if (at(Tok::LLBrack)) {
      advance();
      Coalition g = parse_members(Tok::RRBrack);
      expect(Tok::RRBrack, {"']]'"});
      TempForm t = parse_temporal_body("'[[...]]'");
      switch (t.op) {
        case TempOp::Next: return Formula::dual_coop_next(g, t.a);
        case TempOp::Eventually: return Formula::dual_coop_eventually(g, t.a);
        case TempOp::Globally: return Formula::dual_coop_globally(g, t.a);
        case TempOp::Until: return Formula::dual_coop_until(g, t.a, t.b);
        case TempOp::WeakUntil:
          return Formula::dual_coop_weak_until(g, t.a, t.b);
      }
      fail({"temporal operator"});
    }
    if (at_word("E")) {
      advance();
      TempForm t = parse_temporal_body("'E'");
      switch (t.op) {
        case TempOp::Next: return Formula::exists_next(t.a);
        case TempOp::Eventually: return Formula::exists_eventually(t.a);
        case TempOp::Globally: return Formula::exists_globally(t.a);
        case TempOp::Until: return Formula::exists_until(t.a, t.b);
        case TempOp::WeakUntil: return Formula::exists_weak_until(t.a, t.b);
      }
      fail({"temporal operator"});
    }
    if (at_word("A")) {
      advance();
      TempForm t = parse_temporal_body("'A'");
      switch (t.op) {
        case TempOp::Next: return Formula::forall_next(t.a);
        case TempOp::Eventually: return Formula::forall_eventually(t.a);
        case TempOp::Globally: return Formula::forall_globally(t.a);
        case TempOp::Until: return Formula::forall_until(t.a, t.b);
        case TempOp::WeakUntil: return Formula::forall_weak_until(t.a, t.b);
      }
      fail({"temporal operator"});
    }
    return parse_primary();
  }

  Formula parse_primary() {
    if (at(Tok::LParen)) {
      advance();
      Formula f = parse_iff();
      expect(Tok::RParen, {"')'"});
      return f;
    }
    if (at(Tok::Word)) {
      const Token& t = peek();
      if (t.text == "true") {
        advance();
        return Formula::verum();
      }
      if (t.text == "false") {
        advance();
        return Formula::falsum();
      }
      if (is_atom_word(t.text)) {
        advance();
        return Formula::atom(t.text);
      }
    }
    fail({"atom", "'true'", "'false'", "'!'", "'('", "'K'", "'P'", "'<<'",
          "'[['", "'E'", "'A'"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string format_message(int line, int column, const std::string& message,
                           const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "parse error at " << line << ":" << column << ": " << message;
  if (!expected.empty()) {
    os << "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(int line, int column, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error(format_message(line, column, message, expected)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

Formula parse_formula(const std::string& text, int line) {
  Parser parser(lex(text, line));
  return parser.parse();
}

}  // namespace atlkd
