// Copyright 2026 The ifcmr Authors
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

#include "ifcmr/lang/parser.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <vector>

namespace ifcmr {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* const kTwoChar[] = {":=", "==", "&&", "||"};
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#' || (ch == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      t.kind = Tok::Sym;
      for (const char* two : kTwoChar) {
        if (src.substr(i, 2) == two) t.text = two;
      }
      if (t.text.empty()) {
        if (std::string_view("();{}[],!+-<").find(ch) == std::string_view::npos) {
          throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
        }
        t.text = std::string(1, ch);
      }
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

const std::set<std::string, std::less<>> kKeywords = {"skip", "if",   "then",  "else", "while", "do", "input",
                                                      "from", "output", "to", "true", "false", "T",  "F"};
const std::set<std::string, std::less<>> kHandlerKeywords = {"map", "wake", "clone", "retrieve", "clean", "on",
                                                             "in",  "i",    "val_def", "default", "LVL"};

class Parser {
 public:
  Parser(std::string_view src, Dialect dialect) : toks_(lex(src)), dialect_(dialect) {}

  StmtPtr program() {
    StmtPtr s = stmts();
    if (peek().kind != Tok::End) fail(peek(), "expected ';' or end of input, found " + describe(peek()));
    return s;
  }

  ExprPtr expression_only() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()) + " after expression");
    return e;
  }

 private:
  bool handler() const { return dialect_ == Dialect::Handler; }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool is_sym(const Token& t, std::string_view s) const { return t.kind == Tok::Sym && t.text == s; }
  bool is_word(const Token& t, std::string_view s) const { return t.kind == Tok::Ident && t.text == s; }

  bool accept_sym(std::string_view s) {
    if (!is_sym(peek(), s)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view s) {
    if (!is_word(peek(), s)) return false;
    next();
    return true;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End:
        return "end of input";
      case Tok::Int:
        return "integer " + t.text;
      default:
        return "'" + t.text + "'";
    }
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }

  void expect_sym(std::string_view s, std::string_view context) {
    if (!accept_sym(s)) {
      fail(peek(), "expected '" + std::string(s) + "' " + std::string(context) + ", found " + describe(peek()));
    }
  }
  void expect_word(std::string_view s, std::string_view context) {
    if (!accept_word(s)) {
      fail(peek(), "expected '" + std::string(s) + "' " + std::string(context) + ", found " + describe(peek()));
    }
  }

  bool reserved(const std::string& w) const {
    return kKeywords.count(w) != 0 || (handler() && kHandlerKeywords.count(w) != 0);
  }

  std::string identifier(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || reserved(t.text)) fail(t, "expected " + std::string(what) + ", found " + describe(t));
    return next().text;
  }

  ChannelRef channel() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kKeywords.count(t.text) != 0) fail(t, "expected a channel name, found " + describe(t));
    std::string name = next().text;
    if (handler() && name == "c") return ChannelRef::param();
    return ChannelRef::named(std::move(name));
  }

  bool at_list_end() const { return peek().kind == Tok::End || is_sym(peek(), "}"); }

  StmtPtr stmts() {
    std::vector<StmtPtr> list;
    if (at_list_end()) return ast::skip();
    list.push_back(stmt());
    while (accept_sym(";")) {
      if (at_list_end()) break;
      list.push_back(stmt());
    }
    StmtPtr acc = list.back();
    for (auto it = std::next(list.rbegin()); it != list.rend(); ++it) acc = ast::seq(*it, acc);
    return acc;
  }

  StmtPtr body() {
    if (accept_sym("{")) {
      StmtPtr s = stmts();
      expect_sym("}", "to close block");
      return s;
    }
    return stmt();
  }

  StmtPtr stmt() {
    const Token& t = peek();
    if (is_sym(t, "{")) return body();
    if (t.kind != Tok::Ident) fail(t, "expected a statement, found " + describe(t));
    if (accept_word("skip")) return ast::skip();
    if (accept_word("if")) {
      ExprPtr c = expr();
      expect_word("then", "after if condition");
      StmtPtr a = body();
      StmtPtr b = accept_word("else") ? body() : ast::skip();
      return ast::if_(std::move(c), std::move(a), std::move(b));
    }
    if (accept_word("while")) {
      ExprPtr c = expr();
      expect_word("do", "after while condition");
      return ast::while_(std::move(c), body());
    }
    if (accept_word("input")) {
      std::string x = identifier("a variable after 'input'");
      expect_word("from", "in input instruction");
      return ast::input(std::move(x), channel());
    }
    if (accept_word("output")) {
      ExprPtr e = expr();
      expect_word("to", "in output instruction");
      return ast::output(std::move(e), channel());
    }
    if (handler()) {
      if (accept_word("map")) {
        expect_sym("(", "after 'map'");
        ExprPtr e = expr();
        expect_sym(",", "in map");
        ChannelRef ch = channel();
        expect_sym(",", "in map");
        Predicate p = predicate();
        expect_sym(")", "to close map");
        return ast::map(std::move(e), std::move(ch), std::move(p));
      }
      if (accept_word("wake")) {
        expect_sym("(", "after 'wake'");
        Predicate p = predicate();
        expect_sym(")", "to close wake");
        return ast::wake(std::move(p));
      }
      if (accept_word("clone")) {
        expect_sym("(", "after 'clone'");
        Predicate p = predicate();
        std::string tm = "PRIV_TM";
        std::string tr = "PRIV_TR";
        if (accept_sym(",")) {
          tm = identifier("a template name");
          expect_sym(",", "in clone");
          tr = identifier("a template name");
        }
        expect_sym(")", "to close clone");
        return ast::clone(std::move(p), std::move(tm), std::move(tr));
      }
      if (accept_word("retrieve")) {
        std::string x = identifier("a variable after 'retrieve'");
        expect_word("from", "in retrieve");
        ExprPtr e = expr();
        expect_word("on", "in retrieve");
        return ast::retrieve(std::move(x), std::move(e), channel());
      }
      if (accept_word("clean")) {
        expect_sym("(", "after 'clean'");
        ChannelRef ch = channel();
        expect_sym(",", "in clean");
        Predicate p = predicate();
        expect_sym(")", "to close clean");
        return ast::clean(std::move(ch), std::move(p));
      }
    }
    std::string x = identifier("a statement");
    expect_sym(":=", "after '" + x + "'");
    return ast::assign(std::move(x), expr());
  }

  Predicate predicate() {
    if (accept_sym("!")) {
      Predicate p = predicate();
      p.negated = !p.negated;
      return p;
    }
    const Token& t = peek();
    if (accept_word("canTell") || accept_word("isReady")) {
      const bool tell = t.text == "canTell";
      expect_sym("(", "after predicate name");
      ChannelRef ch = channel();
      expect_sym(")", "to close predicate");
      return tell ? ast::can_tell(std::move(ch)) : ast::is_ready(std::move(ch));
    }
    if (accept_word("identical")) {
      expect_sym("(", "after 'identical'");
      ExprPtr e = expr();
      expect_sym(")", "to close predicate");
      return ast::identical(std::move(e));
    }
    if (accept_word("isWaitingInput") || accept_word("isWaitingOutput")) {
      const bool in = t.text == "isWaitingInput";
      if (accept_sym("(")) expect_sym(")", "after predicate name");
      return in ? ast::waiting_input() : ast::waiting_output();
    }
    fail(t, "expected a predicate, found " + describe(t));
  }

  ExprPtr expr() {
    ExprPtr e = conj();
    while (accept_sym("||")) e = ast::binary(BinaryOp::Or, e, conj());
    return e;
  }

  ExprPtr conj() {
    ExprPtr e = comparison();
    while (accept_sym("&&")) e = ast::binary(BinaryOp::And, e, comparison());
    return e;
  }

  ExprPtr comparison() {
    ExprPtr e = additive();
    for (;;) {
      if (accept_sym("==")) {
        e = ast::binary(BinaryOp::Eq, e, additive());
      } else if (accept_sym("<")) {
        e = ast::binary(BinaryOp::Lt, e, additive());
      } else {
        return e;
      }
    }
  }

  ExprPtr additive() {
    ExprPtr e = unary();
    for (;;) {
      if (accept_sym("+")) {
        e = ast::binary(BinaryOp::Add, e, unary());
      } else if (accept_sym("-")) {
        e = ast::binary(BinaryOp::Monus, e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (accept_sym("!")) return ast::not_(unary());
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      std::uint64_t n = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
      if (ec != std::errc()) fail(t, "integer literal out of range");
      next();
      return ast::integer(n);
    }
    if (accept_sym("(")) {
      ExprPtr e = expr();
      expect_sym(")", "to close parenthesis");
      return e;
    }
    if (t.kind != Tok::Ident) fail(t, "expected an expression, found " + describe(t));
    if (accept_word("T") || accept_word("true")) return ast::boolean(true);
    if (accept_word("F") || accept_word("false")) return ast::boolean(false);
    if (handler()) {
      if ((t.text == "a" || t.text == "t") && is_word(peek(1), "in")) {
        const Privilege p = t.text == "a" ? Privilege::Ask : Privilege::Tell;
        next();
        next();
        PrivilegeTable table;
        if (accept_word("T_M")) {
          table = PrivilegeTable::Map;
        } else if (accept_word("T_R")) {
          table = PrivilegeTable::Reduce;
        } else {
          fail(peek(), "expected T_M or T_R, found " + describe(peek()));
        }
        expect_sym("[", "after table name");
        ExprPtr e = expr();
        expect_sym("]", "after execution index");
        expect_sym("[", "before channel");
        ChannelRef ch = channel();
        expect_sym("]", "after channel");
        return ast::has_privilege(table, p, std::move(e), std::move(ch));
      }
      if (accept_word("i")) return ast::exec_index();
      if (accept_word("val_def")) return ast::default_of(ChannelRef::param());
      if (accept_word("default")) {
        expect_sym("(", "after 'default'");
        ChannelRef ch = channel();
        expect_sym(")", "to close default");
        return ast::default_of(std::move(ch));
      }
      if (accept_word("LVL")) {
        expect_sym("[", "after 'LVL'");
        ChannelRef ch = channel();
        expect_sym("]", "after channel");
        expect_sym("==", "after LVL[...]");
        if (accept_word("H")) return ast::level_is(std::move(ch), Level::High);
        if (accept_word("L")) return ast::level_is(std::move(ch), Level::Low);
        fail(peek(), "expected H or L, found " + describe(peek()));
      }
    }
    return ast::var(identifier("an expression"));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Dialect dialect_;
};

void validate_stmt(const Stmt& s, const ChannelEnv& env) {
  auto check = [&](const ChannelRef& ref, Direction want, std::string_view what) {
    const Channel* ch = env.find(ref.name);
    if (ch == nullptr) throw ChannelError("undeclared channel '" + ref.name + "'");
    if (ch->direction != want) {
      throw ChannelError(std::string(what) + " on channel '" + ref.name + "', which is declared " +
                         std::string(to_string(ch->direction)));
    }
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Seq>) {
          validate_stmt(*n.first, env);
          validate_stmt(*n.second, env);
        } else if constexpr (std::is_same_v<T, Stmt::If>) {
          validate_stmt(*n.then_branch, env);
          validate_stmt(*n.else_branch, env);
        } else if constexpr (std::is_same_v<T, Stmt::While>) {
          validate_stmt(*n.body, env);
        } else if constexpr (std::is_same_v<T, Stmt::Input>) {
          check(n.channel, Direction::In, "input");
        } else if constexpr (std::is_same_v<T, Stmt::Output>) {
          check(n.channel, Direction::Out, "output");
        }
      },
      s.node);
}

}  // namespace

StmtPtr parse(std::string_view source, Dialect dialect) { return Parser(source, dialect).program(); }

ExprPtr parse_expr(std::string_view source, Dialect dialect) { return Parser(source, dialect).expression_only(); }

void validate_channels(const Stmt& program, const ChannelEnv& env) { validate_stmt(program, env); }

}  // namespace ifcmr
