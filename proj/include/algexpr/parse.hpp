// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/expr.hpp"

namespace algexpr {

namespace detail {

struct Token {
  enum Kind { open, close, name, end } kind;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    SourcePos pos{line_, column_};
    if (at_ >= text_.size()) return {Token::end, "", pos};
    char c = text_[at_];
    if (c == '(' || c == ')') {
      advance();
      return {c == '(' ? Token::open : Token::close, std::string(1, c), pos};
    }
    std::size_t start = at_;
    while (at_ < text_.size() && !is_delimiter(text_[at_])) advance();
    std::string word(text_.substr(start, at_ - start));
    if (!is_valid_name(word)) {
      throw ParseError("invalid token '" + word + "'", pos.line, pos.column);
    }
    return {Token::name, std::move(word), pos};
  }

 private:
  static bool is_delimiter(char c) {
    return c == '(' || c == ')' || c == '#' || c == ' ' || c == '\t' ||
           c == '\n' || c == '\r';
  }

  void advance() {
    if (text_[at_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++at_;
  }

  void skip_space() {
    while (at_ < text_.size()) {
      char c = text_[at_];
      if (c == '#') {
        while (at_ < text_.size() && text_[at_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t at_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  Expression file() {
    if (look_.kind == Token::end) fail("empty input");
    expect(Token::open, "'('");
    Expression result;
    Token mode = expect(Token::name, "mode");
    if (mode.text == "directed") {
      result.mode = GraphKind::directed;
    } else if (mode.text == "undirected") {
      result.mode = GraphKind::undirected;
    } else {
      fail_at(mode.pos, "unknown mode '" + mode.text + "'");
    }
    mode_ = result.mode;
    result.root = expr();
    expect(Token::close, "')'");
    if (look_.kind != Token::end) fail("trailing input after expression");
    return result;
  }

 private:
  static constexpr std::size_t kMaxDepth = 2000;

  [[noreturn]] void fail(const std::string& message) { fail_at(look_.pos, message); }
  [[noreturn]] static void fail_at(SourcePos pos, const std::string& message) {
    throw ParseError(message, pos.line, pos.column);
  }

  void shift() { look_ = lexer_.next(); }

  Token expect(Token::Kind kind, const char* what) {
    if (look_.kind != kind) {
      fail(std::string("expected ") + what + ", found " + describe(look_));
    }
    Token token = std::move(look_);
    shift();
    return token;
  }

  static std::string describe(const Token& token) {
    switch (token.kind) {
      case Token::open: return "'('";
      case Token::close: return "')'";
      case Token::name: return "'" + token.text + "'";
      case Token::end: return "end of input";
    }
    return "?";
  }

  ExprNode expr() {
    if (++depth_ > kMaxDepth) fail("expression nested too deeply");
    SourcePos pos = look_.pos;
    expect(Token::open, "'('");
    Token op = expect(Token::name, "operator");
    ExprNode node;
    if (op.text == "empty") {
      node = make_empty();
    } else if (op.text == "vertex") {
      node = make_vertex(expect(Token::name, "vertex name").text);
    } else if (op.text == "union" || op.text == "join") {
      std::vector<ExprNode> children;
      while (look_.kind == Token::open) children.push_back(expr());
      if (children.size() < 2) {
        fail_at(op.pos, "arity violation: " + op.text + " needs at least two operands");
      }
      node = op.text == "union" ? make_union(std::move(children))
                                : make_join(std::move(children));
    } else if (op.text == "inc") {
      node = inc();
    } else if (op.text == "subst") {
      Graph pattern = pattern_graph();
      auto [names, children] = bindings();
      node = make_subst(std::move(pattern), std::move(names), std::move(children));
    } else if (op.text == "subst-td") {
      ExprNode pattern = expr();
      auto [names, children] = bindings();
      node = make_subst_td(std::move(pattern), std::move(names), std::move(children));
    } else {
      fail_at(op.pos, "unknown operator '" + op.text + "'");
    }
    expect(Token::close, "')'");
    node.pos = pos;
    --depth_;
    return node;
  }

  ExprNode inc() {
    std::string x = expect(Token::name, "inc vertex name").text;
    std::vector<std::string> out_edges;
    std::vector<std::string> in_edges;
    expect(Token::open, "'(' before inc edge list");
    while (look_.kind == Token::open) {
      SourcePos pos = look_.pos;
      auto [a, b] = edge();
      if (a == x && b == x) fail_at(pos, "loop at inc vertex '" + x + "'");
      if (a == x) {
        out_edges.push_back(b);
      } else if (b == x) {
        if (mode_ == GraphKind::directed) {
          in_edges.push_back(a);
        } else {
          out_edges.push_back(a);
        }
      } else {
        fail_at(pos, "inc edge (" + a + " " + b + ") does not contain '" + x + "'");
      }
    }
    expect(Token::close, "')' after inc edge list");
    ExprNode child = expr();
    return make_inc(std::move(x), std::move(out_edges), std::move(in_edges),
                    std::move(child));
  }

  std::pair<std::string, std::string> edge() {
    expect(Token::open, "'(' before edge");
    std::string a = expect(Token::name, "edge endpoint").text;
    std::string b = expect(Token::name, "edge endpoint").text;
    expect(Token::close, "')' after edge");
    return {std::move(a), std::move(b)};
  }

  Graph pattern_graph() {
    expect(Token::open, "'(' before pattern");
    Token keyword = expect(Token::name, "'graph'");
    if (keyword.text != "graph") fail_at(keyword.pos, "expected 'graph'");
    Graph g(mode_);
    expect(Token::open, "'(' before pattern vertices");
    while (look_.kind == Token::name) {
      Token name = expect(Token::name, "pattern vertex");
      if (g.find(name.text)) {
        fail_at(name.pos, "duplicate pattern vertex '" + name.text + "'");
      }
      g.add_vertex(name.text);
    }
    if (g.vertex_count() == 0) fail("pattern needs at least one vertex");
    expect(Token::close, "')' after pattern vertices");
    expect(Token::open, "'(' before pattern edges");
    while (look_.kind == Token::open) {
      SourcePos pos = look_.pos;
      auto [a, b] = edge();
      try {
        g.add_edge(a, b);
      } catch (const Error& e) {
        fail_at(pos, std::string("bad pattern edge: ") + e.what());
      }
    }
    expect(Token::close, "')' after pattern edges");
    expect(Token::close, "')' after pattern");
    g.sort_adjacency();
    return g;
  }

  std::pair<std::vector<std::string>, std::vector<ExprNode>> bindings() {
    std::vector<std::string> names;
    std::vector<ExprNode> children;
    expect(Token::open, "'(' before bindings");
    while (look_.kind == Token::open) {
      shift();
      names.push_back(expect(Token::name, "binding name").text);
      children.push_back(expr());
      expect(Token::close, "')' after binding");
    }
    if (names.empty()) fail("substitution needs at least one binding");
    expect(Token::close, "')' after bindings");
    return {std::move(names), std::move(children)};
  }

  Lexer lexer_;
  Token look_{Token::end, "", {}};
  GraphKind mode_ = GraphKind::directed;
  std::size_t depth_ = 0;
};

}  // namespace detail

inline Expression parse(std::string_view text) {
  return detail::Parser(text).file();
}

inline Expression parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace algexpr
