// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>

#include "algexpr/expr.hpp"

namespace algexpr {

namespace detail {

class Printer {
 public:
  void node(const ExprNode& n, std::size_t indent) {
    switch (n.kind) {
      case NodeKind::empty:
        out_ += "(empty)";
        return;
      case NodeKind::vertex:
        out_ += "(vertex " + n.name + ")";
        return;
      case NodeKind::union_:
      case NodeKind::join:
        out_ += "(";
        out_ += keyword(n.kind);
        for (const auto& c : n.children) {
          newline(indent + 2);
          node(c, indent + 2);
        }
        out_ += ")";
        return;
      case NodeKind::inc:
        out_ += "(inc " + n.name + " (";
        inc_edges(n);
        out_ += ")";
        newline(indent + 2);
        node(n.child(), indent + 2);
        out_ += ")";
        return;
      case NodeKind::subst:
        out_ += "(subst ";
        pattern(n.pattern->graph);
        bindings(n, indent);
        return;
      case NodeKind::subst_td:
        out_ += "(subst-td";
        newline(indent + 2);
        node(*n.pattern_expr, indent + 2);
        bindings(n, indent);
        return;
    }
  }

  std::string take() { return std::move(out_); }
  void raw(const std::string& s) { out_ += s; }

 private:
  void newline(std::size_t indent) {
    out_ += '\n';
    out_.append(indent, ' ');
  }

  void inc_edges(const ExprNode& n) {
    bool first = true;
    auto sep = [&] {
      if (!first) out_ += ' ';
      first = false;
    };
    for (const auto& v : n.out_edges) {
      sep();
      out_ += "(" + n.name + " " + v + ")";
    }
    for (const auto& u : n.in_edges) {
      sep();
      out_ += "(" + u + " " + n.name + ")";
    }
  }

  void pattern(const Graph& g) {
    out_ += "(graph (";
    for (VertexIndex u = 0; u < g.vertex_count(); ++u) {
      if (u) out_ += ' ';
      out_ += g.name(u);
    }
    out_ += ") (";
    bool first = true;
    for (auto [u, v] : g.edges()) {
      if (!first) out_ += ' ';
      first = false;
      out_ += "(" + g.name(u) + " " + g.name(v) + ")";
    }
    out_ += "))";
  }

  void bindings(const ExprNode& n, std::size_t indent) {
    newline(indent + 2);
    out_ += "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) newline(indent + 3);
      out_ += "(" + n.bindings[i] + " ";
      node(n.children[i], indent + 4);
      out_ += ")";
    }
    out_ += "))";
  }

  std::string out_;
};

}  // namespace detail

/// Canonical text form; parse(print(e)) == e.
inline std::string print(const Expression& e) {
  detail::Printer printer;
  printer.raw("(");
  printer.raw(std::string(to_string(e.mode)));
  printer.raw("\n  ");
  printer.node(e.root, 2);
  printer.raw(")\n");
  return printer.take();
}

}  // namespace algexpr
