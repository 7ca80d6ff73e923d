#pragma once

// Small arithmetic expression language shared by every text format:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := integer | identifier | '(' expr ')'
// Identifiers may contain UTF-8 bytes so that "λ" is accepted.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "fedq/error.hpp"

namespace fedq::expr {

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t column)
      : InputError(what + " (column " + std::to_string(column + 1) + ")"), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

struct Node {
  enum class Kind { Number, Ident, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind = Kind::Number;
  mpq_class number;
  std::string name;
  long exponent = 0;
  std::size_t column = 0;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

std::unique_ptr<Node> parse(std::string_view text);

/// Callbacks used to fold a parse tree into a value of type T.
template <class T>
struct Algebra {
  std::function<T(const mpq_class&)> number;
  std::function<T(const std::string&, std::size_t column)> ident;
  std::function<T(const T&, const T&, std::size_t column)> divide;
  std::function<T(const T&, long, std::size_t column)> power;
};

template <class T>
T evaluate(const Node& node, const Algebra<T>& alg) {
  switch (node.kind) {
    case Node::Kind::Number:
      return alg.number(node.number);
    case Node::Kind::Ident:
      return alg.ident(node.name, node.column);
    case Node::Kind::Add:
      return evaluate(*node.lhs, alg) + evaluate(*node.rhs, alg);
    case Node::Kind::Sub:
      return evaluate(*node.lhs, alg) - evaluate(*node.rhs, alg);
    case Node::Kind::Mul:
      return evaluate(*node.lhs, alg) * evaluate(*node.rhs, alg);
    case Node::Kind::Div:
      return alg.divide(evaluate(*node.lhs, alg), evaluate(*node.rhs, alg), node.column);
    case Node::Kind::Pow:
      return alg.power(evaluate(*node.lhs, alg), node.exponent, node.column);
    case Node::Kind::Neg:
      return -evaluate(*node.lhs, alg);
  }
  throw InternalError("expr: unknown node kind");
}

}  // namespace fedq::expr
