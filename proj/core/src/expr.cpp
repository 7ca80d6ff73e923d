#include "fedq/expr.hpp"

#include <cctype>

namespace fedq::expr {

namespace {

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<Node> run() {
    auto node = parse_sum();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return node;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static std::unique_ptr<Node> binary(Node::Kind kind, std::unique_ptr<Node> lhs, std::unique_ptr<Node> rhs,
                                      std::size_t column) {
    auto node = std::make_unique<Node>();
    node->kind = kind;
    node->column = column;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  std::unique_ptr<Node> parse_sum() {
    auto lhs = parse_product();
    for (;;) {
      skip_space();
      std::size_t col = pos_;
      if (accept('+')) {
        lhs = binary(Node::Kind::Add, std::move(lhs), parse_product(), col);
      } else if (accept('-')) {
        lhs = binary(Node::Kind::Sub, std::move(lhs), parse_product(), col);
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> parse_product() {
    auto lhs = parse_unary();
    for (;;) {
      skip_space();
      std::size_t col = pos_;
      if (accept('*')) {
        lhs = binary(Node::Kind::Mul, std::move(lhs), parse_unary(), col);
      } else if (accept('/')) {
        lhs = binary(Node::Kind::Div, std::move(lhs), parse_unary(), col);
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Node> parse_unary() {
    skip_space();
    std::size_t col = pos_;
    if (accept('-')) {
      auto node = std::make_unique<Node>();
      node->kind = Node::Kind::Neg;
      node->column = col;
      node->lhs = parse_unary();
      return node;
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  std::unique_ptr<Node> parse_power() {
    auto base = parse_atom();
    skip_space();
    std::size_t col = pos_;
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", pos_);
    long e = std::stol(std::string(text_.substr(start, pos_ - start)));
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::Pow;
    node->column = col;
    node->exponent = negative ? -e : e;
    node->lhs = std::move(base);
    return node;
  }

  std::unique_ptr<Node> parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    std::size_t col = pos_;
    auto c = static_cast<unsigned char>(text_[pos_]);
    if (accept('(')) {
      auto inner = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(c)) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto node = std::make_unique<Node>();
      node->kind = Node::Kind::Number;
      node->column = col;
      node->number = mpq_class(std::string(text_.substr(col, pos_ - col)));
      return node;
    }
    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_char(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto node = std::make_unique<Node>();
      node->kind = Node::Kind::Ident;
      node->column = col;
      node->name = std::string(text_.substr(col, pos_ - col));
      return node;
    }
    throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
  }
};

}  // namespace

std::unique_ptr<Node> parse(std::string_view text) { return Parser(text).run(); }

}  // namespace fedq::expr
