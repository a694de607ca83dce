#include "fracpainleve/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace fracpainleve::expr {

struct Expression::Node {
  enum class Kind { number, var_t, var_y, neg, add, sub, mul, div, pow, sin, cos, exp };
  Kind kind = Kind::number;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse_all() {
    NodePtr root = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::Kind::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make(Node::Kind::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::Kind::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make(Node::Kind::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Node::Kind::neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make(Node::Kind::pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string_view word = src_.substr(start, pos_ - start);
      if (word == "t") return make(Node::Kind::var_t);
      if (word == "y") return make(Node::Kind::var_y);
      Node::Kind fn;
      if (word == "sin") {
        fn = Node::Kind::sin;
      } else if (word == "cos") {
        fn = Node::Kind::cos;
      } else if (word == "exp") {
        fn = Node::Kind::exp;
      } else {
        pos_ = start;
        fail("unknown identifier '" + std::string(word) + "'");
      }
      if (!accept('(')) fail("expected '(' after " + std::string(word));
      NodePtr arg = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return make(fn, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr parse_number() {
    double value = 0.0;
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->value = value;
    return n;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, double t, double y) {
  switch (n.kind) {
    case Node::Kind::number: return n.value;
    case Node::Kind::var_t: return t;
    case Node::Kind::var_y: return y;
    case Node::Kind::neg: return -eval(*n.lhs, t, y);
    case Node::Kind::add: return eval(*n.lhs, t, y) + eval(*n.rhs, t, y);
    case Node::Kind::sub: return eval(*n.lhs, t, y) - eval(*n.rhs, t, y);
    case Node::Kind::mul: return eval(*n.lhs, t, y) * eval(*n.rhs, t, y);
    case Node::Kind::div: return eval(*n.lhs, t, y) / eval(*n.rhs, t, y);
    case Node::Kind::pow: {
      const double base = eval(*n.lhs, t, y);
      const double ex = eval(*n.rhs, t, y);
      if (ex == 2.0) return base * base;
      return std::pow(base, ex);
    }
    case Node::Kind::sin: return std::sin(eval(*n.lhs, t, y));
    case Node::Kind::cos: return std::cos(eval(*n.lhs, t, y));
    case Node::Kind::exp: return std::exp(eval(*n.lhs, t, y));
  }
  return 0.0;
}

bool mentions_y(const Node& n) {
  if (n.kind == Node::Kind::var_y) return true;
  return (n.lhs && mentions_y(*n.lhs)) || (n.rhs && mentions_y(*n.rhs));
}

}  // namespace

Expression Expression::parse(std::string_view source) {
  Parser parser(source);
  return Expression(parser.parse_all(), std::string(source));
}

double Expression::operator()(double t, double y) const { return eval(*root_, t, y); }

bool Expression::uses_y() const { return mentions_y(*root_); }

}  // namespace fracpainleve::expr
