#pragma once

// Right-hand-side expressions for problem files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 't' | 'y' | ('sin' | 'cos' | 'exp') '(' expr ')' | '(' expr ')'
//
// '^' binds tighter than unary minus and associates to the right, so
// -y^2 = -(y^2) and 2^3^2 = 2^9.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "fracpainleve/errors.hpp"

namespace fracpainleve::expr {

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Expression {
 public:
  static Expression parse(std::string_view source);

  double operator()(double t, double y) const;
  const std::string& source() const { return source_; }
  bool uses_y() const;

  struct Node;

 private:
  Expression(std::shared_ptr<const Node> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace fracpainleve::expr
