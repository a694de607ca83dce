#include <doctest.h>

#include <cmath>

#include "fracpainleve/expr.hpp"

using fracpainleve::expr::Expression;
using fracpainleve::expr::ParseError;

TEST_CASE("literals and variables") {
  CHECK(Expression::parse("3")(0.0, 0.0) == 3.0);
  CHECK(Expression::parse("2.5e-1")(0.0, 0.0) == 0.25);
  CHECK(Expression::parse("t")(1.5, 7.0) == 1.5);
  CHECK(Expression::parse("y")(1.5, 7.0) == 7.0);
}

TEST_CASE("y^2 spot check") {
  const auto f = Expression::parse("y^2");
  CHECK(f(0.0, 3.0) == 9.0);
  CHECK(f.uses_y());
  CHECK_FALSE(Expression::parse("sin(t) + 1").uses_y());
}

TEST_CASE("precedence and associativity") {
  CHECK(Expression::parse("1 + 2 * 3")(0, 0) == 7.0);
  CHECK(Expression::parse("(1 + 2) * 3")(0, 0) == 9.0);
  CHECK(Expression::parse("8 / 4 / 2")(0, 0) == 1.0);
  CHECK(Expression::parse("10 - 4 - 3")(0, 0) == 3.0);
  CHECK(Expression::parse("2^3^2")(0, 0) == 512.0);
  CHECK(Expression::parse("-y^2")(0, 3.0) == -9.0);
  CHECK(Expression::parse("2^-1")(0, 0) == 0.5);
  CHECK(Expression::parse("--2")(0, 0) == 2.0);
  CHECK(Expression::parse("y - y^2")(0, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("functions") {
  CHECK(Expression::parse("sin(t)")(0.3, 0) == doctest::Approx(std::sin(0.3)));
  CHECK(Expression::parse("cos(t*y)")(0.3, 2.0) == doctest::Approx(std::cos(0.6)));
  CHECK(Expression::parse("exp(-t) * y")(1.0, 2.0) == doctest::Approx(2.0 * std::exp(-1.0)));
}

TEST_CASE("grammar errors carry the position") {
  const auto position_of = [](const char* src) {
    try {
      Expression::parse(src);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  CHECK(position_of("y +") == 3);
  CHECK(position_of("y $ 2") == 2);
  CHECK(position_of("tan(t)") == 0);
  CHECK(position_of("(y + 1") == 6);
  CHECK(position_of("sin t") == 4);
  CHECK(position_of("") == 0);
  CHECK(position_of("y y") == 2);
}

TEST_CASE("parse errors are input errors") {
  CHECK_THROWS_AS(Expression::parse("1 +* 2"), fracpainleve::InputError);
}
