#include <doctest.h>

#include <cmath>
#include <random>

#include "fracpainleve/errors.hpp"
#include "fracpainleve/existence.hpp"
#include "fracpainleve/specfun.hpp"

namespace ex = fracpainleve::existence;

namespace {

ex::IvpProblem square(double alpha, std::optional<double> lipschitz) {
  ex::IvpProblem p;
  p.alpha = alpha;
  p.rhs = [](double, double y) { return y * y; };
  p.a = 0.0;
  p.b = 1.0;
  p.y0 = 1.0;
  p.box_radius = 1.0;
  p.lipschitz = lipschitz;
  return p;
}

void check_invariants(const ex::ExistenceCertificate& c, double span) {
  CHECK(ex::contraction_constant(c) < 1.0);
  if (c.M && c.K) CHECK(ex::self_map_radius(c) <= *c.M);
  CHECK(c.h <= span);
  CHECK(c.h > 0.0);
  CHECK(c.k == ex::contraction_constant(c));
}

}  // namespace

TEST_CASE("y^2 at alpha = 1") {
  const auto c = ex::certify_nonlinear(square(1.0, 4.0), 64);
  CHECK(c.K_sampled == 4.0);
  CHECK(*c.K == doctest::Approx(4.2));
  CHECK(c.L == 4.0);
  CHECK_FALSE(c.lipschitz_estimated);
  CHECK(c.h == doctest::Approx(0.225).epsilon(1e-12));
  CHECK(c.k == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(c.sampled);
  check_invariants(c, 1.0);
}

TEST_CASE("y^2 at alpha = 0.5") {
  const auto c = ex::certify_nonlinear(square(0.5, 4.0), 64);
  CHECK(c.h == doctest::Approx(0.03976078202199582).epsilon(1e-12));
  CHECK(c.k == doctest::Approx(0.9).epsilon(1e-12));
  check_invariants(c, 1.0);
}

TEST_CASE("finite-difference Lipschitz estimate") {
  const auto c = ex::certify_nonlinear(square(1.0, std::nullopt), 64);
  CHECK(c.lipschitz_estimated);
  CHECK(c.L == doctest::Approx(4.0 * 1.25).epsilon(1e-8));
  check_invariants(c, 1.0);
}

TEST_CASE("zero field") {
  auto p = square(0.7, std::nullopt);
  p.rhs = [](double, double) { return 0.0; };
  const auto c = ex::certify_nonlinear(p, 16);
  CHECK(*c.K == 0.0);
  CHECK(c.h == 1.0);
  CHECK(c.k == 0.0);
}

TEST_CASE("non-finite rhs is rejected") {
  auto p = square(0.7, std::nullopt);
  p.rhs = [](double, double y) { return 1.0 / (y - 1.0); };
  CHECK_THROWS_AS(ex::certify_nonlinear(p, 3), fracpainleve::DomainError);
}

TEST_CASE("invalid problems") {
  auto p = square(1.5, 1.0);
  CHECK_THROWS_AS(ex::certify_nonlinear(p, 16), fracpainleve::InputError);
  p = square(0.5, 1.0);
  p.box_radius = 0.0;
  CHECK_THROWS_AS(ex::certify_nonlinear(p, 16), fracpainleve::InputError);
  p = square(0.5, 1.0);
  p.b = p.a;
  CHECK_THROWS_AS(ex::certify_nonlinear(p, 16), fracpainleve::InputError);
}

TEST_CASE("linear certificates") {
  const ex::CertifyOptions exact{0.9, 1.0, 1.25};
  const auto one = [](double) { return 1.0; };

  auto c = ex::certify_linear(0.5, one, 0.0, 0.25, 32, exact);
  CHECK(c.k == doctest::Approx(0.5641895835477563).epsilon(1e-12));
  CHECK(c.h == 0.25);
  CHECK_FALSE(c.continuation_required);
  CHECK_FALSE(c.M.has_value());

  c = ex::certify_linear(0.5, one, 0.0, 0.25, 32);
  CHECK(c.L == doctest::Approx(1.05));
  CHECK(c.k == doctest::Approx(1.05 * 0.5641895835477563).epsilon(1e-12));

  c = ex::certify_linear(0.5, [](double) { return 0.0; }, 0.0, 3.0, 32);
  CHECK(c.k == 0.0);
  CHECK(c.h == 3.0);

  c = ex::certify_linear(0.5, one, 0.0, 4.0, 32, exact);
  CHECK(c.continuation_required);
  CHECK(c.h == doctest::Approx(0.6361725123519332).epsilon(1e-12));
  CHECK(c.k == doctest::Approx(0.9).epsilon(1e-12));

  CHECK_THROWS_AS(ex::certify_linear(0.5, [](double t) { return 1.0 / t; }, 0.0, 1.0, 8),
                  fracpainleve::DomainError);
}

TEST_CASE("alpha = 1 reduction: k = |lambda| h") {
  for (double lambda : {-2.0, -0.5, 0.3, 3.0}) {
    ex::IvpProblem p;
    p.alpha = 1.0;
    p.rhs = [lambda](double, double y) { return lambda * y; };
    p.a = 0.0;
    p.b = 2.0;
    p.y0 = 0.5;
    p.box_radius = 2.0;
    p.lipschitz = std::abs(lambda);
    const auto c = ex::certify_nonlinear(p, 32);
    CHECK(std::abs(c.k - std::abs(lambda) * c.h) <= 1e-12);
  }
}

TEST_CASE("randomized invariants and monotonicity") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> alpha_dist(0.1, 1.0);
  std::uniform_real_distribution<double> l_dist(0.1, 20.0);
  std::uniform_real_distribution<double> m_dist(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    ex::IvpProblem p = square(alpha_dist(rng), l_dist(rng));
    p.box_radius = m_dist(rng);
    p.b = 3.0;
    const auto c = ex::certify_nonlinear(p, 24);
    check_invariants(c, 3.0);

    auto larger_l = p;
    larger_l.lipschitz = *p.lipschitz * 1.5;
    CHECK(ex::certify_nonlinear(larger_l, 24).h <= c.h);

    // Raising M only changes K through the box; keep F constant so h depends on M alone.
    auto flat = p;
    flat.rhs = [](double, double) { return 2.0; };
    auto flat_big = flat;
    flat_big.box_radius = p.box_radius * 2.0;
    CHECK(ex::certify_nonlinear(flat_big, 24).h >= ex::certify_nonlinear(flat, 24).h);
  }
}

TEST_CASE("a-priori factor") {
  const auto c = ex::certify_nonlinear(square(1.0, 4.0), 16);
  CHECK(c.apriori_bound_factor() == doctest::Approx(c.k / (1.0 - c.k)));
  CHECK(c.interval_end() == c.a + c.h);
}
