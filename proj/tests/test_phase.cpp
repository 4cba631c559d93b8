#include <doctest.h>

#include <cmath>
#include <string>

#include "lieham/catalog.hpp"
#include "lieham/errors.hpp"
#include "lieham/finite_difference.hpp"
#include "lieham/realizations.hpp"
#include "lieham/sampling.hpp"
#include "lieham/time_expression.hpp"
#include "support.hpp"

using namespace lieham;
using test::pt;
using test::vec;

TEST_SUITE("phase") {
  TEST_CASE("canonical bracket of a conjugate pair") {
    CHECK(canonical_bracket(coordinate_q(2, 0), coordinate_p(2, 0), pt({0.3, -1}, {2, 5})) == 1.0);
    CHECK(canonical_bracket(coordinate_q(2, 0), coordinate_p(2, 1), pt({0.3, -1}, {2, 5})) == 0.0);
  }

  TEST_CASE("brackets of realization functions") {
    const Realization r = realizations::sl2_coalg(2, {0, 0});
    const PhasePoint x = pt({1, 2}, {3, 4});
    CHECK(canonical_bracket(r.field(0), r.field(1), x) == doctest::Approx(44.0).epsilon(1e-14));
    CHECK(r.field(2).value(x) * 4 == doctest::Approx(44.0));

    const Realization sw = realizations::sl2_sw(1, {0});
    const PhasePoint y = pt({2}, {1});
    CHECK(canonical_bracket(sw.field(0), sw.field(1), y) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(sw.field(0).value(y) == doctest::Approx(2.0));
  }

  TEST_CASE("Hamiltonian vector fields") {
    const ScalarField h = ScalarField::autonomous(
        1, [](const PhasePoint& x) { return 0.5 * x(1) * x(1) + 0.5 * x(0) * x(0); },
        [](const PhasePoint& x) { return vec({x(0), x(1)}); });
    CHECK(test::max_abs_diff(hamiltonian_vector_field(h, 3.0, pt({1}, {0})), vec({0, -1})) == 0.0);

    const SystemSpec sw = make_sw(1, {3}, TimeCoefficient::constant(4));
    CHECK(test::max_abs_diff(sw.vector_field(7.0, pt({1}, {0})), vec({0, -1})) < 1e-15);

    const SystemSpec p2 = make_painleve2(0.5);
    CHECK(test::max_abs_diff(p2.vector_field(0.0, pt({1}, {2})), vec({1, 4.5})) < 1e-15);
  }

  TEST_CASE("gradient checks") {
    const ScalarField q2 = coordinate_q(1, 0) * coordinate_q(1, 0);
    CHECK(grad_check(q2, pt({0.7}, {-3})) <= 1e-9);

    const Realization r = realizations::sl2_coalg(2, {1, 2});
    CHECK(grad_check(r.field(1), pt({1, 2}, {0, 0})) <= 1e-5);

    const SystemSpec tn = make_taubnut(3, 1.0, {0, 0, 0}, TimeCoefficient::constant(1));
    CHECK(grad_check(tn.hamiltonian(), pt({1, 1, 1}, {0.1, 0.2, 0.3}), 0.0) <= 1e-5);
  }

  TEST_CASE("domain guards") {
    const Realization r = realizations::sl2_coalg(2, {1, 0});
    CHECK_FALSE(r.field(1).in_domain(0.0, pt({0, 1}, {0, 0})));
    CHECK(r.field(1).in_domain(0.0, pt({1, 0}, {0, 0})));
    CHECK_THROWS_AS(r.field(1).value(pt({0, 1}, {0, 0})), DomainError);
  }

  TEST_CASE("sampling is seeded and respects the domain") {
    const SampleBox box;
    const DomainPredicate dom = [](double, const PhasePoint& x) { return x(0) > 0; };
    const auto a = sample_points(2, box, dom, 30, 5);
    const auto b = sample_points(2, box, dom, 30, 5);
    const auto c = sample_points(2, box, dom, 30, 6);
    REQUIRE(a.size() == 30);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].t == b[i].t);
      CHECK(a[i].x == b[i].x);
      CHECK(a[i].x(0) > 0);
      CHECK(std::abs(a[i].x(1)) >= box.qmin);
      CHECK(std::abs(a[i].x(3)) <= box.pmax);
      differs = differs || a[i].x != c[i].x;
    }
    CHECK(differs);
    CHECK_THROWS_AS(sample_points(1, box, [](double, const PhasePoint&) { return false; }, 1, 1), SamplingError);
  }

  TEST_CASE("five-point weights") {
    const Eigen::MatrixXd w = fd_weights(0.0, {-2, -1, 0, 1, 2}, 2);
    const double d1[] = {1.0 / 12, -2.0 / 3, 0, 2.0 / 3, -1.0 / 12};
    const double d2[] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    for (int i = 0; i < 5; ++i) {
      CHECK(w(i, 1) == doctest::Approx(d1[i]).epsilon(1e-14));
      CHECK(w(i, 2) == doctest::Approx(d2[i]).epsilon(1e-14));
    }
    // exact on quartics at uneven nodes
    const std::vector<double> nodes{0.0, 0.1, 0.25, 0.3, 0.5};
    const Eigen::MatrixXd u = fd_weights(0.25, nodes, 1);
    double d = 0.0;
    for (int i = 0; i < 5; ++i) d += u(i, 1) * std::pow(nodes[static_cast<std::size_t>(i)], 4);
    CHECK(d == doctest::Approx(4 * std::pow(0.25, 3)).epsilon(1e-12));
  }
}

TEST_SUITE("time_expression") {
  TEST_CASE("evaluation") {
    CHECK(TimeCoefficient::constant(1)(5.0) == 1.0);
    CHECK(TimeCoefficient::parse("1 + 0.1*sin(2*t)")(0.0) == 1.0);
    CHECK(TimeCoefficient::parse("1+2*3")(0.0) == 7.0);
    CHECK(TimeCoefficient::parse("2^3^2")(0.0) == 512.0);
    CHECK(TimeCoefficient::parse("(1+2)*3")(0.0) == 9.0);
    CHECK(TimeCoefficient::parse("-t + 4")(1.5) == 2.5);
    CHECK(TimeCoefficient::parse("exp(t) * cos(t) - tanh(t)")(0.7) ==
          doctest::Approx(std::exp(0.7) * std::cos(0.7) - std::tanh(0.7)).epsilon(1e-15));
    CHECK(TimeCoefficient::parse("1e-1 * t")(2.0) == doctest::Approx(0.2));
    CHECK(TimeCoefficient().text() == "0");
    CHECK(TimeCoefficient()(3.0) == 0.0);
  }

  TEST_CASE("constness is structural") {
    CHECK(TimeCoefficient::parse("2*sin(1)").is_constant());
    CHECK_FALSE(TimeCoefficient::parse("2*sin(t)").is_constant());
  }

  TEST_CASE("singular operations") {
    CHECK_THROWS_AS(TimeCoefficient::parse("1/t")(0.0), SingularOperation);
    CHECK_THROWS_AS(TimeCoefficient::parse("(t-1)^0.5")(0.0), SingularOperation);
    CHECK_THROWS_AS(TimeCoefficient::parse("t^(-1)")(0.0), SingularOperation);
    CHECK_THROWS_AS(TimeCoefficient::parse("exp(t)")(1000.0), SingularOperation);
    CHECK(TimeCoefficient::parse("(t-1)^2")(0.0) == 1.0);
  }

  TEST_CASE("parse errors carry line and column") {
    try {
      TimeCoefficient::parse("sin(");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()) == "expected ')' at 1:5");
      CHECK(e.line() == 1);
      CHECK(e.column() == 5);
    }
    try {
      TimeCoefficient::parse("1 +\n  * t");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(TimeCoefficient::parse("foo(t)"), ParseError);
    CHECK_THROWS_AS(TimeCoefficient::parse("1 2"), ParseError);
    CHECK_THROWS_AS(TimeCoefficient::parse(""), ParseError);
  }
}
