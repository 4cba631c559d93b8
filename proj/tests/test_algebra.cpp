#include <doctest.h>

#include <random>

#include "lieham/algebra.hpp"
#include "support.hpp"

using namespace lieham;
using test::vec;

namespace {

RationalPolynomial lam(std::size_t r, std::size_t i) { return RationalPolynomial::variable(r, i); }

// Jacobi sum over doubles, independent of validate_structure.
double dense_jacobi(const LieAlgebraSpec& g) {
  const auto& C = g.dense_constants();
  const auto r = static_cast<Eigen::Index>(g.dim());
  double worst = 0.0;
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = 0; b < r; ++b)
      for (Eigen::Index c = 0; c < r; ++c)
        for (Eigen::Index out = 0; out < r; ++out) {
          double s = 0.0;
          for (Eigen::Index m = 0; m < r; ++m) {
            s += C[m](a, b) * C[out](m, c) + C[m](b, c) * C[out](m, a) + C[m](c, a) * C[out](m, b);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("catalog algebras satisfy Jacobi exactly") {
    for (const auto& name : algebras::names()) {
      CAPTURE(name);
      const auto g = algebras::by_name(name);
      const ValidationReport rep = validate_structure(*g);
      CHECK(rep.passed);
      CHECK(rep.worst_residual == 0);
      CHECK(dense_jacobi(*g) == 0.0);
    }
  }

  TEST_CASE("abelian algebra passes") {
    LieAlgebraSpec ab("abelian", {"a", "b", "c", "d"}, {});
    CHECK(validate_structure(ab).passed);
    CHECK(kks_bracket(ab, lam(4, 0), lam(4, 1)).is_zero());
  }

  TEST_CASE("broken sl2 fails with residual 2") {
    // [v-, v+] = 4 v3 + v+
    LieAlgebraSpec bad("bad", {"v-", "v+", "v3"},
                       {{2, 1, {{1, Rational(2)}}}, {2, 0, {{0, Rational(-2)}}}, {0, 1, {{2, Rational(4)}, {1, Rational(1)}}}});
    const ValidationReport rep = validate_structure(bad);
    CHECK_FALSE(rep.passed);
    CHECK(rep.worst_residual == 2);
    REQUIRE(rep.worst_triple.has_value());
    std::array<std::size_t, 3> t = *rep.worst_triple;
    std::sort(t.begin(), t.end());
    CHECK(t == std::array<std::size_t, 3>{0, 1, 2});
    CHECK(dense_jacobi(bad) > 0.0);
  }

  TEST_CASE("KKS brackets of coordinates") {
    const auto sl2 = algebras::sl2_coalg();
    CHECK(kks_bracket(*sl2, lam(3, 0), lam(3, 1)) == lam(3, 2) * Rational(4));
    CHECK(kks_bracket(*sl2, lam(3, 2), lam(3, 1)) == lam(3, 1) * Rational(2));
    CHECK(kks_bracket(*sl2, lam(3, 2), lam(3, 0)) == lam(3, 0) * Rational(-2));
    const auto f = lam(3, 0) * lam(3, 1) + lam(3, 2);
    CHECK(kks_bracket(*sl2, f, f).is_zero());
    CHECK(kks_bracket(*sl2, f, lam(3, 2)) == -kks_bracket(*sl2, lam(3, 2), f));

    const auto h4 = algebras::h4();
    CHECK(kks_bracket(*h4, lam(4, 1), lam(4, 2)) == lam(4, 0));
  }

  TEST_CASE("shipped Casimirs are exact") {
    for (const auto& name : algebras::names()) {
      CAPTURE(name);
      const auto g = algebras::by_name(name);
      for (const auto& C : algebras::casimirs(name)) CHECK(casimir_check(*g, C) == 0);
    }
    const auto sl2 = algebras::sl2_coalg();
    const auto C = lam(3, 0) * lam(3, 1) - lam(3, 2) * lam(3, 2);
    CHECK(casimir_check(*sl2, C) == 0);
    CHECK(casimir_check(*sl2, RationalPolynomial::constant(3, Rational(1))) == 0);
    CHECK(casimir_check(*sl2, lam(3, 2)) == 2);

    const auto h4 = algebras::h4();
    CHECK(casimir_check(*h4, lam(4, 0) * lam(4, 3) - lam(4, 1) * lam(4, 2)) == 0);
  }

  TEST_CASE("Casimirs annihilate the coadjoint field numerically") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const auto& name : algebras::names()) {
      const auto g = algebras::by_name(name);
      const auto r = g->dim();
      for (const auto& C : algebras::casimirs(name)) {
        for (int k = 0; k < 10; ++k) {
          Eigen::VectorXd p(static_cast<Eigen::Index>(r));
          for (auto& v : p) v = u(rng);
          Eigen::VectorXd dC(static_cast<Eigen::Index>(r));
          for (std::size_t a = 0; a < r; ++a) dC(static_cast<Eigen::Index>(a)) = C.derivative(a).cast<double>().evaluate(p);
          // {lambda_g, C} = 0 for every g
          CHECK(kks_vector_field(*g, dC, p).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
    }
  }

  TEST_CASE("coadjoint vector fields") {
    const auto sw = algebras::sl2_sw();
    const DualFunction F = DualFunction::linear(3, {{2, [](double) { return 1.0; }}, {0, [](double) { return 1.0; }}});
    CHECK(test::max_abs_diff(kks_vector_field(*sw, F, 0.0, vec({1, 0, 0})), vec({0, 1, 0})) == 0.0);

    const auto h4 = algebras::h4();
    const DualFunction F4(
        4, [](double, const DualPoint& l) { return 0.5 * l(2) * l(2) + 0.5 * l(1) * l(1); },
        [](double, const DualPoint& l) { return vec({0, l(1), l(2), 0}); });
    CHECK(test::max_abs_diff(kks_vector_field(*h4, F4, 0.0, vec({1, 1, 1, 0})), vec({0, 1, -1, 0})) == 0.0);

    const DualFunction zero(3, [](double, const DualPoint&) { return 3.0; },
                            [](double, const DualPoint&) { return Eigen::VectorXd::Zero(3).eval(); });
    CHECK(kks_vector_field(*sw, zero, 1.0, vec({1, 2, 3})).isZero());
  }

  TEST_CASE("lookup") {
    CHECK(algebras::by_name("sl2+h3")->dim() == 6);
    CHECK(algebras::sl2_coalg()->index_of("v3") == 2);
    CHECK_THROWS_AS(algebras::by_name("e8"), std::out_of_range);
  }
}
