#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lieham/catalog.hpp"
#include "lieham/integrate.hpp"
#include "lieham/momentum.hpp"
#include "lieham/realizations.hpp"
#include "support.hpp"

using namespace lieham;
using test::pt;
using test::vec;

TEST_SUITE("momentum") {
  TEST_CASE("momentum map values") {
    const Realization r = realizations::sl2_coalg(2, {0, 0});
    CHECK(evaluate_J(r, pt({1, 2}, {3, 4})) == vec({5, 25, 11}));
    CHECK(evaluate_J(r, pt({0, 0}, {0, 0})) == vec({0, 0, 0}));
    CHECK(evaluate_J(realizations::heisenberg(), pt({2}, {3})) == vec({1, 2, 3}));
    CHECK(evaluate_J(realizations::oscillator_h4(), pt({2}, {3})) == vec({1, 2, 3, 6}));
    // h_+ picks up the centrifugal terms
    const Realization rc = realizations::sl2_coalg(2, {1, 8});
    CHECK(evaluate_J(rc, pt({1, 2}, {3, 4}))(1) == doctest::Approx(25 + 1 + 2));
  }

  TEST_CASE("realizations reproduce their structure constants") {
    CHECK(verify_realization(realizations::sl2_coalg(3, {1, 2, 3}), SampleBox{}, 100, 1) <= 1e-9);
    CHECK(verify_realization(realizations::sl2_sw(2, {1, 2}), SampleBox{}, 100, 2) <= 1e-9);
    CHECK(verify_realization(realizations::heisenberg(), SampleBox{}, 100, 3) <= 1e-9);
    CHECK(verify_realization(realizations::oscillator_h4(), SampleBox{}, 100, 4) <= 1e-9);
    CHECK(verify_realization(realizations::henon_heiles(), SampleBox{}, 100, 5) <= 1e-9);
  }

  TEST_CASE("a wrong algebra is detected") {
    // sl2_coalg functions declared with the sl2_sw constants
    const Realization r = realizations::sl2_coalg(1, {0});
    const Realization wrong(algebras::sl2_sw(), 1, r.fields(), {});
    CHECK(verify_realization(wrong, SampleBox{}, 20, 6) > 1e-3);
  }

  TEST_CASE("single-function abelian realization") {
    const auto ab = std::make_shared<const LieAlgebraSpec>("a1", std::vector<std::string>{"e"}, std::vector<BracketRule>{});
    const Realization r(ab, 1, {coordinate_q(1, 0)}, {});
    CHECK(verify_realization(r, SampleBox{}, 10, 1) == 0.0);
  }

  TEST_CASE("composition reproduces the oscillator") {
    const auto omega2 = [](double t) { return 1.0 + 0.2 * std::cos(t); };
    const Realization sw = realizations::sl2_sw(1, {0});
    const ComposedHamiltonian ho = compose(sw, DualFunction::linear(3, {{2, [](double) { return 1.0; }}, {0, omega2}}));
    const Realization h4 = realizations::oscillator_h4();
    const ComposedHamiltonian ho4 = compose(
        h4, DualFunction(
                4, [&](double t, const DualPoint& l) { return 0.5 * l(2) * l(2) + 0.5 * omega2(t) * l(1) * l(1); },
                [&](double t, const DualPoint& l) { return vec({0, omega2(t) * l(1), l(2), 0}); }));
    for (double t : {0.0, 0.4, 2.0}) {
      for (const PhasePoint& x : {pt({0.3}, {-1.2}), pt({1.5}, {0.25})}) {
        const double direct = 0.5 * x(1) * x(1) + 0.5 * omega2(t) * x(0) * x(0);
        CHECK(ho.hamiltonian().value(t, x) == doctest::Approx(direct).epsilon(1e-15));
        CHECK(ho4.hamiltonian().value(t, x) == doctest::Approx(direct).epsilon(1e-15));
        CHECK(test::max_abs_diff(ho.decomposition(t, x), hamiltonian_vector_field(ho.hamiltonian(), t, x)) < 1e-15);
      }
    }
  }

  TEST_CASE("projection composition is the function itself") {
    const Realization r = realizations::sl2_coalg(2, {1, 2});
    const ComposedHamiltonian h = compose(r, DualFunction::linear(3, {{0, [](double) { return 1.0; }}}));
    const PhasePoint x = pt({0.5, -1}, {2, 0.1});
    CHECK(h.hamiltonian().value(0.0, x) == r.field(0).value(x));
    CHECK(h.hamiltonian().gradient(0.0, x) == r.field(0).gradient(x));
  }

  TEST_CASE("arity mismatch is rejected") {
    CHECK_THROWS_AS(compose(realizations::heisenberg(), DualFunction::linear(4, {})), DimensionError);
  }

  TEST_CASE("pushforward of the exact oscillator solution") {
    const SystemSpec ho = make_sw(1, {0}, TimeCoefficient::constant(1));
    Trajectory tr;
    const int steps = 2000;
    for (int i = 0; i <= steps; ++i) {
      const double t = 2 * std::numbers::pi * i / steps;
      tr.t.push_back(t);
      tr.x.push_back(pt({std::cos(t)}, {-std::sin(t)}));
    }
    CHECK(pushforward_residual(ho.realization, tr, ho.F) <= 1e-6);
    // the J-path itself
    CHECK(test::max_abs_diff(evaluate_J(ho.realization, tr.x[300]),
                             vec({std::pow(std::cos(tr.t[300]), 2), std::pow(std::sin(tr.t[300]), 2),
                                  -std::sin(tr.t[300]) * std::cos(tr.t[300])})) < 1e-15);

    Trajectory still;
    for (int i = 0; i < 8; ++i) {
      still.t.push_back(0.1 * i);
      still.x.push_back(pt({0}, {0}));
    }
    CHECK(pushforward_residual(ho.realization, still, ho.F) == 0.0);
  }

  TEST_CASE("pushforward along an integrated SW trajectory") {
    const SystemSpec sw = make_sw(2, {1, 2}, TimeCoefficient::parse("1+0.1*sin(t)"));
    IntegratorConfig cfg;
    cfg.hmax = 0.01;
    const Trajectory tr = integrate(sw, pt({1, 1.2}, {0.3, -0.4}), 0.0, 10.0, cfg);
    REQUIRE(tr.status == IntegrationStatus::Completed);
    CHECK(pushforward_residual(sw.realization, tr, sw.F) <= 1e-5);
  }

  TEST_CASE("representation label of a single copy") {
    const RationalPolynomial C = algebras::casimirs("sl2_coalg")[0];
    for (double c : {-1.0, 0.0, 2.0}) {
      const Realization r = realizations::sl2_coalg(1, {c});
      const ScalarField I = casimir_pullback(r, C);
      for (const auto& s : sample_points(1, SampleBox{}, r.domain(), 50, 9)) CHECK(std::abs(I.value(s.x) - c) <= 1e-12);
      CHECK(I.gradient(pt({0.7}, {0.3})).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
