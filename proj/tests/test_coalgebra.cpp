#include <doctest.h>

#include <cmath>

#include "lieham/catalog.hpp"
#include "lieham/coalgebra.hpp"
#include "lieham/realizations.hpp"
#include "support.hpp"

using namespace lieham;
using test::pt;
using test::vec;

namespace {

ReplicatedSpace sl2_copies(std::vector<double> c) {
  return ReplicatedSpace([](double ci) { return realizations::sl2_coalg(1, {ci}); }, std::move(c));
}

const RationalPolynomial& casimir() {
  static const RationalPolynomial C = algebras::casimirs("sl2_coalg")[0];
  return C;
}

double L(const PhasePoint& x, std::size_t i, std::size_t j) {
  const auto n = static_cast<Eigen::Index>(x.size() / 2);
  const double J = x(static_cast<Eigen::Index>(i)) * x(n + static_cast<Eigen::Index>(j)) -
                   x(static_cast<Eigen::Index>(j)) * x(n + static_cast<Eigen::Index>(i));
  return J * J;
}

}  // namespace

TEST_SUITE("coalgebra") {
  TEST_CASE("sided replicated Hamiltonians") {
    const ReplicatedSpace sp = sl2_copies({0, 0, 0});
    const PhasePoint x = pt({1, 2, 3}, {4, 5, 6});
    CHECK(replicate_hamiltonians(sp, Side::Left, 2)[0].value(x) == 1 + 4);
    CHECK(replicate_hamiltonians(sp, Side::Right, 2)[0].value(x) == 4 + 9);
    CHECK(replicate_hamiltonians(sp, Side::Left, 1)[2].value(x) == 4);
    CHECK(replicate_hamiltonians(sp, Side::Right, 1)[2].value(x) == 18);
    CHECK(sided_copies(4, Side::Right, 3) == std::vector<std::size_t>{1, 2, 3});
    CHECK_THROWS_AS(replicate_hamiltonians(sp, Side::Left, 0), std::out_of_range);
    CHECK_THROWS_AS(replicate_hamiltonians(sp, Side::Left, 4), std::out_of_range);
  }

  TEST_CASE("invariant values") {
    const ReplicatedSpace sp = sl2_copies({0, 0, 0});
    const InvariantField IL2 = invariant_field(sp, casimir(), Side::Left, 2);
    CHECK(IL2.name == "I_L_2");
    CHECK(IL2.field.value(pt({1, 2, 3}, {4, 5, 6})) == 9);

    const ReplicatedSpace sp1 = sl2_copies({2.5, 1, 1});
    CHECK(invariant_field(sp1, casimir(), Side::Left, 1).field.value(pt({0.4, 1, 2}, {1.3, 0, 0})) ==
          doctest::Approx(2.5).epsilon(1e-14));

    const ReplicatedSpace sp4 = sl2_copies({0, 0, 0, 0});
    const InvariantField I4 = invariant_field(sp4, casimir(), Side::Left, 4);
    CHECK(I4.name == "I_4");
    CHECK(I4.field.value(pt({1, 0, 0, 0}, {0, 1, 0, 0})) == 1);
  }

  TEST_CASE("non-Casimirs are refused") {
    const ReplicatedSpace sp = sl2_copies({0, 0});
    CHECK_THROWS_AS(invariant_field(sp, RationalPolynomial::variable(3, 2), Side::Left, 2), std::invalid_argument);
  }

  TEST_CASE("angular blocks") {
    CHECK(angular_block(pt({1, 2}, {3, 5}), 0, 1, 0, 0) == 1);
    CHECK(angular_block(pt({1.5, 1.5}, {-2, -2}), 0, 1, 0, 0) == 0);
    CHECK(angular_block(pt({1, 1}, {0, 0}), 0, 1, 0.7, 0.7) == doctest::Approx(1.4));
  }

  TEST_CASE("level-N invariant is the sum of angular blocks") {
    const std::vector<double> c{0.5, 1, 2, 3};
    const ReplicatedSpace sp = sl2_copies(c);
    const InvariantField I4 = invariant_field(sp, casimir(), Side::Left, 4);
    for (const auto& s : sample_points(4, SampleBox{}, sp.full_realization().domain(), 20, 3)) {
      double expected = c[0] + c[1] + c[2] + c[3];
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) expected += angular_block(s.x, i, j, c[i], c[j]);
      CHECK(I4.field.value(s.x) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  TEST_CASE("permutations") {
    const ReplicatedSpace sp = sl2_copies({0, 0, 0});
    const InvariantField IL2 = invariant_field(sp, casimir(), Side::Left, 2);
    const InvariantField S13 = permute_invariant(sp, casimir(), IL2, 1, 3);
    CHECK(S13.name == "S_1_3.I_L_2");
    const PhasePoint x = pt({1, 2, 4}, {3, 5, 7});
    CHECK(S13.field.value(x) == 36);
    CHECK(S13.field.value(x) == L(x, 1, 2));
    const InvariantField back = permute_invariant(sp, casimir(), S13, 1, 3);
    CHECK(back.field.value(x) == IL2.field.value(x));
    CHECK_THROWS(permute_invariant(sp, casimir(), IL2, 1, 1));
    CHECK_THROWS(permute_invariant(sp, casimir(), IL2, 1, 4));
  }

  TEST_CASE("parameters travel with permuted copies") {
    const std::vector<double> c{1, 2, 3, 4};
    const ReplicatedSpace sp = sl2_copies(c);
    const InvariantField S23 = permute_invariant(sp, casimir(), invariant_field(sp, casimir(), Side::Left, 2), 2, 3);
    for (const auto& s : sample_points(4, SampleBox{}, sp.full_realization().domain(), 20, 8)) {
      CHECK(S23.field.value(s.x) == doctest::Approx(angular_block(s.x, 0, 2, c[0], c[2]) + c[0] + c[2]).epsilon(1e-12));
    }
  }

  TEST_CASE("level-3 invariant splits into two-copy invariants") {
    const double c = 1.5;
    const ReplicatedSpace sp = sl2_copies({c, c, c});
    const InvariantField I3 = invariant_field(sp, casimir(), Side::Left, 3);
    const InvariantField IL2 = invariant_field(sp, casimir(), Side::Left, 2);
    const InvariantField IR2 = invariant_field(sp, casimir(), Side::Right, 2);
    const InvariantField I13 = permute_invariant(sp, casimir(), IL2, 2, 3);
    const InvariantField I13b = permute_invariant(sp, casimir(), IR2, 1, 2);
    for (const auto& s : sample_points(3, SampleBox{}, sp.full_realization().domain(), 50, 4)) {
      const double lhs = I3.field.value(s.x);
      CHECK(std::abs(lhs - (IL2.field.value(s.x) + IR2.field.value(s.x) + I13.field.value(s.x) - 3 * c)) <= 1e-12 * std::max(1.0, lhs));
      CHECK(I13.field.value(s.x) == doctest::Approx(I13b.field.value(s.x)).epsilon(1e-14));
    }
  }

  TEST_CASE("left and right chains meet at level N") {
    const ReplicatedSpace sp = sl2_copies({1, 2, 3});
    const InvariantField L3 = invariant_over(sp, casimir(), sided_copies(3, Side::Left, 3), "L");
    const InvariantField R3 = invariant_over(sp, casimir(), sided_copies(3, Side::Right, 3), "R");
    for (const auto& s : sample_points(3, SampleBox{}, sp.full_realization().domain(), 20, 2)) {
      CHECK(L3.field.value(s.x) == R3.field.value(s.x));
      const auto hl = replicate_hamiltonians(sp, Side::Left, 3), hr = replicate_hamiltonians(sp, Side::Right, 3);
      for (std::size_t a = 0; a < 3; ++a) CHECK(hl[a].value(s.x) == hr[a].value(s.x));
    }
  }

  TEST_CASE("involution") {
    const ReplicatedSpace sp = sl2_copies({1, 2, 3});
    const InvariantField IL2 = invariant_field(sp, casimir(), Side::Left, 2);
    const InvariantField IL3 = invariant_field(sp, casimir(), Side::Left, 3);
    const InvariantField IR2 = invariant_field(sp, casimir(), Side::Right, 2);
    CHECK(involution_report({IL2, IL3}, sp, SampleBox{}, 100, 1) <= 1e-9);
    CHECK(involution_report({IR2, IL3}, sp, SampleBox{}, 100, 1) <= 1e-9);
    CHECK(involution_report({IL2}, sp, SampleBox{}, 100, 1) <= 1e-9);
    const PhasePoint x = pt({0.5, -1, 1.2}, {0.3, 0.2, -0.7});
    CHECK(canonical_bracket(IL2.field, IL2.field, x) == 0.0);
    // mixed left/right pairs overlapping in a copy do not commute
    CHECK(std::abs(canonical_bracket(IL2.field, IR2.field, x)) > 1e-3);
  }

  TEST_CASE("functional independence") {
    for (std::size_t n : {3, 4}) {
      std::vector<double> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = 1.0 + static_cast<double>(i);
      const ReplicatedSpace sp = sl2_copies(c);
      std::vector<InvariantField> fs;
      for (std::size_t k = 2; k <= n; ++k) fs.push_back(invariant_field(sp, casimir(), Side::Left, k));
      for (std::size_t k = 2; k + 1 <= n; ++k) fs.push_back(invariant_field(sp, casimir(), Side::Right, k));
      for (const auto& s : sample_points(n, SampleBox{}, sp.full_realization().domain(), 20, 5))
        CHECK(jacobian_rank(fs, s.x) == static_cast<Eigen::Index>(2 * n - 3));
    }
  }

  TEST_CASE("names") {
    const ReplicatedSpace sp = sl2_copies({1, 2, 3});
    const PhasePoint x = pt({0.5, -1, 1.2}, {0.3, 0.2, -0.7});
    CHECK(invariant_by_name(sp, casimir(), "I_R_2").field.value(x) ==
          invariant_field(sp, casimir(), Side::Right, 2).field.value(x));
    CHECK(invariant_by_name(sp, casimir(), "I_3").field.value(x) ==
          invariant_field(sp, casimir(), Side::Left, 3).field.value(x));
    CHECK(invariant_by_name(sp, casimir(), "S_1_3.I_L_2").field.value(x) ==
          doctest::Approx(angular_block(x, 1, 2, 2, 3) + 5));
    CHECK_THROWS(invariant_by_name(sp, casimir(), "I_4"));
    CHECK_THROWS(invariant_by_name(sp, casimir(), "I_L_9"));
    CHECK_THROWS(invariant_by_name(sp, casimir(), "energy"));
  }

  TEST_CASE("diagonal prolongation") {
    const SystemSpec erm = make_sw(1, {2}, TimeCoefficient::constant(1));
    const VectorFieldFn X3 = diagonal_prolongation(erm, 3);
    const PhasePoint x = pt({1, 2, 3}, {0, 0, 0});
    const Eigen::VectorXd v = X3(0.0, x);
    CHECK(v(3) == doctest::Approx(1.0));
    CHECK(v(4) == doctest::Approx(-1.75));
    CHECK(v(5) == doctest::Approx(-3 + 2.0 / 27));
    const SystemSpec sw3 = make_sw(3, {2, 2, 2}, TimeCoefficient::constant(1));
    const PhasePoint y = pt({0.4, -1.1, 0.9}, {0.2, 1, -0.3});
    CHECK(test::max_abs_diff(X3(0.5, y), sw3.vector_field(0.5, y)) < 1e-14);
    CHECK(test::max_abs_diff(diagonal_prolongation(erm, 1)(0.5, pt({0.4}, {0.2})), erm.vector_field(0.5, pt({0.4}, {0.2}))) == 0.0);
  }
}
