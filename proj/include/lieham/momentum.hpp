#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "lieham/algebra.hpp"
#include "lieham/phase.hpp"
#include "lieham/sampling.hpp"
#include "lieham/trajectory.hpp"

namespace lieham {

/// A Lie algebra realized by functions h_1..h_r on T*R^n; the momentum map
/// J(x) = sum_a h_a(x) e^a.
class Realization {
 public:
  Realization() = default;
  Realization(std::shared_ptr<const LieAlgebraSpec> algebra, std::size_t n, std::vector<ScalarField> fields,
              std::vector<double> params = {});

  const LieAlgebraSpec& algebra() const { return *algebra_; }
  std::shared_ptr<const LieAlgebraSpec> algebra_ptr() const { return algebra_; }
  std::size_t n() const { return n_; }
  std::size_t r() const { return fields_.size(); }
  const std::vector<ScalarField>& fields() const { return fields_; }
  const ScalarField& field(std::size_t a) const { return fields_.at(a); }
  const std::vector<double>& params() const { return params_; }

  /// Intersection of the fields' domains.
  bool in_domain(const PhasePoint& x) const;
  DomainPredicate domain() const;

 private:
  std::shared_ptr<const LieAlgebraSpec> algebra_;
  std::size_t n_ = 0;
  std::vector<ScalarField> fields_;
  std::vector<double> params_;
};

/// (h_1(x), ..., h_r(x)); throws DomainError outside the common domain.
DualPoint evaluate_J(const Realization& r, const PhasePoint& x);

/// Jacobian of J: row a is the gradient of h_a.
Eigen::MatrixXd J_jacobian(const Realization& r, const PhasePoint& x);

/// max over pairs a < b of |{h_a, h_b}(x) - sum_g c_ab^g h_g(x)|.
double bracket_residual(const Realization& r, const PhasePoint& x);

/// bracket_residual maximized over seeded in-domain samples.
double verify_realization(const Realization& r, const SampleBox& box, std::size_t samples, std::uint64_t seed);

/// Pullback C(J(x)) with chain-rule gradient.
ScalarField casimir_pullback(const Realization& r, const RationalPolynomial& casimir);

/// h(t, x) = F(t, J(x)).
class ComposedHamiltonian {
 public:
  /// `extra_domain` further restricts the realization's domain (e.g. where
  /// F itself is singular).
  ComposedHamiltonian(Realization realization, DualFunction F, DomainPredicate extra_domain = {});

  const Realization& realization() const { return realization_; }
  const DualFunction& F() const { return F_; }
  const ScalarField& hamiltonian() const { return h_; }

  /// dF/dlambda_a at (t, J(x)).
  Eigen::VectorXd coefficients(double t, const PhasePoint& x) const;

  /// sum_a dF/dlambda_a(t, J(x)) X_{h_a}(x), assembled field by field.
  Eigen::VectorXd decomposition(double t, const PhasePoint& x) const;

 private:
  Realization realization_;
  DualFunction F_;
  ScalarField h_;
};

ComposedHamiltonian compose(const Realization& r, const DualFunction& F, DomainPredicate extra_domain = {});

/// Max over interior trajectory samples of |d/dt J(x(t)) - X^{g*}_t(J(x(t)))|, with
/// the time derivative taken by five-point finite differences on the sample
/// grid. Requires at least 5 samples.
double pushforward_residual(const Realization& r, const Trajectory& traj, const DualFunction& F);

}  // namespace lieham
