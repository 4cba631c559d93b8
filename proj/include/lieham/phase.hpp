#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lieham/errors.hpp"

namespace lieham {

/// A point of T*R^n stored as [q_1..q_n, p_1..p_n].
using PhasePoint = Eigen::VectorXd;

inline PhasePoint make_point(const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
  if (q.size() != p.size()) throw DimensionError("q and p must have the same length");
  PhasePoint x(2 * q.size());
  x << q, p;
  return x;
}

inline Eigen::Index config_dim(const PhasePoint& x) { return x.size() / 2; }

/// Guarded quantities must exceed this in absolute value to count as in-domain.
inline constexpr double kDomainMargin = 1e-12;

inline bool guarded(double v) { return std::abs(v) > kDomainMargin; }

using DomainPredicate = std::function<bool(double, const PhasePoint&)>;
using VectorFieldFn = std::function<Eigen::VectorXd(double, const PhasePoint&)>;

/// Differentiable real function on T*R^n, optionally t-dependent.
///
/// Gradients are ordered (d/dq_1..d/dq_n, d/dp_1..d/dp_n). The evaluators
/// are unchecked; value() and gradient() test the dimension and the domain
/// predicate first and throw DomainError outside it.
class ScalarField {
 public:
  using ValueFn = std::function<double(double, const PhasePoint&)>;
  using GradientFn = std::function<Eigen::VectorXd(double, const PhasePoint&)>;

  ScalarField() = default;
  ScalarField(std::size_t n, ValueFn value, GradientFn gradient, DomainPredicate domain = {},
              bool time_dependent = false);

  /// Convenience for t-independent fields.
  static ScalarField autonomous(std::size_t n, std::function<double(const PhasePoint&)> value,
                                std::function<Eigen::VectorXd(const PhasePoint&)> gradient,
                                std::function<bool(const PhasePoint&)> domain = {});

  std::size_t n() const { return n_; }
  bool time_dependent() const { return time_dependent_; }
  bool in_domain(double t, const PhasePoint& x) const;

  double value(const PhasePoint& x) const { return value(0.0, x); }
  double value(double t, const PhasePoint& x) const;
  Eigen::VectorXd gradient(const PhasePoint& x) const { return gradient(0.0, x); }
  Eigen::VectorXd gradient(double t, const PhasePoint& x) const;

  double value_unchecked(double t, const PhasePoint& x) const { return value_(t, x); }
  Eigen::VectorXd gradient_unchecked(double t, const PhasePoint& x) const { return gradient_(t, x); }

  const DomainPredicate& domain() const { return domain_; }

 private:
  void check(double t, const PhasePoint& x) const;

  std::size_t n_ = 0;
  ValueFn value_;
  GradientFn gradient_;
  DomainPredicate domain_;
  bool time_dependent_ = false;
};

/// Field of the canonical Poisson bivector applied to a gradient:
/// (dh/dp, -dh/dq).
Eigen::VectorXd symplectic_gradient(const Eigen::VectorXd& grad);

/// {f, g} = sum_i df/dq_i dg/dp_i - dg/dq_i df/dp_i at (t, x).
double canonical_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& x, double t = 0.0);

/// X_h(t, x) with dq/dt = dh/dp, dp/dt = -dh/dq.
Eigen::VectorXd hamiltonian_vector_field(const ScalarField& h, double t, const PhasePoint& x);

/// Worst relative error |g_i - fd_i| / max(1, |g_i|) between the analytic
/// gradient and central differences with step 1e-6 * max(1, |x_i|).
double grad_check(const ScalarField& f, const PhasePoint& x, double t = 0.0);

/// Products and sums of fields with exact product-rule gradients.
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator+(const ScalarField& a, const ScalarField& b);

/// Coordinate functions q_i and p_i (0-based i).
ScalarField coordinate_q(std::size_t n, std::size_t i);
ScalarField coordinate_p(std::size_t n, std::size_t i);

}  // namespace lieham
