#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lieham/catalog.hpp"
#include "lieham/trajectory.hpp"

namespace lieham {

enum class Method { RK4Fixed, DP54Adaptive };

std::string to_string(Method m);
/// "rk4_fixed" or "dp54_adaptive" (also "rk4", "dp54").
Method parse_method(const std::string& s);

struct IntegratorConfig {
  Method method = Method::DP54Adaptive;
  double rtol = 1e-10;
  double atol = 1e-10;
  double h0 = 1e-3;
  double hmax = 0.1;
  double hmin = 1e-12;
  std::size_t max_steps = 1000000;
  /// Record every stride-th accepted step (the final state is always recorded).
  std::size_t stride = 1;

  /// Throws std::invalid_argument unless rtol, atol > 0 and hmin <= h0 <= hmax.
  void validate() const;
};

/// dx/dt = rhs(t, x) restricted to a domain.
struct OdeProblem {
  VectorFieldFn rhs;
  DomainPredicate domain;
};

/// Integrates from t0 to t1 (either direction). A trial step that leaves
/// the domain, or whose field evaluation fails, is halved down to hmin
/// before reporting a domain violation at the last safe time.
Trajectory integrate(const OdeProblem& problem, const Eigen::VectorXd& x0, double t0, double t1,
                     const IntegratorConfig& cfg);
Trajectory integrate(const SystemSpec& sys, const PhasePoint& x0, double t0, double t1, const IntegratorConfig& cfg);

struct NamedField {
  std::string name;
  ScalarField field;
};

struct InvariantSeries {
  std::vector<std::string> names;
  /// values[k][i]: field k at sample i.
  std::vector<std::vector<double>> values;
  /// max_i |I_k(t_i) - I_k(t_0)| / max(1, |I_k(t_0)|).
  std::vector<double> drift;
};

InvariantSeries monitor_invariants(const Trajectory& traj, const std::vector<NamedField>& fields);

/// y'' = f(t, y) for the first configuration coordinate.
using SecondOrderForm = std::function<double(double, double)>;

/// Max over interior samples of |y'' - f(t, y)|, with y'' from five-point
/// finite differences on the sample grid of coordinate `component`.
double residual_ode_check(const Trajectory& traj, const SecondOrderForm& form, std::size_t component = 0);

}  // namespace lieham
