#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lieham/coalgebra.hpp"
#include "lieham/momentum.hpp"
#include "lieham/sampling.hpp"
#include "lieham/time_expression.hpp"

namespace lieham {

struct SystemParams {
  std::size_t n = 1;
  std::vector<double> c;  // empty means all zero
  double kappa = 0.0;
  double lambda = 0.0;
  double eta = 0.0;
  double b = 0.0;
  // generic central system only
  std::string space = "flat";
  double power = 2.0;
};

using Coefficients = std::map<std::string, TimeCoefficient>;

/// Conformal factor f(r) of ds^2 = f(r)^2 dq^2. Missing derivatives are
/// taken by central differences (step 1e-5, one Richardson extrapolation).
struct ConformalFactor {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  std::string label;
};

/// Kinetic energy A(s) h_+ + B(s) h_3^2 with s = q^2, and derivatives in s.
struct KineticPair {
  std::function<double(double)> A;
  std::function<double(double)> dA;
  std::function<double(double)> B;
  std::function<double(double)> dB;
};

struct CurvedSpaceSpec {
  std::optional<ConformalFactor> conformal;
  std::optional<KineticPair> kinetic;
};

/// U(t, r) with its radial derivative.
struct RadialPotential {
  std::function<double(double, double)> U;
  std::function<double(double, double)> dU;
};

namespace spaces {
ConformalFactor flat();
/// f = (1 + kappa r^2)^-1, the factor used in the Poincare-chart Hamiltonians.
ConformalFactor poincare(double kappa);
/// f = 2 / (1 + kappa r^2), the Poincare-chart metric of curvature kappa.
ConformalFactor poincare_metric(double kappa);
ConformalFactor darboux3(double lambda);
ConformalFactor taubnut(double eta);
KineticPair beltrami(double kappa);
}  // namespace spaces

/// A named t-dependent Hamiltonian h = F(t, J(x)) with everything needed to
/// integrate and verify it.
struct SystemSpec {
  std::string name;
  SystemParams params;
  Coefficients coefficients;
  Realization realization;
  DualFunction F;
  std::shared_ptr<const ComposedHamiltonian> composed;
  DomainPredicate domain;
  /// Equations of motion written out by hand.
  VectorFieldFn closed_form;
  /// dF/dlambda_a written out by hand as functions of (t, x).
  VectorFieldFn printed_coefficients;
  std::optional<ReplicatedSpace> coalgebra;
  RationalPolynomial coalgebra_casimir;
  std::vector<RationalPolynomial> casimirs;
  std::optional<ConformalFactor> conformal;
  SampleBox box;

  std::size_t n() const { return realization.n(); }
  const ScalarField& hamiltonian() const { return composed->hamiltonian(); }
  bool in_domain(double t, const PhasePoint& x) const;
  /// X_h(t, x) from the composed Hamiltonian's gradient.
  Eigen::VectorXd vector_field(double t, const PhasePoint& x) const;
  /// Position-dependent mass m(r) = f(r)^2; throws std::logic_error without a conformal factor.
  double mass(double r) const;
  /// "I_L_k", "I_R_k", "I_N", "S_i_j.<name>" for coalgebra systems, and
  /// "C_k" (pullback of the k-th algebra Casimir) for every system.
  ScalarField invariant(const std::string& name) const;
  /// I_L_2, I_R_2 (when N >= 3) and I_N for coalgebra systems; C_k otherwise.
  std::vector<std::string> default_invariants() const;
};

SystemSpec make_sw(std::size_t n, std::vector<double> c, TimeCoefficient omega2);
SystemSpec make_ho_sl2(std::size_t n, TimeCoefficient omega2);
SystemSpec make_ho_h4(TimeCoefficient omega2, std::size_t n = 1);
SystemSpec make_henon_heiles(TimeCoefficient Omega1, TimeCoefficient Omega2, TimeCoefficient alpha,
                             TimeCoefficient beta);
enum class HenonHeilesPreset { SawadaKotera, KdV12, KaupKupershmidt };
SystemSpec make_henon_heiles_preset(HenonHeilesPreset preset, TimeCoefficient omega2, TimeCoefficient alpha);
SystemSpec make_painleve2(double b);
SystemSpec make_central(std::size_t n, std::vector<double> c, const CurvedSpaceSpec& space, RadialPotential U);
/// chart is "poincare" or "beltrami".
SystemSpec make_curved_oscillator(const std::string& chart, std::size_t n, double kappa, std::vector<double> c,
                                  TimeCoefficient omega2);
SystemSpec make_darboux3(std::size_t n, double lambda, std::vector<double> c, TimeCoefficient omega2);
/// chart is "euclidean", "poincare" or "beltrami".
SystemSpec make_kc(const std::string& chart, std::size_t n, double kappa, std::vector<double> c, TimeCoefficient K);
SystemSpec make_taubnut(std::size_t n, double eta, std::vector<double> c, TimeCoefficient K);

struct SystemInfo {
  std::string name;
  std::string summary;
  std::string algebra;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, std::string>> coefficients;  // name, default expression
};

std::vector<std::string> system_names();
/// Throws std::out_of_range for unknown names.
const SystemInfo& describe_system(const std::string& name);
/// Builds a catalog system; missing coefficients take their defaults and
/// unknown coefficient names are rejected with std::invalid_argument.
SystemSpec build_system(const std::string& name, const SystemParams& params, const Coefficients& coefficients);

/// Max over seeded (t, x) of |closed_form - X_h| / max(1, |X_h|), componentwise.
double table_fidelity(const SystemSpec& sys, std::size_t samples, std::uint64_t seed);

/// Max over seeded (t, x) of the deviation of both sum_a b_a X_{h_a}
/// (hand-written b_a, and b_a = dF/dlambda_a) from X_h, measured as above.
double decomposition_residual(const SystemSpec& sys, std::size_t samples, std::uint64_t seed);

/// R(r) = -(n-1) [(n-4) f'^2 + f (2 f'' + 2 (n-1) f'/r)] / f^4.
double scalar_curvature(const ConformalFactor& f, std::size_t n, double r);

/// Closed forms of the Darboux III and Taub-NUT scalar curvatures.
double darboux3_curvature_closed_form(double lambda, std::size_t n, double r);
double taubnut_curvature_closed_form(double eta, std::size_t n, double r);

VectorFieldFn diagonal_prolongation(const SystemSpec& sys, std::size_t N);

}  // namespace lieham
