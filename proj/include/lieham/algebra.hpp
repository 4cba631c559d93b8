#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lieham/polynomial.hpp"

namespace lieham {

/// Linear coordinates lambda_1..lambda_r on g* relative to the dual basis.
using DualPoint = Eigen::VectorXd;

/// One bracket [e_a, e_b] = sum_g c_ab^g e_g, as written by the caller.
struct BracketRule {
  std::size_t a;
  std::size_t b;
  std::vector<std::pair<std::size_t, Rational>> result;
};

/// Finite-dimensional real Lie algebra given by exact structure constants.
///
/// Constants are stored sparsely for a < b only; `constant(a, b, g)` expands
/// antisymmetry on the fly.
class LieAlgebraSpec {
 public:
  LieAlgebraSpec(std::string name, std::vector<std::string> basis_labels,
                 const std::vector<BracketRule>& brackets);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const;

  Rational constant(std::size_t a, std::size_t b, std::size_t g) const;

  /// Sparse entries (g, c_ab^g) for a < b.
  const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>>&
  sparse_constants() const {
    return sparse_;
  }

  /// c_ab^g as doubles, indexed [g](a, b); fully antisymmetric in (a, b).
  const std::vector<Eigen::MatrixXd>& dense_constants() const { return dense_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>> sparse_;
  std::vector<Eigen::MatrixXd> dense_;
};

struct ValidationReport {
  bool passed = false;
  Rational worst_residual{0};
  /// Triple (a, b, c) where the worst Jacobi residual occurred.
  std::optional<std::array<std::size_t, 3>> worst_triple;
};

/// Checks the Jacobi identity exactly over all triples.
ValidationReport validate_structure(const LieAlgebraSpec& spec);

/// KKS bracket {f, g} = sum c_ab^g lambda_g d_a f d_b g, exact.
RationalPolynomial kks_bracket(const LieAlgebraSpec& spec, const RationalPolynomial& f,
                               const RationalPolynomial& g);

/// Max over coordinates lambda_g of the largest |coefficient| of {C, lambda_g}.
Rational casimir_check(const LieAlgebraSpec& spec, const RationalPolynomial& casimir);

/// A t-dependent function F(t, lambda) on g* with analytic partial derivatives.
class DualFunction {
 public:
  using ValueFn = std::function<double(double, const DualPoint&)>;
  using GradientFn = std::function<Eigen::VectorXd(double, const DualPoint&)>;

  DualFunction() = default;
  DualFunction(std::size_t arity, ValueFn value, GradientFn gradient)
      : arity_(arity), value_(std::move(value)), gradient_(std::move(gradient)) {}

  std::size_t arity() const { return arity_; }
  double operator()(double t, const DualPoint& lambda) const;
  Eigen::VectorXd gradient(double t, const DualPoint& lambda) const;

  /// F = sum_a coeff_a(t) lambda_a, the linear (Lie-Hamilton) case.
  static DualFunction linear(std::size_t arity,
                             std::vector<std::pair<std::size_t, std::function<double(double)>>> terms);

 private:
  std::size_t arity_ = 0;
  ValueFn value_;
  GradientFn gradient_;
};

/// Components of the KKS Hamiltonian vector field of F_t at p:
/// dlambda_g/dt = {lambda_g, F_t} = sum_{b,m} c_gb^m lambda_m dF/dlambda_b.
Eigen::VectorXd kks_vector_field(const LieAlgebraSpec& spec, const Eigen::VectorXd& dF,
                                 const DualPoint& p);
Eigen::VectorXd kks_vector_field(const LieAlgebraSpec& spec, const DualFunction& F, double t,
                                 const DualPoint& p);

namespace algebras {

/// sl(2,R) with {h1,h2} = -h1, {h1,h3} = -2 h2, {h2,h3} = -h3.
std::shared_ptr<const LieAlgebraSpec> sl2_sw();
/// sl(2,R) with basis (v-, v+, v3): {v3,v+} = 2v+, {v3,v-} = -2v-, {v-,v+} = 4v3.
std::shared_ptr<const LieAlgebraSpec> sl2_coalg();
/// Heisenberg (e0, e1, e2) with [e1, e2] = e0.
std::shared_ptr<const LieAlgebraSpec> h3();
/// Oscillator algebra (e0, e1, e2, e3): [e1,e2] = e0, [e3,e1] = -e1, [e3,e2] = e2.
std::shared_ptr<const LieAlgebraSpec> h4();
/// sl(2,R) + h3 in the Henon-Heiles basis (h1..h6).
std::shared_ptr<const LieAlgebraSpec> sl2_plus_h3();

/// Lookup by catalog name: "sl2_sw", "sl2_coalg", "h3", "h4", "sl2+h3".
std::shared_ptr<const LieAlgebraSpec> by_name(const std::string& name);
std::vector<std::string> names();

/// Shipped Casimir invariants of a catalog algebra, primary one first.
std::vector<RationalPolynomial> casimirs(const std::string& name);

}  // namespace algebras

}  // namespace lieham
