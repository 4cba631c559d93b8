#include "lieham/momentum.hpp"

#include <algorithm>
#include <cmath>

#include "lieham/finite_difference.hpp"

namespace lieham {

Realization::Realization(std::shared_ptr<const LieAlgebraSpec> algebra, std::size_t n,
                         std::vector<ScalarField> fields, std::vector<double> params)
    : algebra_(std::move(algebra)), n_(n), fields_(std::move(fields)), params_(std::move(params)) {
  if (!algebra_) throw std::invalid_argument("realization needs an algebra");
  if (fields_.size() != algebra_->dim())
    throw DimensionError("realization has " + std::to_string(fields_.size()) + " functions for an algebra of dimension " +
                         std::to_string(algebra_->dim()));
  for (const auto& f : fields_) {
    if (f.n() != n_) throw DimensionError("realization function on a different phase space");
  }
}

bool Realization::in_domain(const PhasePoint& x) const {
  return std::all_of(fields_.begin(), fields_.end(), [&](const ScalarField& f) { return f.in_domain(0.0, x); });
}

DomainPredicate Realization::domain() const {
  auto fields = fields_;
  return [fields](double t, const PhasePoint& x) {
    return std::all_of(fields.begin(), fields.end(), [&](const ScalarField& f) { return f.in_domain(t, x); });
  };
}

DualPoint evaluate_J(const Realization& r, const PhasePoint& x) {
  DualPoint lambda(static_cast<Eigen::Index>(r.r()));
  for (std::size_t a = 0; a < r.r(); ++a) lambda(static_cast<Eigen::Index>(a)) = r.field(a).value(x);
  return lambda;
}

Eigen::MatrixXd J_jacobian(const Realization& r, const PhasePoint& x) {
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(r.r()), x.size());
  for (std::size_t a = 0; a < r.r(); ++a) jac.row(static_cast<Eigen::Index>(a)) = r.field(a).gradient(x).transpose();
  return jac;
}

double bracket_residual(const Realization& r, const PhasePoint& x) {
  const DualPoint h = evaluate_J(r, x);
  const Eigen::MatrixXd jac = J_jacobian(r, x);
  const auto n = static_cast<Eigen::Index>(r.n());
  const auto& C = r.algebra().dense_constants();
  double worst = 0.0;
  for (std::size_t a = 0; a < r.r(); ++a) {
    for (std::size_t b = a + 1; b < r.r(); ++b) {
      const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
      const double lhs = jac.row(ia).head(n).dot(jac.row(ib).tail(n)) - jac.row(ib).head(n).dot(jac.row(ia).tail(n));
      double rhs = 0.0;
      for (std::size_t g = 0; g < r.r(); ++g) rhs += C[g](ia, ib) * h(static_cast<Eigen::Index>(g));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double verify_realization(const Realization& r, const SampleBox& box, std::size_t samples, std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& s : sample_points(r.n(), box, r.domain(), samples, seed)) {
    worst = std::max(worst, bracket_residual(r, s.x));
  }
  return worst;
}

ScalarField casimir_pullback(const Realization& r, const RationalPolynomial& casimir) {
  if (casimir.nvars() != r.r()) throw DimensionError("Casimir variables do not match realization");
  std::vector<Polynomial<double>> partials;
  for (std::size_t a = 0; a < r.r(); ++a) partials.push_back(casimir.derivative(a).cast<double>());
  const auto value_poly = casimir.cast<double>();
  return ScalarField(
      r.n(),
      [r, value_poly](double, const PhasePoint& x) { return value_poly.evaluate(evaluate_J(r, x)); },
      [r, partials](double, const PhasePoint& x) {
        const DualPoint lambda = evaluate_J(r, x);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
        for (std::size_t a = 0; a < r.r(); ++a) {
          const double w = partials[a].evaluate(lambda);
          if (w != 0.0) g += w * r.field(a).gradient(x);
        }
        return g;
      },
      r.domain());
}

ComposedHamiltonian::ComposedHamiltonian(Realization realization, DualFunction F, DomainPredicate extra_domain)
    : realization_(std::move(realization)), F_(std::move(F)) {
  if (F_.arity() != realization_.r())
    throw DimensionError("composing function has arity " + std::to_string(F_.arity()) + ", realization has " +
                         std::to_string(realization_.r()) + " functions");
  const Realization r = realization_;
  const DualFunction Fc = F_;
  h_ = ScalarField(
      r.n(), [r, Fc](double t, const PhasePoint& x) { return Fc(t, evaluate_J(r, x)); },
      [r, Fc](double t, const PhasePoint& x) {
        const Eigen::VectorXd dF = Fc.gradient(t, evaluate_J(r, x));
        Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
        for (std::size_t a = 0; a < r.r(); ++a) {
          const double w = dF(static_cast<Eigen::Index>(a));
          if (w != 0.0) g += w * r.field(a).gradient(x);
        }
        return g;
      },
      [dom = r.domain(), extra = std::move(extra_domain)](double t, const PhasePoint& x) {
        return dom(t, x) && (!extra || extra(t, x));
      },
      true);
}

Eigen::VectorXd ComposedHamiltonian::coefficients(double t, const PhasePoint& x) const {
  return F_.gradient(t, evaluate_J(realization_, x));
}

Eigen::VectorXd ComposedHamiltonian::decomposition(double t, const PhasePoint& x) const {
  const Eigen::VectorXd b = coefficients(t, x);
  Eigen::VectorXd X = Eigen::VectorXd::Zero(x.size());
  for (std::size_t a = 0; a < realization_.r(); ++a) {
    X += b(static_cast<Eigen::Index>(a)) * hamiltonian_vector_field(realization_.field(a), t, x);
  }
  return X;
}

ComposedHamiltonian compose(const Realization& r, const DualFunction& F, DomainPredicate extra_domain) {
  return ComposedHamiltonian(r, F, std::move(extra_domain));
}

double pushforward_residual(const Realization& r, const Trajectory& traj, const DualFunction& F) {
  if (traj.size() < 5) throw std::invalid_argument("pushforward residual needs at least 5 samples");
  std::vector<DualPoint> lambda;
  lambda.reserve(traj.size());
  for (const auto& x : traj.x) lambda.push_back(evaluate_J(r, x));
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < traj.size(); ++i) {
    const auto idx = five_point_stencil(traj.size(), i);
    std::vector<double> nodes;
    for (auto k : idx) nodes.push_back(traj.t[k]);
    const Eigen::MatrixXd w = fd_weights(traj.t[i], nodes, 1);
    DualPoint dlambda = DualPoint::Zero(lambda[i].size());
    for (std::size_t s = 0; s < idx.size(); ++s) dlambda += w(static_cast<Eigen::Index>(s), 1) * lambda[idx[s]];
    const Eigen::VectorXd X = kks_vector_field(r.algebra(), F, traj.t[i], lambda[i]);
    worst = std::max(worst, (dlambda - X).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace lieham
