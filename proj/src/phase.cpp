#include "lieham/phase.hpp"

#include <algorithm>
#include <cmath>

namespace lieham {

ScalarField::ScalarField(std::size_t n, ValueFn value, GradientFn gradient, DomainPredicate domain,
                         bool time_dependent)
    : n_(n),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      domain_(std::move(domain)),
      time_dependent_(time_dependent) {}

ScalarField ScalarField::autonomous(std::size_t n, std::function<double(const PhasePoint&)> value,
                                    std::function<Eigen::VectorXd(const PhasePoint&)> gradient,
                                    std::function<bool(const PhasePoint&)> domain) {
  DomainPredicate dom;
  if (domain) dom = [domain](double, const PhasePoint& x) { return domain(x); };
  return ScalarField(
      n, [value](double, const PhasePoint& x) { return value(x); },
      [gradient](double, const PhasePoint& x) { return gradient(x); }, std::move(dom), false);
}

bool ScalarField::in_domain(double t, const PhasePoint& x) const {
  if (static_cast<std::size_t>(x.size()) != 2 * n_) return false;
  return !domain_ || domain_(t, x);
}

void ScalarField::check(double t, const PhasePoint& x) const {
  if (static_cast<std::size_t>(x.size()) != 2 * n_)
    throw DimensionError("phase point has dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(2 * n_));
  if (domain_ && !domain_(t, x)) throw DomainError("point outside the field's domain");
}

double ScalarField::value(double t, const PhasePoint& x) const {
  check(t, x);
  return value_(t, x);
}

Eigen::VectorXd ScalarField::gradient(double t, const PhasePoint& x) const {
  check(t, x);
  return gradient_(t, x);
}

Eigen::VectorXd symplectic_gradient(const Eigen::VectorXd& grad) {
  const Eigen::Index n = grad.size() / 2;
  Eigen::VectorXd out(grad.size());
  out.head(n) = grad.tail(n);
  out.tail(n) = -grad.head(n);
  return out;
}

double canonical_bracket(const ScalarField& f, const ScalarField& g, const PhasePoint& x, double t) {
  if (f.n() != g.n()) throw DimensionError("bracket of fields on different phase spaces");
  const Eigen::VectorXd df = f.gradient(t, x);
  const Eigen::VectorXd dg = g.gradient(t, x);
  const Eigen::Index n = static_cast<Eigen::Index>(f.n());
  return df.head(n).dot(dg.tail(n)) - dg.head(n).dot(df.tail(n));
}

Eigen::VectorXd hamiltonian_vector_field(const ScalarField& h, double t, const PhasePoint& x) {
  return symplectic_gradient(h.gradient(t, x));
}

double grad_check(const ScalarField& f, const PhasePoint& x, double t) {
  const Eigen::VectorXd g = f.gradient(t, x);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
    PhasePoint xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    // value() throws DomainError if a probe leaves the domain
    const double fd = (f.value(t, xp) - f.value(t, xm)) / (2.0 * h);
    worst = std::max(worst, std::abs(g(i) - fd) / std::max(1.0, std::abs(g(i))));
  }
  return worst;
}

namespace {

DomainPredicate both(const DomainPredicate& a, const DomainPredicate& b) {
  if (!a) return b;
  if (!b) return a;
  return [a, b](double t, const PhasePoint& x) { return a(t, x) && b(t, x); };
}

}  // namespace

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  if (a.n() != b.n()) throw DimensionError("product of fields on different phase spaces");
  return ScalarField(
      a.n(), [a, b](double t, const PhasePoint& x) { return a.value_unchecked(t, x) * b.value_unchecked(t, x); },
      [a, b](double t, const PhasePoint& x) {
        return Eigen::VectorXd(a.value_unchecked(t, x) * b.gradient_unchecked(t, x) +
                               b.value_unchecked(t, x) * a.gradient_unchecked(t, x));
      },
      both(a.domain(), b.domain()), a.time_dependent() || b.time_dependent());
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  if (a.n() != b.n()) throw DimensionError("sum of fields on different phase spaces");
  return ScalarField(
      a.n(), [a, b](double t, const PhasePoint& x) { return a.value_unchecked(t, x) + b.value_unchecked(t, x); },
      [a, b](double t, const PhasePoint& x) {
        return Eigen::VectorXd(a.gradient_unchecked(t, x) + b.gradient_unchecked(t, x));
      },
      both(a.domain(), b.domain()), a.time_dependent() || b.time_dependent());
}

ScalarField coordinate_q(std::size_t n, std::size_t i) {
  if (i >= n) throw DimensionError("coordinate index out of range");
  const auto k = static_cast<Eigen::Index>(i);
  return ScalarField::autonomous(
      n, [k](const PhasePoint& x) { return x(k); },
      [n, k](const PhasePoint&) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n));
        g(k) = 1.0;
        return g;
      });
}

ScalarField coordinate_p(std::size_t n, std::size_t i) {
  if (i >= n) throw DimensionError("coordinate index out of range");
  const auto k = static_cast<Eigen::Index>(n + i);
  return ScalarField::autonomous(
      n, [k](const PhasePoint& x) { return x(k); },
      [n, k](const PhasePoint&) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n));
        g(k) = 1.0;
        return g;
      });
}

}  // namespace lieham
