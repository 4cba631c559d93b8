#include "lieham/realizations.hpp"

namespace lieham::realizations {

namespace {

using Vec = Eigen::VectorXd;

std::function<bool(const PhasePoint&)> centrifugal_domain(const std::vector<double>& c) {
  bool any = false;
  for (double ci : c) any = any || ci != 0.0;
  if (!any) return {};
  return [c](const PhasePoint& x) { return centrifugal_ok(x, c); };
}

Vec as_vector(const std::vector<double>& c) { return Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size())); }

void check_params(std::size_t n, const std::vector<double>& c) {
  if (n == 0) throw DimensionError("configuration dimension must be positive");
  if (c.size() != n) throw DimensionError("expected " + std::to_string(n) + " centrifugal constants, got " + std::to_string(c.size()));
}

ScalarField polynomial_field(std::size_t n, std::function<double(const PhasePoint&)> v,
                             std::function<Vec(const PhasePoint&)> g) {
  return ScalarField::autonomous(n, std::move(v), std::move(g));
}

}  // namespace

bool centrifugal_ok(const PhasePoint& x, const std::vector<double>& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (c[static_cast<std::size_t>(i)] != 0.0 && !guarded(x(i))) return false;
  }
  return true;
}

Realization sl2_coalg(std::size_t n, const std::vector<double>& c) {
  check_params(n, c);
  const auto ni = static_cast<Eigen::Index>(n);
  const Vec cv = as_vector(c);
  auto dom = centrifugal_domain(c);

  auto hm = ScalarField::autonomous(
      n, [ni](const PhasePoint& x) { return x.head(ni).squaredNorm(); },
      [ni](const PhasePoint& x) {
        Vec g = Vec::Zero(2 * ni);
        g.head(ni) = 2.0 * x.head(ni);
        return g;
      });
  auto hp = ScalarField::autonomous(
      n,
      [ni, cv](const PhasePoint& x) {
        double s = x.tail(ni).squaredNorm();
        for (Eigen::Index i = 0; i < ni; ++i) {
          if (cv(i) != 0.0) s += cv(i) / (x(i) * x(i));
        }
        return s;
      },
      [ni, cv](const PhasePoint& x) {
        Vec g = Vec::Zero(2 * ni);
        for (Eigen::Index i = 0; i < ni; ++i) {
          if (cv(i) != 0.0) g(i) = -2.0 * cv(i) / (x(i) * x(i) * x(i));
        }
        g.tail(ni) = 2.0 * x.tail(ni);
        return g;
      },
      dom);
  auto h3 = ScalarField::autonomous(
      n, [ni](const PhasePoint& x) { return x.head(ni).dot(x.tail(ni)); },
      [ni](const PhasePoint& x) {
        Vec g(2 * ni);
        g << x.tail(ni), x.head(ni);
        return g;
      });
  return Realization(algebras::sl2_coalg(), n, {hm, hp, h3}, c);
}

Realization sl2_sw(std::size_t n, const std::vector<double>& c) {
  // h1 = h_-/2, h2 = -h_3/2, h3 = h_+/2 in terms of the coalgebra functions
  const Realization base = sl2_coalg(n, c);
  auto scaled = [](const ScalarField& f, double s) {
    return ScalarField(
        f.n(), [f, s](double t, const PhasePoint& x) { return s * f.value_unchecked(t, x); },
        [f, s](double t, const PhasePoint& x) { return Vec(s * f.gradient_unchecked(t, x)); }, f.domain());
  };
  return Realization(algebras::sl2_sw(), n,
                     {scaled(base.field(0), 0.5), scaled(base.field(2), -0.5), scaled(base.field(1), 0.5)}, c);
}

Realization heisenberg() {
  auto one = polynomial_field(1, [](const PhasePoint&) { return 1.0; }, [](const PhasePoint&) { return Vec(Vec::Zero(2)); });
  return Realization(algebras::h3(), 1, {one, coordinate_q(1, 0), coordinate_p(1, 0)});
}

Realization oscillator_h4() {
  auto one = polynomial_field(1, [](const PhasePoint&) { return 1.0; }, [](const PhasePoint&) { return Vec(Vec::Zero(2)); });
  auto qp = polynomial_field(
      1, [](const PhasePoint& x) { return x(0) * x(1); },
      [](const PhasePoint& x) {
        Vec g(2);
        g << x(1), x(0);
        return g;
      });
  return Realization(algebras::h4(), 1, {one, coordinate_q(1, 0), coordinate_p(1, 0), qp});
}

Realization henon_heiles() {
  // x = (q1, q2, p1, p2)
  auto p1sq = polynomial_field(
      2, [](const PhasePoint& x) { return x(2) * x(2); },
      [](const PhasePoint& x) {
        Vec g = Vec::Zero(4);
        g(2) = 2.0 * x(2);
        return g;
      });
  auto q1sq = polynomial_field(
      2, [](const PhasePoint& x) { return x(0) * x(0); },
      [](const PhasePoint& x) {
        Vec g = Vec::Zero(4);
        g(0) = 2.0 * x(0);
        return g;
      });
  auto q1p1 = polynomial_field(
      2, [](const PhasePoint& x) { return x(0) * x(2); },
      [](const PhasePoint& x) {
        Vec g = Vec::Zero(4);
        g(0) = x(2);
        g(2) = x(0);
        return g;
      });
  auto one = polynomial_field(2, [](const PhasePoint&) { return 1.0; }, [](const PhasePoint&) { return Vec(Vec::Zero(4)); });
  return Realization(algebras::sl2_plus_h3(), 2, {p1sq, q1sq, q1p1, coordinate_p(2, 1), coordinate_q(2, 1), one});
}

}  // namespace lieham::realizations
