#include "lieham/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lieham/realizations.hpp"

namespace lieham {

namespace {

using Vec = Eigen::VectorXd;
using ScalarFn = std::function<double(double)>;

/// Quantities shared by the hand-written equations of motion.
struct Parts {
  Eigen::Index n;
  Vec q, p;
  double s;    // q.q
  double qp;   // q.p
  double P;    // p.p + sum c_i/q_i^2
  Vec cq3;     // c_i / q_i^3
  double h3;   // q.p, for readability in the decompositions
  double hp;   // h_+ = P

  Parts(const PhasePoint& x, const Vec& c) : n(config_dim(x)), q(x.head(n)), p(x.tail(n)) {
    s = q.squaredNorm();
    qp = q.dot(p);
    P = p.squaredNorm();
    cq3 = Vec::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (c(i) == 0.0) continue;
      P += c(i) / (q(i) * q(i));
      cq3(i) = c(i) / (q(i) * q(i) * q(i));
    }
    h3 = qp;
    hp = P;
  }
};

Vec join(const Vec& dq, const Vec& dp) {
  Vec out(dq.size() + dp.size());
  out << dq, dp;
  return out;
}

Vec coeffs3(double bm, double bp, double b3) {
  Vec b(3);
  b << bm, bp, b3;
  return b;
}

std::vector<double> normalized_c(std::size_t n, std::vector<double> c) {
  if (n == 0) throw DimensionError("configuration dimension must be positive");
  if (c.empty()) c.assign(n, 0.0);
  if (c.size() != n)
    throw DimensionError("expected " + std::to_string(n) + " centrifugal constants, got " + std::to_string(c.size()));
  return c;
}

Vec to_vec(const std::vector<double>& c) { return Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size())); }

/// F = A(s) lambda_+ + B(s) lambda_3^2 + V(t, s) over the sl2_coalg basis (v-, v+, v3).
struct CentralForm {
  ScalarFn A, dA, B, dB;
  std::function<double(double, double)> V, dV;
};

DualFunction central_F(const CentralForm& cf) {
  auto value = [cf](double t, const DualPoint& l) {
    const double s = l(0);
    double v = cf.A(s) * l(1) + cf.V(t, s);
    if (cf.B) v += cf.B(s) * l(2) * l(2);
    return v;
  };
  auto grad = [cf](double t, const DualPoint& l) {
    const double s = l(0);
    Vec g(3);
    g(0) = cf.dA(s) * l(1) + cf.dV(t, s);
    g(1) = cf.A(s);
    g(2) = 0.0;
    if (cf.B) {
      g(0) += cf.dB(s) * l(2) * l(2);
      g(2) = 2.0 * cf.B(s) * l(2);
    }
    return g;
  };
  return DualFunction(3, value, grad);
}

DomainPredicate and_domain(DomainPredicate a, DomainPredicate b) {
  if (!a) return b;
  if (!b) return a;
  return [a, b](double t, const PhasePoint& x) { return a(t, x) && b(t, x); };
}

/// Common assembly for systems on the sl(2,R)-coalgebra realization.
SystemSpec coalgebra_system(std::string name, std::size_t n, std::vector<double> c, DualFunction F,
                            DomainPredicate extra, VectorFieldFn closed, VectorFieldFn printed) {
  SystemSpec sys;
  sys.name = std::move(name);
  sys.params.n = n;
  sys.params.c = c;
  sys.realization = realizations::sl2_coalg(n, c);
  sys.F = std::move(F);
  sys.composed = std::make_shared<const ComposedHamiltonian>(sys.realization, sys.F, extra);
  sys.domain = and_domain(sys.realization.domain(), extra);
  sys.closed_form = std::move(closed);
  sys.printed_coefficients = std::move(printed);
  sys.coalgebra.emplace([](double ci) { return realizations::sl2_coalg(1, {ci}); }, c);
  sys.casimirs = algebras::casimirs("sl2_coalg");
  sys.coalgebra_casimir = sys.casimirs.front();
  return sys;
}

/// Keeps sampled points inside |k| s <= 0.5 when a curvature-like parameter is set.
SampleBox curved_box(std::size_t n, double k) {
  SampleBox box;
  if (k != 0.0) {
    const double qmax = std::sqrt(0.5 / (std::abs(k) * static_cast<double>(n)));
    box.qmax = std::min(box.qmax, qmax);
    box.qmin = 0.15 * box.qmax;
  }
  return box;
}

double richardson_first(const ScalarFn& f, double r) {
  auto D = [&](double h) { return (f(r + h) - f(r - h)) / (2.0 * h); };
  const double h = 1e-5;
  return (4.0 * D(h / 2.0) - D(h)) / 3.0;
}

double richardson_second(const ScalarFn& f, double r) {
  auto D = [&](double h) { return (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h); };
  const double h = 1e-5;
  return (4.0 * D(h / 2.0) - D(h)) / 3.0;
}

double componentwise_relative(const Vec& a, const Vec& ref) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a(i) - ref(i)) / std::max(1.0, std::abs(ref(i))));
  return worst;
}

}  // namespace

namespace spaces {

ConformalFactor flat() {
  return {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }, "flat"};
}

ConformalFactor poincare(double kappa) {
  return {[kappa](double r) { return 1.0 / (1.0 + kappa * r * r); },
          [kappa](double r) {
            const double k = 1.0 + kappa * r * r;
            return -2.0 * kappa * r / (k * k);
          },
          [kappa](double r) {
            const double k = 1.0 + kappa * r * r;
            return (6.0 * kappa * kappa * r * r - 2.0 * kappa) / (k * k * k);
          },
          "poincare"};
}

ConformalFactor poincare_metric(double kappa) {
  const ConformalFactor f = poincare(kappa);
  return {[f](double r) { return 2.0 * f.f(r); }, [f](double r) { return 2.0 * f.df(r); },
          [f](double r) { return 2.0 * f.d2f(r); }, "poincare_metric"};
}

ConformalFactor darboux3(double lambda) {
  return {[lambda](double r) { return std::sqrt(1.0 + lambda * r * r); },
          [lambda](double r) { return lambda * r / std::sqrt(1.0 + lambda * r * r); },
          [lambda](double r) { return lambda / std::pow(1.0 + lambda * r * r, 1.5); }, "darboux3"};
}

ConformalFactor taubnut(double eta) {
  // f = sqrt(1 + eta/r)
  return {[eta](double r) { return std::sqrt(1.0 + eta / r); },
          [eta](double r) { return -eta / (2.0 * r * r * std::sqrt(1.0 + eta / r)); },
          [eta](double r) {
            const double g = 1.0 + eta / r;
            return eta / (r * r * r * std::sqrt(g)) - eta * eta / (4.0 * std::pow(r, 4) * std::pow(g, 1.5));
          },
          "taubnut"};
}

KineticPair beltrami(double kappa) {
  return {[kappa](double s) { return 0.5 * (1.0 + kappa * s); }, [kappa](double) { return 0.5 * kappa; },
          [kappa](double s) { return 0.5 * kappa * (1.0 + kappa * s); },
          [kappa](double) { return 0.5 * kappa * kappa; }};
}

}  // namespace spaces

bool SystemSpec::in_domain(double t, const PhasePoint& x) const {
  if (static_cast<std::size_t>(x.size()) != 2 * n()) return false;
  return !domain || domain(t, x);
}

Vec SystemSpec::vector_field(double t, const PhasePoint& x) const {
  return hamiltonian_vector_field(hamiltonian(), t, x);
}

double SystemSpec::mass(double r) const {
  if (!conformal) throw std::logic_error(name + " has no conformal factor");
  const double f = conformal->f(r);
  return f * f;
}

ScalarField SystemSpec::invariant(const std::string& inv) const {
  if (inv.size() > 2 && inv.rfind("C_", 0) == 0) {
    const std::size_t k = std::stoul(inv.substr(2));
    if (k < 1 || k > casimirs.size()) throw std::out_of_range("system " + name + " has no Casimir " + inv);
    return casimir_pullback(realization, casimirs[k - 1]);
  }
  if (!coalgebra) throw std::out_of_range("system " + name + " has no coalgebra invariants; use C_k");
  return invariant_by_name(*coalgebra, coalgebra_casimir, inv).field;
}

std::vector<std::string> SystemSpec::default_invariants() const {
  if (!coalgebra) {
    std::vector<std::string> out;
    for (std::size_t k = 1; k <= casimirs.size(); ++k) out.push_back("C_" + std::to_string(k));
    return out;
  }
  const std::size_t N = coalgebra->copies();
  std::vector<std::string> out;
  if (N >= 3) {
    out.push_back("I_L_2");
    out.push_back("I_R_2");
  }
  out.push_back("I_" + std::to_string(N));
  return out;
}

SystemSpec make_sw(std::size_t n, std::vector<double> c, TimeCoefficient omega2) {
  c = normalized_c(n, std::move(c));
  const Vec cv = to_vec(c);
  CentralForm cf{[](double) { return 0.5; }, [](double) { return 0.0; }, {}, {},
                 [omega2](double t, double s) { return 0.5 * omega2(t) * s; },
                 [omega2](double t, double) { return 0.5 * omega2(t); }};
  auto closed = [cv, omega2](double t, const PhasePoint& x) {
    const Parts v(x, cv);
    return join(v.p, -omega2(t) * v.q + v.cq3);
  };
  auto printed = [omega2](double t, const PhasePoint&) { return coeffs3(0.5 * omega2(t), 0.5, 0.0); };
  SystemSpec sys = coalgebra_system("sw", n, c, central_F(cf), {}, closed, printed);
  sys.coefficients["omega2"] = omega2;
  sys.conformal = spaces::flat();
  return sys;
}

SystemSpec make_ho_sl2(std::size_t n, TimeCoefficient omega2) {
  if (n == 0) throw DimensionError("configuration dimension must be positive");
  std::vector<double> c(n, 0.0);
  SystemSpec sys;
  sys.name = "ho_sl2";
  sys.params.n = n;
  sys.params.c = c;
  sys.realization = realizations::sl2_sw(n, c);
  // F = lambda_3 + omega^2(t) lambda_1
  sys.F = DualFunction::linear(3, {{2, [](double) { return 1.0; }}, {0, [omega2](double t) { return omega2(t); }}});
  sys.composed = std::make_shared<const ComposedHamiltonian>(sys.realization, sys.F);
  sys.domain = sys.realization.domain();
  sys.closed_form = [omega2](double t, const PhasePoint& x) {
    const Eigen::Index k = config_dim(x);
    return join(x.tail(k), -omega2(t) * x.head(k));
  };
  sys.printed_coefficients = [omega2](double t, const PhasePoint&) { return coeffs3(omega2(t), 0.0, 1.0); };
  sys.coalgebra.emplace([](double ci) { return realizations::sl2_sw(1, {ci}); }, c);
  sys.casimirs = algebras::casimirs("sl2_sw");
  sys.coalgebra_casimir = sys.casimirs.front();
  sys.coefficients["omega2"] = omega2;
  return sys;
}

SystemSpec make_ho_h4(TimeCoefficient omega2, std::size_t n) {
  if (n != 1) throw DimensionError("the h4 oscillator presentation exists only for n = 1");
  SystemSpec sys;
  sys.name = "ho_h4";
  sys.params.n = 1;
  sys.params.c = {0.0};
  sys.realization = realizations::oscillator_h4();
  // F' = lambda_2^2/2 + omega^2(t) lambda_1^2/2 over (e0, e1, e2, e3)
  sys.F = DualFunction(
      4, [omega2](double t, const DualPoint& l) { return 0.5 * l(2) * l(2) + 0.5 * omega2(t) * l(1) * l(1); },
      [omega2](double t, const DualPoint& l) {
        Vec g = Vec::Zero(4);
        g(1) = omega2(t) * l(1);
        g(2) = l(2);
        return g;
      });
  sys.composed = std::make_shared<const ComposedHamiltonian>(sys.realization, sys.F);
  sys.domain = sys.realization.domain();
  sys.closed_form = [omega2](double t, const PhasePoint& x) {
    Vec v(2);
    v << x(1), -omega2(t) * x(0);
    return v;
  };
  sys.printed_coefficients = [omega2](double t, const PhasePoint& x) {
    Vec b = Vec::Zero(4);
    b(1) = omega2(t) * x(0);
    b(2) = x(1);
    return b;
  };
  sys.casimirs = algebras::casimirs("h4");
  sys.coefficients["omega2"] = omega2;
  return sys;
}

namespace {

SystemSpec henon_heiles_system(std::string name, TimeCoefficient Omega1, TimeCoefficient Omega2,
                               TimeCoefficient alpha, TimeCoefficient beta, VectorFieldFn closed) {
  SystemSpec sys;
  sys.name = std::move(name);
  sys.params.n = 2;
  sys.params.c = {0.0, 0.0};
  sys.realization = realizations::henon_heiles();
  // F = (l1 + l4^2)/2 + Omega1 l2 + Omega2 l5^2 + alpha (l2 l5 + beta l5^3), 1-based labels
  sys.F = DualFunction(
      6,
      [=](double t, const DualPoint& l) {
        return 0.5 * (l(0) + l(3) * l(3)) + Omega1(t) * l(1) + Omega2(t) * l(4) * l(4) +
               alpha(t) * (l(1) * l(4) + beta(t) * l(4) * l(4) * l(4));
      },
      [=](double t, const DualPoint& l) {
        const double a = alpha(t);
        Vec g = Vec::Zero(6);
        g(0) = 0.5;
        g(1) = Omega1(t) + a * l(4);
        g(3) = l(3);
        g(4) = 2.0 * Omega2(t) * l(4) + a * l(1) + 3.0 * a * beta(t) * l(4) * l(4);
        return g;
      });
  sys.composed = std::make_shared<const ComposedHamiltonian>(sys.realization, sys.F);
  sys.domain = sys.realization.domain();
  sys.closed_form = std::move(closed);
  sys.printed_coefficients = [=](double t, const PhasePoint& x) {
    const double q1 = x(0), q2 = x(1), p2 = x(3), a = alpha(t);
    Vec b = Vec::Zero(6);
    b(0) = 0.5;
    b(1) = Omega1(t) + a * q2;
    b(3) = p2;
    b(4) = 2.0 * Omega2(t) * q2 + a * q1 * q1 + 3.0 * a * beta(t) * q2 * q2;
    return b;
  };
  sys.casimirs = algebras::casimirs("sl2+h3");
  return sys;
}

}  // namespace

SystemSpec make_henon_heiles(TimeCoefficient Omega1, TimeCoefficient Omega2, TimeCoefficient alpha,
                             TimeCoefficient beta) {
  auto closed = [=](double t, const PhasePoint& x) {
    const double q1 = x(0), q2 = x(1), a = alpha(t);
    Vec v(4);
    v << x(2), x(3), -2.0 * Omega1(t) * q1 - 2.0 * a * q1 * q2,
        -2.0 * Omega2(t) * q2 - a * (q1 * q1 + 3.0 * beta(t) * q2 * q2);
    return v;
  };
  SystemSpec sys = henon_heiles_system("henon_heiles", Omega1, Omega2, alpha, beta, closed);
  sys.coefficients = {{"Omega1", Omega1}, {"Omega2", Omega2}, {"alpha", alpha}, {"beta", beta}};
  return sys;
}

SystemSpec make_henon_heiles_preset(HenonHeilesPreset preset, TimeCoefficient omega2, TimeCoefficient alpha) {
  // (beta, Omega2 / omega^2, dp2 coefficients) per preset
  double beta = 0.0, omega2_factor = 0.0, dp2_lin = 0.0, dp2_quad = 0.0;
  std::string name;
  switch (preset) {
    case HenonHeilesPreset::SawadaKotera:
      name = "hh_sk";
      beta = 1.0 / 3.0;
      omega2_factor = 0.5;
      dp2_lin = 1.0;
      dp2_quad = 1.0;
      break;
    case HenonHeilesPreset::KdV12:
      name = "hh_kdv12";
      beta = 2.0;
      omega2_factor = 2.0;
      dp2_lin = 4.0;
      dp2_quad = 6.0;
      break;
    case HenonHeilesPreset::KaupKupershmidt:
      name = "hh_kk";
      beta = 16.0 / 3.0;
      omega2_factor = 8.0;
      dp2_lin = 16.0;
      dp2_quad = 16.0;
      break;
  }
  auto Omega1 = TimeCoefficient::from_function([omega2](double t) { return 0.5 * omega2(t); }, "omega2/2");
  auto Omega2 = TimeCoefficient::from_function([omega2, omega2_factor](double t) { return omega2_factor * omega2(t); },
                                               "omega2*" + std::to_string(omega2_factor));
  // Table rows: dp1 = -w^2 q1 - 2 a q1 q2, dp2 = -k w^2 q2 - a (q1^2 + m q2^2)
  auto closed = [=](double t, const PhasePoint& x) {
    const double q1 = x(0), q2 = x(1), w2 = omega2(t), a = alpha(t);
    Vec v(4);
    v << x(2), x(3), -w2 * q1 - 2.0 * a * q1 * q2, -dp2_lin * w2 * q2 - a * (q1 * q1 + dp2_quad * q2 * q2);
    return v;
  };
  SystemSpec sys = henon_heiles_system(name, Omega1, Omega2, alpha, TimeCoefficient::constant(beta), closed);
  sys.coefficients = {{"omega2", omega2}, {"alpha", alpha}};
  return sys;
}

SystemSpec make_painleve2(double b) {
  SystemSpec sys;
  sys.name = "painleve2";
  sys.params.n = 1;
  sys.params.c = {0.0};
  sys.params.b = b;
  sys.realization = realizations::heisenberg();
  // F = l2 (l2 - 2 l1^2 - t)/2 - b l1 over (e0, e1, e2)
  sys.F = DualFunction(
      3, [b](double t, const DualPoint& l) { return 0.5 * l(2) * (l(2) - 2.0 * l(1) * l(1) - t) - b * l(1); },
      [b](double t, const DualPoint& l) {
        Vec g(3);
        g << 0.0, -2.0 * l(1) * l(2) - b, l(2) - l(1) * l(1) - 0.5 * t;
        return g;
      });
  sys.composed = std::make_shared<const ComposedHamiltonian>(sys.realization, sys.F);
  sys.domain = sys.realization.domain();
  sys.closed_form = [b](double t, const PhasePoint& x) {
    const double q = x(0), p = x(1);
    Vec v(2);
    v << p - q * q - 0.5 * t, 2.0 * q * p + b;
    return v;
  };
  sys.printed_coefficients = [b](double t, const PhasePoint& x) {
    const double q = x(0), p = x(1);
    Vec v(3);
    v << 0.0, -2.0 * q * p - b, p - q * q - 0.5 * t;
    return v;
  };
  sys.casimirs = algebras::casimirs("h3");
  sys.box.tmax = 2.0;
  return sys;
}

SystemSpec make_central(std::size_t n, std::vector<double> c, const CurvedSpaceSpec& space, RadialPotential U) {
  c = normalized_c(n, std::move(c));
  const Vec cv = to_vec(c);
  if (space.conformal.has_value() == space.kinetic.has_value())
    throw std::invalid_argument("curved space needs exactly one of a conformal factor or a kinetic pair");
  if (!U.U || !U.dU) throw std::invalid_argument("central potential needs U and dU/dr");

  CentralForm cf;
  VectorFieldFn closed, printed;
  DomainPredicate extra;
  if (space.conformal) {
    ConformalFactor f = *space.conformal;
    if (!f.df) f.df = [g = f.f](double r) { return richardson_first(g, r); };
    // A(s) = 1 / (2 f(r)^2), dA/ds = -f'(r) / (2 r f^3)
    cf.A = [f](double s) {
      const double v = f.f(std::sqrt(s));
      return 0.5 / (v * v);
    };
    cf.dA = [f](double s) {
      const double r = std::sqrt(s), v = f.f(r);
      return -f.df(r) / (2.0 * r * v * v * v);
    };
    extra = [f](double, const PhasePoint& x) {
      const double r = x.head(config_dim(x)).norm();
      return guarded(r) && f.f(r) > kDomainMargin;
    };
    // equations of motion with p/f^2 and the radial forces written out
    closed = [f, U, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double r = std::sqrt(v.s), fr = f.f(r), f2 = fr * fr;
      const Vec dq = v.p / f2;
      const Vec dp = -(v.q / r) * U.dU(t, r) + (v.q / r) * (f.df(r) / (f2 * fr)) * v.P + v.cq3 / f2;
      return join(dq, dp);
    };
    printed = [f, U, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double r = std::sqrt(v.s), fr = f.f(r);
      return coeffs3(U.dU(t, r) / (2.0 * r) - v.hp * f.df(r) / (2.0 * r * fr * fr * fr), 0.5 / (fr * fr), 0.0);
    };
  } else {
    const KineticPair k = *space.kinetic;
    cf.A = k.A;
    cf.dA = k.dA;
    cf.B = k.B;
    cf.dB = k.dB;
    extra = [k](double, const PhasePoint& x) {
      const double s = x.head(config_dim(x)).squaredNorm();
      return guarded(s) && k.A(s) > kDomainMargin;
    };
    closed = [k, U, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double r = std::sqrt(v.s), A = k.A(v.s), B = k.B(v.s);
      const Vec dq = 2.0 * A * v.p + 2.0 * B * v.qp * v.q;
      const Vec dp = -2.0 * k.dA(v.s) * v.P * v.q + 2.0 * A * v.cq3 - 2.0 * k.dB(v.s) * v.qp * v.qp * v.q -
                     2.0 * B * v.qp * v.p - U.dU(t, r) * v.q / r;
      return join(dq, dp);
    };
    printed = [k, U, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double r = std::sqrt(v.s);
      return coeffs3(k.dA(v.s) * v.hp + k.dB(v.s) * v.h3 * v.h3 + U.dU(t, r) / (2.0 * r), k.A(v.s),
                     2.0 * k.B(v.s) * v.h3);
    };
  }
  cf.V = [U](double t, double s) { return U.U(t, std::sqrt(s)); };
  cf.dV = [U](double t, double s) {
    const double r = std::sqrt(s);
    return U.dU(t, r) / (2.0 * r);
  };
  SystemSpec sys = coalgebra_system("central", n, c, central_F(cf), extra, closed, printed);
  sys.conformal = space.conformal;
  return sys;
}

SystemSpec make_curved_oscillator(const std::string& chart, std::size_t n, double kappa, std::vector<double> c,
                                  TimeCoefficient omega2) {
  c = normalized_c(n, std::move(c));
  const Vec cv = to_vec(c);
  SystemSpec sys;
  if (chart == "poincare") {
    CentralForm cf{[kappa](double s) { return 0.5 * (1.0 + kappa * s) * (1.0 + kappa * s); },
                   [kappa](double s) { return kappa * (1.0 + kappa * s); }, {}, {},
                   [kappa, omega2](double t, double s) {
                     const double m = 1.0 - kappa * s;
                     return 0.5 * omega2(t) * s / (m * m);
                   },
                   [kappa, omega2](double t, double s) {
                     const double m = 1.0 - kappa * s;
                     return 0.5 * omega2(t) * (1.0 + kappa * s) / (m * m * m);
                   }};
    DomainPredicate extra = [kappa](double, const PhasePoint& x) {
      const double s = x.head(config_dim(x)).squaredNorm();
      if (kappa < 0.0) return 1.0 + kappa * s > kDomainMargin;
      return guarded(1.0 - kappa * s);
    };
    auto closed = [kappa, omega2, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double k = 1.0 + kappa * v.s, m = 1.0 - kappa * v.s;
      const Vec dq = k * k * v.p;
      const Vec dp = -omega2(t) * v.q * k / (m * m * m) + v.cq3 * k * k - 2.0 * kappa * v.q * k * v.P;
      return join(dq, dp);
    };
    auto printed = [kappa, omega2, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double k = 1.0 + kappa * v.s, m = 1.0 - kappa * v.s;
      return coeffs3(0.5 * omega2(t) * k / (m * m * m) + kappa * k * v.hp, 0.5 * k * k, 0.0);
    };
    sys = coalgebra_system("osc_poincare", n, c, central_F(cf), extra, closed, printed);
    sys.conformal = spaces::poincare(kappa);
  } else if (chart == "beltrami") {
    const KineticPair kp = spaces::beltrami(kappa);
    CentralForm cf{kp.A, kp.dA, kp.B, kp.dB, [omega2](double t, double s) { return 0.5 * omega2(t) * s; },
                   [omega2](double t, double) { return 0.5 * omega2(t); }};
    DomainPredicate extra;
    if (kappa < 0.0) {
      extra = [kappa](double, const PhasePoint& x) {
        return 1.0 + kappa * x.head(config_dim(x)).squaredNorm() > kDomainMargin;
      };
    }
    auto closed = [kappa, omega2, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double k = 1.0 + kappa * v.s;
      const Vec dq = k * (v.p + kappa * v.qp * v.q);
      const Vec dp = -omega2(t) * v.q + k * (v.cq3 - kappa * v.qp * v.p) -
                     kappa * v.q * (v.P + kappa * v.qp * v.qp);
      return join(dq, dp);
    };
    auto printed = [kappa, omega2, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double k = 1.0 + kappa * v.s;
      return coeffs3(0.5 * (omega2(t) + kappa * (v.hp + kappa * v.h3 * v.h3)), 0.5 * k, kappa * k * v.h3);
    };
    sys = coalgebra_system("osc_beltrami", n, c, central_F(cf), extra, closed, printed);
  } else {
    throw std::invalid_argument("unknown chart '" + chart + "' (expected poincare or beltrami)");
  }
  sys.params.kappa = kappa;
  sys.coefficients["omega2"] = omega2;
  sys.box = curved_box(n, kappa);
  return sys;
}

SystemSpec make_darboux3(std::size_t n, double lambda, std::vector<double> c, TimeCoefficient omega2) {
  c = normalized_c(n, std::move(c));
  const Vec cv = to_vec(c);
  CentralForm cf{[lambda](double s) { return 0.5 / (1.0 + lambda * s); },
                 [lambda](double s) {
                   const double k = 1.0 + lambda * s;
                   return -0.5 * lambda / (k * k);
                 },
                 {}, {}, [lambda, omega2](double t, double s) { return 0.5 * omega2(t) * s / (1.0 + lambda * s); },
                 [lambda, omega2](double t, double s) {
                   const double k = 1.0 + lambda * s;
                   return 0.5 * omega2(t) / (k * k);
                 }};
  DomainPredicate extra;
  if (lambda < 0.0) {
    extra = [lambda](double, const PhasePoint& x) {
      return 1.0 + lambda * x.head(config_dim(x)).squaredNorm() > kDomainMargin;
    };
  }
  auto closed = [lambda, omega2, cv](double t, const PhasePoint& x) {
    const Parts v(x, cv);
    const double k = 1.0 + lambda * v.s;
    const Vec dq = v.p / k;
    const Vec dp = -omega2(t) * v.q / (k * k) + v.cq3 / k + lambda * v.q * v.P / (k * k);
    return join(dq, dp);
  };
  auto printed = [lambda, omega2, cv](double t, const PhasePoint& x) {
    const Parts v(x, cv);
    const double k = 1.0 + lambda * v.s;
    return coeffs3((omega2(t) - lambda * v.hp) / (2.0 * k * k), 0.5 / k, 0.0);
  };
  SystemSpec sys = coalgebra_system("darboux3", n, c, central_F(cf), extra, closed, printed);
  sys.params.lambda = lambda;
  sys.coefficients["omega2"] = omega2;
  sys.conformal = spaces::darboux3(lambda);
  sys.box = curved_box(n, lambda < 0.0 ? lambda : 0.0);
  return sys;
}

SystemSpec make_kc(const std::string& chart, std::size_t n, double kappa, std::vector<double> c, TimeCoefficient K) {
  c = normalized_c(n, std::move(c));
  const Vec cv = to_vec(c);
  DomainPredicate extra = [kappa](double, const PhasePoint& x) {
    const double s = x.head(config_dim(x)).squaredNorm();
    return guarded(s) && (kappa >= 0.0 || 1.0 + kappa * s > kDomainMargin);
  };
  SystemSpec sys;
  if (chart == "euclidean") {
    CentralForm cf{[](double) { return 0.5; }, [](double) { return 0.0; }, {}, {},
                   [K](double t, double s) { return -K(t) / std::sqrt(s); },
                   [K](double t, double s) { return 0.5 * K(t) / (s * std::sqrt(s)); }};
    auto closed = [K, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double r = std::sqrt(v.s);
      return join(v.p, -K(t) * v.q / (r * r * r) + v.cq3);
    };
    auto printed = [K, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      return coeffs3(K(t) / (2.0 * std::pow(v.s, 1.5)), 0.5, 0.0);
    };
    sys = coalgebra_system("kc_euclidean", n, c, central_F(cf), extra, closed, printed);
    sys.conformal = spaces::flat();
  } else if (chart == "poincare") {
    CentralForm cf{[kappa](double s) { return 0.5 * (1.0 + kappa * s) * (1.0 + kappa * s); },
                   [kappa](double s) { return kappa * (1.0 + kappa * s); }, {}, {},
                   [K, kappa](double t, double s) { return -K(t) * (1.0 - kappa * s) / std::sqrt(s); },
                   [K, kappa](double t, double s) { return 0.5 * K(t) * (1.0 + kappa * s) / (s * std::sqrt(s)); }};
    auto closed = [K, kappa, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double k = 1.0 + kappa * v.s, r = std::sqrt(v.s);
      const Vec dq = k * k * v.p;
      const Vec dp = -K(t) * v.q * k / (r * r * r) + v.cq3 * k * k - 2.0 * kappa * v.q * k * v.P;
      return join(dq, dp);
    };
    auto printed = [K, kappa, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double k = 1.0 + kappa * v.s;
      return coeffs3(K(t) * k / (2.0 * std::pow(v.s, 1.5)) + kappa * k * v.hp, 0.5 * k * k, 0.0);
    };
    sys = coalgebra_system("kc_poincare", n, c, central_F(cf), extra, closed, printed);
    sys.conformal = spaces::poincare(kappa);
  } else if (chart == "beltrami") {
    const KineticPair kp = spaces::beltrami(kappa);
    CentralForm cf{kp.A, kp.dA, kp.B, kp.dB, [K](double t, double s) { return -K(t) / std::sqrt(s); },
                   [K](double t, double s) { return 0.5 * K(t) / (s * std::sqrt(s)); }};
    auto closed = [K, kappa, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double k = 1.0 + kappa * v.s, r = std::sqrt(v.s);
      const Vec dq = k * (v.p + kappa * v.qp * v.q);
      const Vec dp = -K(t) * v.q / (r * r * r) + k * (v.cq3 - kappa * v.qp * v.p) -
                     kappa * v.q * (v.P + kappa * v.qp * v.qp);
      return join(dq, dp);
    };
    auto printed = [K, kappa, cv](double t, const PhasePoint& x) {
      const Parts v(x, cv);
      const double k = 1.0 + kappa * v.s;
      return coeffs3(0.5 * (K(t) / std::pow(v.s, 1.5) + kappa * (v.hp + kappa * v.h3 * v.h3)), 0.5 * k,
                     kappa * k * v.h3);
    };
    sys = coalgebra_system("kc_beltrami", n, c, central_F(cf), extra, closed, printed);
  } else {
    throw std::invalid_argument("unknown chart '" + chart + "' (expected euclidean, poincare or beltrami)");
  }
  sys.params.kappa = kappa;
  sys.coefficients["K"] = K;
  sys.box = curved_box(n, kappa);
  return sys;
}

SystemSpec make_taubnut(std::size_t n, double eta, std::vector<double> c, TimeCoefficient K) {
  c = normalized_c(n, std::move(c));
  const Vec cv = to_vec(c);
  // A = r / (2 (eta + r)), V = -K / (eta + r), r = sqrt(s)
  CentralForm cf{[eta](double s) {
                   const double r = std::sqrt(s);
                   return r / (2.0 * (eta + r));
                 },
                 [eta](double s) {
                   const double r = std::sqrt(s);
                   return eta / (4.0 * r * (eta + r) * (eta + r));
                 },
                 {}, {}, [K, eta](double t, double s) { return -K(t) / (eta + std::sqrt(s)); },
                 [K, eta](double t, double s) {
                   const double r = std::sqrt(s);
                   return K(t) / (2.0 * r * (eta + r) * (eta + r));
                 }};
  DomainPredicate extra = [eta](double, const PhasePoint& x) {
    const double r = x.head(config_dim(x)).norm();
    return guarded(r) && eta + r > kDomainMargin;
  };
  auto closed = [K, eta, cv](double t, const PhasePoint& x) {
    const Parts v(x, cv);
    const double r = std::sqrt(v.s), e = eta + r;
    const Vec dq = r * v.p / e;
    const Vec dp = -K(t) * v.q / (r * e * e) + v.cq3 * r / e - eta * v.q * v.P / (2.0 * r * e * e);
    return join(dq, dp);
  };
  auto printed = [K, eta, cv](double t, const PhasePoint& x) {
    const Parts v(x, cv);
    const double r = std::sqrt(v.s), e = eta + r;
    return coeffs3((2.0 * K(t) + eta * v.hp) / (4.0 * r * e * e), r / (2.0 * e), 0.0);
  };
  SystemSpec sys = coalgebra_system("kc_taubnut", n, c, central_F(cf), extra, closed, printed);
  sys.params.eta = eta;
  sys.coefficients["K"] = K;
  sys.conformal = spaces::taubnut(eta);
  if (eta < 0.0) {
    sys.box.qmin = std::max(sys.box.qmin, -eta + 0.1);
    sys.box.qmax = std::max(sys.box.qmax, sys.box.qmin + 1.0);
  }
  return sys;
}

double table_fidelity(const SystemSpec& sys, std::size_t samples, std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& s : sample_points(sys.n(), sys.box, sys.domain, samples, seed)) {
    worst = std::max(worst, componentwise_relative(sys.closed_form(s.t, s.x), sys.vector_field(s.t, s.x)));
  }
  return worst;
}

double decomposition_residual(const SystemSpec& sys, std::size_t samples, std::uint64_t seed) {
  double worst = 0.0;
  const Realization& r = sys.realization;
  for (const auto& s : sample_points(sys.n(), sys.box, sys.domain, samples, seed)) {
    const Vec direct = sys.vector_field(s.t, s.x);
    const Vec b = sys.printed_coefficients(s.t, s.x);
    Vec printed = Vec::Zero(s.x.size());
    for (std::size_t a = 0; a < r.r(); ++a)
      printed += b(static_cast<Eigen::Index>(a)) * hamiltonian_vector_field(r.field(a), s.t, s.x);
    worst = std::max(worst, componentwise_relative(printed, direct));
    worst = std::max(worst, componentwise_relative(sys.composed->decomposition(s.t, s.x), direct));
  }
  return worst;
}

double scalar_curvature(const ConformalFactor& f, std::size_t n, double r) {
  if (r <= 0.0) throw DomainError("scalar curvature needs a positive radius");
  const double v = f.f(r);
  if (v <= 0.0) throw DomainError("conformal factor must be positive");
  const double d1 = f.df ? f.df(r) : richardson_first(f.f, r);
  const double d2 = f.d2f ? f.d2f(r) : richardson_second(f.f, r);
  const double nn = static_cast<double>(n);
  return -(nn - 1.0) * ((nn - 4.0) * d1 * d1 + v * (2.0 * d2 + 2.0 * (nn - 1.0) * d1 / r)) / std::pow(v, 4);
}

double darboux3_curvature_closed_form(double lambda, std::size_t n, double r) {
  const double nn = static_cast<double>(n), k = 1.0 + lambda * r * r;
  return -lambda * (nn - 1.0) * (2.0 * nn + 3.0 * lambda * (nn - 2.0) * r * r) / (k * k * k);
}

double taubnut_curvature_closed_form(double eta, std::size_t n, double r) {
  const double nn = static_cast<double>(n), e = eta + r;
  return eta * (nn - 1.0) * (4.0 * (nn - 3.0) * r + 3.0 * eta * (nn - 2.0)) / (4.0 * r * e * e * e);
}

VectorFieldFn diagonal_prolongation(const SystemSpec& sys, std::size_t N) {
  auto h = sys.composed;
  return diagonal_prolongation([h](double t, const PhasePoint& y) { return hamiltonian_vector_field(h->hamiltonian(), t, y); },
                               sys.n(), N);
}

}  // namespace lieham
