#include "lieham/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "lieham/finite_difference.hpp"

namespace lieham {

std::string to_string(IntegrationStatus s) {
  switch (s) {
    case IntegrationStatus::Completed: return "completed";
    case IntegrationStatus::DomainViolation: return "domain_violation";
    case IntegrationStatus::StepUnderflow: return "step_underflow";
    case IntegrationStatus::MaxSteps: return "max_steps";
  }
  return "unknown";
}

std::string to_string(Method m) { return m == Method::RK4Fixed ? "rk4_fixed" : "dp54_adaptive"; }

Method parse_method(const std::string& s) {
  if (s == "rk4_fixed" || s == "rk4") return Method::RK4Fixed;
  if (s == "dp54_adaptive" || s == "dp54") return Method::DP54Adaptive;
  throw std::invalid_argument("unknown integration method '" + s + "'");
}

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw std::invalid_argument("rtol and atol must be positive");
  if (!(hmin > 0.0) || !(hmin <= h0) || !(h0 <= hmax)) throw std::invalid_argument("need 0 < hmin <= h0 <= hmax");
  if (stride == 0) throw std::invalid_argument("stride must be at least 1");
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
}

namespace {

using Vec = Eigen::VectorXd;

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (difference between the 5th and embedded 4th order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

/// Evaluates the field, reporting failure instead of throwing when the
/// point is outside the domain or the result is not finite.
class SafeField {
 public:
  explicit SafeField(const OdeProblem& p, Trajectory& traj) : p_(p), traj_(traj) {}

  bool operator()(double t, const Vec& x, Vec& out) {
    if (!x.allFinite()) return false;
    if (p_.domain && !p_.domain(t, x)) return false;
    ++traj_.rhs_evaluations;
    try {
      out = p_.rhs(t, x);
    } catch (const DomainError&) {
      return false;
    } catch (const SingularOperation&) {
      return false;
    }
    return out.allFinite();
  }

 private:
  const OdeProblem& p_;
  Trajectory& traj_;
};

void record(Trajectory& traj, double t, const Vec& x) {
  traj.t.push_back(t);
  traj.x.push_back(x);
}

Trajectory run_dp54(const OdeProblem& problem, const Vec& x0, double t0, double t1, const IntegratorConfig& cfg) {
  Trajectory traj;
  SafeField f(problem, traj);
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0;
  Vec x = x0;
  Vec k1, k2, k3, k4, k5, k6, k7;
  if (!f(t, x, k1)) {
    traj.status = IntegrationStatus::DomainViolation;
    traj.status_time = t0;
    return traj;
  }
  record(traj, t, x);
  double h = std::min(cfg.h0, cfg.hmax);
  std::size_t since_record = 0;
  bool last_recorded = true;

  while (dir * (t1 - t) > 0.0) {
    if (traj.accepted_steps >= cfg.max_steps) {
      traj.status = IntegrationStatus::MaxSteps;
      break;
    }
    const double remaining = std::abs(t1 - t);
    const bool final_step = h >= remaining;
    const double step = final_step ? remaining : h;
    const double hs = dir * step;

    bool ok = f(t + c2 * hs, x + hs * (a21 * k1), k2) &&
              f(t + c3 * hs, x + hs * (a31 * k1 + a32 * k2), k3) &&
              f(t + c4 * hs, x + hs * (a41 * k1 + a42 * k2 + a43 * k3), k4) &&
              f(t + c5 * hs, x + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5) &&
              f(t + hs, x + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
    Vec xn;
    if (ok) {
      xn = x + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      ok = f(t + hs, xn, k7);
    }
    if (!ok) {
      ++traj.rejected_steps;
      h = 0.5 * step;
      if (h < cfg.hmin) {
        traj.status = IntegrationStatus::DomainViolation;
        traj.status_time = t;
        break;
      }
      continue;
    }

    const Vec err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double ratio = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double scale = cfg.atol + cfg.rtol * std::max(std::abs(x(i)), std::abs(xn(i)));
      ratio = std::max(ratio, std::abs(err(i)) / scale);
    }
    const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    if (ratio > 1.0) {
      ++traj.rejected_steps;
      h = step * factor;
      if (h < cfg.hmin) {
        traj.status = IntegrationStatus::StepUnderflow;
        traj.status_time = t;
        break;
      }
      continue;
    }

    ++traj.accepted_steps;
    t = final_step ? t1 : t + hs;
    x = std::move(xn);
    k1 = k7;  // first-same-as-last
    last_recorded = false;
    if (++since_record >= cfg.stride) {
      record(traj, t, x);
      since_record = 0;
      last_recorded = true;
    }
    // a clamped final step says nothing about the natural step size
    if (!final_step) h = std::min(step * factor, cfg.hmax);
  }
  if (!last_recorded) record(traj, t, x);
  if (traj.status == IntegrationStatus::Completed || traj.status == IntegrationStatus::MaxSteps) traj.status_time = t;
  return traj;
}

Trajectory run_rk4(const OdeProblem& problem, const Vec& x0, double t0, double t1, const IntegratorConfig& cfg) {
  Trajectory traj;
  SafeField f(problem, traj);
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0;
  Vec x = x0;
  Vec k1, k2, k3, k4;
  if (!f(t, x, k1)) {
    traj.status = IntegrationStatus::DomainViolation;
    traj.status_time = t0;
    return traj;
  }
  record(traj, t, x);
  double h = cfg.h0;
  // fixed steps land on t1 exactly when h0 divides the span
  const double span = std::abs(t1 - t0);
  const double nsteps = std::round(span / h);
  if (nsteps > 0 && std::abs(nsteps * h - span) <= 1e-9 * span) h = span / nsteps;
  // times are t0 + k h until a failed step halves h, so the grid does not drift
  const double h_grid = h;
  std::size_t on_grid = 0;
  bool gridded = true;
  std::size_t since_record = 0;
  bool last_recorded = true;

  while (dir * (t1 - t) > 0.0) {
    if (traj.accepted_steps >= cfg.max_steps) {
      traj.status = IntegrationStatus::MaxSteps;
      break;
    }
    const double remaining = std::abs(t1 - t);
    const bool final_step = remaining <= h * (1.0 + 1e-9);
    const double hs = dir * (final_step ? remaining : h);
    Vec xn, probe;
    bool ok = f(t + 0.5 * hs, x + 0.5 * hs * k1, k2) && f(t + 0.5 * hs, x + 0.5 * hs * k2, k3) &&
              f(t + hs, x + hs * k3, k4);
    if (ok) {
      xn = x + hs / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ok = f(t + hs, xn, probe);
    }
    if (!ok) {
      ++traj.rejected_steps;
      h *= 0.5;
      gridded = false;
      if (h < cfg.hmin) {
        traj.status = IntegrationStatus::DomainViolation;
        traj.status_time = t;
        break;
      }
      continue;
    }
    ++traj.accepted_steps;
    ++on_grid;
    t = final_step ? t1 : (gridded ? t0 + dir * static_cast<double>(on_grid) * h_grid : t + hs);
    x = std::move(xn);
    k1 = std::move(probe);
    last_recorded = false;
    if (++since_record >= cfg.stride) {
      record(traj, t, x);
      since_record = 0;
      last_recorded = true;
    }
  }
  if (!last_recorded) record(traj, t, x);
  if (traj.status == IntegrationStatus::Completed || traj.status == IntegrationStatus::MaxSteps) traj.status_time = t;
  return traj;
}

}  // namespace

Trajectory integrate(const OdeProblem& problem, const Vec& x0, double t0, double t1, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!problem.rhs) throw std::invalid_argument("problem has no right-hand side");
  if (t1 == t0) {
    Trajectory traj;
    if (!x0.allFinite() || (problem.domain && !problem.domain(t0, x0))) {
      traj.status = IntegrationStatus::DomainViolation;
    } else {
      record(traj, t0, x0);
    }
    traj.status_time = t0;
    return traj;
  }
  return cfg.method == Method::RK4Fixed ? run_rk4(problem, x0, t0, t1, cfg) : run_dp54(problem, x0, t0, t1, cfg);
}

Trajectory integrate(const SystemSpec& sys, const PhasePoint& x0, double t0, double t1, const IntegratorConfig& cfg) {
  if (static_cast<std::size_t>(x0.size()) != 2 * sys.n())
    throw DimensionError("initial point has dimension " + std::to_string(x0.size()) + ", system needs " +
                         std::to_string(2 * sys.n()));
  const ScalarField& h = sys.hamiltonian();
  OdeProblem problem{[&h](double t, const Vec& x) { return symplectic_gradient(h.gradient_unchecked(t, x)); },
                     sys.domain};
  return integrate(problem, x0, t0, t1, cfg);
}

InvariantSeries monitor_invariants(const Trajectory& traj, const std::vector<NamedField>& fields) {
  InvariantSeries out;
  for (const auto& nf : fields) {
    out.names.push_back(nf.name);
    std::vector<double> vals;
    vals.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) vals.push_back(nf.field.value(traj.t[i], traj.x[i]));
    double drift = 0.0;
    if (!vals.empty()) {
      const double scale = std::max(1.0, std::abs(vals.front()));
      for (double v : vals) drift = std::max(drift, std::abs(v - vals.front()) / scale);
    }
    out.values.push_back(std::move(vals));
    out.drift.push_back(drift);
  }
  return out;
}

double residual_ode_check(const Trajectory& traj, const SecondOrderForm& form, std::size_t component) {
  if (traj.size() < 5) throw std::invalid_argument("residual check needs at least 5 samples");
  const auto c = static_cast<Eigen::Index>(component);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < traj.size(); ++i) {
    std::vector<double> nodes;
    for (std::size_t k = i - 2; k <= i + 2; ++k) nodes.push_back(traj.t[k]);
    const Eigen::MatrixXd w = fd_weights(traj.t[i], nodes, 2);
    double ydd = 0.0;
    for (std::size_t s = 0; s < 5; ++s) ydd += w(static_cast<Eigen::Index>(s), 2) * traj.x[i - 2 + s](c);
    worst = std::max(worst, std::abs(ydd - form(traj.t[i], traj.x[i](c))));
  }
  return worst;
}

}  // namespace lieham
