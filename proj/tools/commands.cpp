#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "lieham/algebra.hpp"
#include "lieham/coalgebra.hpp"

#ifndef LIEHAM_VERSION_STRING
#define LIEHAM_VERSION_STRING "unknown"
#endif

namespace lieham::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kCheckSeed = 20240601;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

int exit_for(IntegrationStatus s) { return s == IntegrationStatus::Completed ? kOk : kDomainViolation; }

// ---- check reporting

struct Row {
  std::string target;
  std::string quantity;
  double value;
  double tol;
  bool ok;
};

class Report {
 public:
  void add(std::string target, std::string quantity, double value, double tol) {
    rows_.push_back({std::move(target), std::move(quantity), value, tol, std::isfinite(value) && value <= tol});
  }
  void fail(std::string target, std::string quantity) {
    rows_.push_back({std::move(target), std::move(quantity), std::nan(""), 0.0, false});
  }
  bool passed() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.ok; });
  }
  void print(std::ostream& out) const {
    std::size_t wt = 6, wq = 8;
    for (const auto& r : rows_) {
      wt = std::max(wt, r.target.size());
      wq = std::max(wq, r.quantity.size());
    }
    out << std::left << std::setw(static_cast<int>(wt + 2)) << "target" << std::setw(static_cast<int>(wq + 2))
        << "quantity" << std::setw(14) << "residual" << std::setw(10) << "tol" << "result\n";
    std::size_t failed = 0;
    for (const auto& r : rows_) {
      char val[32], tol[32];
      std::snprintf(val, sizeof val, "%.3e", r.value);
      std::snprintf(tol, sizeof tol, "%.0e", r.tol);
      out << std::left << std::setw(static_cast<int>(wt + 2)) << r.target << std::setw(static_cast<int>(wq + 2))
          << r.quantity << std::setw(14) << val << std::setw(10) << tol << (r.ok ? "ok" : "FAIL") << "\n";
      if (!r.ok) ++failed;
    }
    out << rows_.size() - failed << "/" << rows_.size() << " checks within tolerance\n";
  }

 private:
  std::vector<Row> rows_;
};

// ---- benchmark parameter sets used by `check realization` and `check tables`

struct Benchmark {
  std::string label;
  std::string system;
  SystemParams params;
  std::map<std::string, std::string> coefficients;
};

SystemParams params_of(std::size_t n, std::vector<double> c) {
  SystemParams p;
  p.n = n;
  p.c = std::move(c);
  return p;
}

std::vector<Benchmark> benchmarks() {
  const std::vector<double> c3{1, 2, 3};
  const std::string w = "1+0.1*sin(t)", K = "1+0.2*cos(t)";
  std::vector<Benchmark> out;
  out.push_back({"sw", "sw", params_of(3, c3), {{"omega2", w}}});
  out.push_back({"ho_sl2", "ho_sl2", params_of(2, {}), {{"omega2", "1+0.2*cos(t)"}}});
  out.push_back({"ho_h4", "ho_h4", params_of(1, {}), {{"omega2", "1+0.2*cos(t)"}}});
  out.push_back({"henon_heiles", "henon_heiles", params_of(2, {}),
                 {{"Omega1", "0.5+0.1*sin(t)"}, {"Omega2", "0.7"}, {"alpha", "1+0.1*cos(t)"}, {"beta", "0.3"}}});
  for (const char* hh : {"hh_sk", "hh_kdv12", "hh_kk"}) out.push_back({hh, hh, params_of(2, {}), {{"omega2", w}, {"alpha", "0.8"}}});
  {
    SystemParams p = params_of(1, {});
    p.b = 0.5;
    out.push_back({"painleve2", "painleve2", p, {}});
  }
  for (const char* space : {"flat", "poincare", "beltrami", "darboux3", "taubnut"}) {
    SystemParams p = params_of(3, c3);
    p.space = space;
    p.kappa = 0.5;
    p.lambda = 1.0;
    p.eta = 1.0;
    out.push_back({std::string("central[") + space + "]", "central", p, {{"U0", "0.5+0.1*sin(t)"}}});
  }
  for (double kappa : {0.5, -0.5}) {
    const std::string tag = kappa > 0 ? "[kappa=0.5]" : "[kappa=-0.5]";
    for (const char* sys : {"osc_poincare", "osc_beltrami"}) {
      SystemParams p = params_of(3, c3);
      p.kappa = kappa;
      out.push_back({sys + tag, sys, p, {{"omega2", w}}});
    }
    for (const char* sys : {"kc_poincare", "kc_beltrami"}) {
      SystemParams p = params_of(3, c3);
      p.kappa = kappa;
      out.push_back({sys + tag, sys, p, {{"K", K}}});
    }
  }
  for (double lambda : {1.0, -0.5}) {
    SystemParams p = params_of(3, c3);
    p.lambda = lambda;
    out.push_back({lambda > 0 ? "darboux3[lambda=1]" : "darboux3[lambda=-0.5]", "darboux3", p, {{"omega2", w}}});
  }
  out.push_back({"kc_euclidean", "kc_euclidean", params_of(3, c3), {{"K", K}}});
  {
    SystemParams p = params_of(3, c3);
    p.eta = 1.0;
    out.push_back({"kc_taubnut", "kc_taubnut", p, {{"K", K}}});
  }
  return out;
}

SystemSpec build_benchmark(const Benchmark& b) {
  Coefficients k;
  for (const auto& [name, text] : b.coefficients) k[name] = TimeCoefficient::parse(text);
  return build_system(b.system, b.params, k);
}

void check_algebra(const std::string& name, Report& report) {
  const auto alg = algebras::by_name(name);
  const ValidationReport v = validate_structure(*alg);
  report.add("algebra " + name, "jacobi", to_double(v.worst_residual), 0.0);
  const auto cs = algebras::casimirs(name);
  for (std::size_t k = 0; k < cs.size(); ++k)
    report.add("algebra " + name, "casimir C_" + std::to_string(k + 1), to_double(casimir_check(*alg, cs[k])), 0.0);
}

void check_realization(const Benchmark& b, Report& report) {
  const SystemSpec sys = build_benchmark(b);
  const std::string target = "realization " + b.label;
  report.add(target, "bracket", verify_realization(sys.realization, sys.box, 100, kCheckSeed), kRealizationTol);
  double grad = 0.0;
  for (const auto& s : sample_points(sys.n(), sys.box, sys.domain, 20, substream_seed(kCheckSeed, 1))) {
    grad = std::max(grad, grad_check(sys.hamiltonian(), s.x, s.t));
    for (const auto& f : sys.realization.fields()) grad = std::max(grad, grad_check(f, s.x, s.t));
  }
  report.add(target, "gradient", grad, kGradientTol);
}

void check_tables(Report& report) {
  for (const auto& b : benchmarks()) {
    const SystemSpec sys = build_benchmark(b);
    report.add("table " + b.label, "equations of motion", table_fidelity(sys, 50, kCheckSeed), kTableTol);
    report.add("table " + b.label, "decomposition", decomposition_residual(sys, 50, kCheckSeed), kTableTol);
  }
  for (double kappa : {1.0, -1.0, 0.5, -0.5}) {
    const double rmax = kappa < 0 ? 1.0 / std::sqrt(-kappa) : 2.0;
    for (std::size_t n : {2, 3, 4}) {
      double worst = 0.0;
      const double expected = static_cast<double>(n * (n - 1)) * kappa;
      for (int k = 1; k <= 10; ++k) {
        const double r = 0.9 * rmax * k / 10.0;
        worst = std::max(worst, std::abs(scalar_curvature(spaces::poincare_metric(kappa), n, r) - expected));
      }
      std::ostringstream label;
      label << "curvature poincare[n=" << n << ",kappa=" << kappa << "]";
      report.add(label.str(), "n(n-1)kappa", worst, kCurvatureTol);
    }
  }
  for (double lambda : {1.0, 0.5, -0.5}) {
    const double rmax = lambda < 0 ? 1.0 / std::sqrt(-lambda) : 2.0;
    for (std::size_t n : {2, 3, 4}) {
      double worst = 0.0;
      for (int k = 1; k <= 10; ++k) {
        const double r = 0.9 * rmax * k / 10.0;
        worst = std::max(worst, std::abs(scalar_curvature(spaces::darboux3(lambda), n, r) -
                                         darboux3_curvature_closed_form(lambda, n, r)));
      }
      std::ostringstream label;
      label << "curvature darboux3[n=" << n << ",lambda=" << lambda << "]";
      report.add(label.str(), "closed form", worst, kCurvatureTol);
    }
  }
  for (double eta : {1.0, 0.5, 2.0}) {
    for (std::size_t n : {2, 3, 4}) {
      double worst = 0.0;
      for (int k = 1; k <= 10; ++k) {
        const double r = 0.2 * k;
        worst = std::max(worst, std::abs(scalar_curvature(spaces::taubnut(eta), n, r) -
                                         taubnut_curvature_closed_form(eta, n, r)));
      }
      std::ostringstream label;
      label << "curvature taubnut[n=" << n << ",eta=" << eta << "]";
      report.add(label.str(), "closed form", worst, kCurvatureTol);
    }
  }
}

void check_invariants(const std::string& label, RunConfig cfg, Report& report) {
  const SystemSpec sys = build_configured_system(cfg);
  const SimulationOutcome run = run_simulation(cfg, sys);
  const std::string target = "invariants " + label;
  if (run.trajectory.status != IntegrationStatus::Completed) report.fail(target, to_string(run.trajectory.status));
  for (std::size_t k = 0; k < run.invariants.names.size(); ++k)
    report.add(target, "drift " + run.invariants.names[k], run.invariants.drift[k], kDriftTol);
  if (sys.coalgebra) {
    // Left and right chains are each in involution; mixed pairs need not be.
    const std::string total = "I_" + std::to_string(sys.coalgebra->copies());
    std::vector<InvariantField> left, right, other;
    for (const auto& name : cfg.invariants) {
      if (name.rfind("C_", 0) == 0) continue;
      InvariantField f = invariant_by_name(*sys.coalgebra, sys.coalgebra_casimir, name);
      if (name.rfind("I_L_", 0) == 0 || name == total) left.push_back(f);
      if (name.rfind("I_R_", 0) == 0 || name == total) right.push_back(f);
      if (name.rfind("S_", 0) == 0) other.push_back(f);
    }
    double worst = 0.0;
    for (const auto* group : {&left, &right}) {
      if (!group->empty()) worst = std::max(worst, involution_report(*group, *sys.coalgebra, sys.box, 100, kCheckSeed));
    }
    for (const auto& f : other) worst = std::max(worst, involution_report({f}, *sys.coalgebra, sys.box, 100, kCheckSeed));
    if (!left.empty() || !right.empty() || !other.empty()) report.add(target, "involution", worst, kInvolutionTol);
  }
}

RunConfig sw_benchmark_config() {
  return parse_config(json::parse(R"json({
    "system": "sw",
    "params": {"n": 3, "c": [1, 2, 3]},
    "coefficients": {"omega2": "1+0.1*sin(t)"},
    "initial": {"q": [1, 1, 1], "p": [0.3, -0.2, 0.1]},
    "tspan": [0, 20],
    "integrator": {"method": "dp54_adaptive", "rtol": 1e-10, "atol": 1e-10}
  })json"));
}

std::string param_schema(const std::string& p) {
  if (p == "n") return "n (integer >= 1)";
  if (p == "c") return "c (array of n reals)";
  return p;
}

}  // namespace

SimulationOutcome run_simulation(const RunConfig& cfg, const SystemSpec& sys) {
  const Eigen::VectorXd q = Eigen::Map<const Eigen::VectorXd>(cfg.q.data(), static_cast<Eigen::Index>(cfg.q.size()));
  const Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(cfg.p.data(), static_cast<Eigen::Index>(cfg.p.size()));
  SimulationOutcome run;
  run.trajectory = integrate(sys, make_point(q, p), cfg.t0, cfg.t1, cfg.integrator);
  std::vector<NamedField> fields;
  for (const auto& name : cfg.invariants) fields.push_back({name, sys.invariant(name)});
  run.invariants = monitor_invariants(run.trajectory, fields);
  for (std::size_t i = 0; i < run.trajectory.size(); ++i)
    run.energy.push_back(sys.hamiltonian().value(run.trajectory.t[i], run.trajectory.x[i]));
  return run;
}

std::string trajectory_csv(const SimulationOutcome& run, std::size_t n) {
  std::string s = "t";
  for (std::size_t i = 1; i <= n; ++i) s += ",q" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) s += ",p" + std::to_string(i);
  s += ",H";
  for (const auto& name : run.invariants.names) s += "," + name;
  s += "\n";
  const Trajectory& tr = run.trajectory;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    s += fmt17(tr.t[i]);
    for (Eigen::Index k = 0; k < tr.x[i].size(); ++k) s += "," + fmt17(tr.x[i](k));
    s += "," + fmt17(run.energy[i]);
    for (const auto& vals : run.invariants.values) s += "," + fmt17(vals[i]);
    s += "\n";
  }
  return s;
}

int cmd_list(std::ostream& out) {
  for (const auto& name : system_names()) {
    const SystemInfo& info = describe_system(name);
    out << std::left << std::setw(14) << name << " params: ";
    if (info.params.empty()) out << "-";
    for (std::size_t i = 0; i < info.params.size(); ++i) out << (i ? ", " : "") << info.params[i];
    out << "; coefficients: ";
    if (info.coefficients.empty()) out << "-";
    for (std::size_t i = 0; i < info.coefficients.size(); ++i) out << (i ? ", " : "") << info.coefficients[i].first;
    out << "\n";
  }
  return kOk;
}

int cmd_describe(const std::string& name, std::ostream& out, std::ostream& err) {
  try {
    const SystemInfo& info = describe_system(name);
    out << info.name << ": " << info.summary << "\n";
    out << "algebra: " << info.algebra << "\n";
    out << "params:\n";
    if (info.params.empty()) out << "  (none)\n";
    for (const auto& p : info.params) out << "  " << param_schema(p) << "\n";
    out << "coefficients (t-expressions, default in brackets):\n";
    if (info.coefficients.empty()) out << "  (none)\n";
    for (const auto& [k, def] : info.coefficients) out << "  " << k << " [" << def << "]\n";
    return kOk;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

int cmd_simulate(const std::string& config_path, const std::optional<std::string>& output, std::ostream& out,
                 std::ostream& err) {
  RunConfig cfg;
  SystemSpec sys;
  try {
    cfg = load_config(config_path);
    if (output) cfg.output = *output;
    sys = build_configured_system(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  const SimulationOutcome run = run_simulation(cfg, sys);
  if (!write_file(cfg.output, trajectory_csv(run, sys.n()), err)) return kConfigError;

  const Trajectory& tr = run.trajectory;
  json manifest;
  manifest["version"] = LIEHAM_VERSION_STRING;
  manifest["config"] = cfg.raw;
  manifest["output"] = cfg.output;
  manifest["status"] = to_string(tr.status);
  manifest["status_time"] = tr.status_time;
  manifest["samples"] = tr.size();
  manifest["accepted_steps"] = tr.accepted_steps;
  manifest["rejected_steps"] = tr.rejected_steps;
  manifest["rhs_evaluations"] = tr.rhs_evaluations;
  json drift = json::object();
  for (std::size_t k = 0; k < run.invariants.names.size(); ++k) drift[run.invariants.names[k]] = run.invariants.drift[k];
  manifest["invariant_drift"] = drift;
  const std::string mpath = manifest_path(cfg.output);
  if (!write_file(mpath, manifest.dump(2) + "\n", err)) return kConfigError;

  out << "status: " << to_string(tr.status) << " at t = " << fmt17(tr.status_time) << "\n";
  out << "samples: " << tr.size() << ", accepted steps: " << tr.accepted_steps << ", rejected: " << tr.rejected_steps
      << "\n";
  for (std::size_t k = 0; k < run.invariants.names.size(); ++k)
    out << "drift " << run.invariants.names[k] << ": " << fmt17(run.invariants.drift[k]) << "\n";
  out << "wrote " << cfg.output << " and " << mpath << "\n";
  return exit_for(tr.status);
}

int cmd_check(const std::string& target, const std::optional<std::string>& arg, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    if (target == "algebra") {
      if (!arg) throw ConfigError("check algebra needs an algebra name");
      check_algebra(*arg, report);
    } else if (target == "realization") {
      if (!arg) throw ConfigError("check realization needs a system name");
      describe_system(*arg);
      for (const auto& b : benchmarks()) {
        if (b.system == *arg) check_realization(b, report);
      }
    } else if (target == "invariants") {
      if (!arg) throw ConfigError("check invariants needs a config path");
      check_invariants(*arg, load_config(*arg), report);
    } else if (target == "tables") {
      check_tables(report);
    } else if (target == "all") {
      for (const auto& name : algebras::names()) check_algebra(name, report);
      std::set<std::string> seen;
      for (const auto& b : benchmarks()) {
        if (seen.insert(b.label).second) check_realization(b, report);
      }
      check_tables(report);
      check_invariants("sw-benchmark", sw_benchmark_config(), report);
    } else {
      throw ConfigError("unknown check target '" + target + "' (algebra, realization, invariants, tables, all)");
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  report.print(out);
  return report.passed() ? kOk : kVerificationFailed;
}

int cmd_sweep(const std::string& config_path, const std::optional<std::size_t>& workers,
              const std::optional<std::string>& output, std::ostream& out, std::ostream& err) {
  RunConfig base;
  std::vector<RunConfig> jobs;
  std::vector<SystemSpec> systems;
  try {
    base = load_config(config_path);
    if (!base.sweep) throw ConfigError("config has no 'sweep' block");
    if (base.sweep->values.empty()) throw ConfigError("sweep.values is empty");
    build_configured_system(base);
    for (double v : base.sweep->values) {
      jobs.push_back(apply_sweep_value(base, base.sweep->target, v));
      systems.push_back(build_configured_system(jobs.back()));
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  const std::size_t count = jobs.size();
  std::vector<std::string> rows(count);
  std::vector<std::string> names = jobs.front().invariants;
  auto run_job = [&](std::size_t i) {
    std::string row = std::to_string(i) + "," + fmt17(base.sweep->values[i]);
    try {
      const SimulationOutcome run = run_simulation(jobs[i], systems[i]);
      row += "," + to_string(run.trajectory.status);
      for (double d : run.invariants.drift) row += "," + fmt17(run.trajectory.empty() ? std::nan("") : d);
    } catch (const std::exception&) {
      row += ",error";
      for (std::size_t k = 0; k < names.size(); ++k) row += ",nan";
    }
    rows[i] = row;
  };

  std::size_t pool = workers.value_or(base.sweep->workers);
  if (pool == 0) pool = std::max(1u, std::thread::hardware_concurrency());
  pool = std::min(pool, count);
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < pool; ++w) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) run_job(i);
      });
    }
  }

  std::string csv = "index,value,status";
  for (const auto& name : names) csv += ",drift_" + name;
  csv += "\n";
  for (const auto& row : rows) csv += row + "\n";
  const std::string path = output.value_or(base.sweep->output);
  if (!write_file(path, csv, err)) return kConfigError;
  out << "wrote " << count << " rows to " << path << " using " << pool << " workers\n";
  return kOk;
}

}  // namespace lieham::cli
