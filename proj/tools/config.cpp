#include "config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lieham::cli {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(what + " must be finite");
  return v;
}

std::vector<double> numbers(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

TimeCoefficient coefficient(const std::string& name, const json& j) {
  if (j.is_number()) return TimeCoefficient::constant(number(j, "coefficient '" + name + "'"));
  if (!j.is_string()) throw ConfigError("coefficient '" + name + "' must be a number or an expression string");
  try {
    return TimeCoefficient::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ConfigError("coefficient '" + name + "': " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  check_keys(j, {"system", "params", "coefficients", "initial", "tspan", "integrator", "invariants", "output", "seed", "sweep"},
             "config");
  RunConfig cfg;
  cfg.raw = j;
  if (!j.contains("system") || !j["system"].is_string()) throw ConfigError("config needs a 'system' string");
  cfg.system = j["system"].get<std::string>();
  try {
    describe_system(cfg.system);
  } catch (const std::out_of_range& e) {
    throw ConfigError(e.what());
  }

  if (j.contains("params")) {
    const json& p = j["params"];
    if (!p.is_object()) throw ConfigError("'params' must be an object");
    check_keys(p, {"n", "c", "kappa", "lambda", "eta", "b", "space", "power"}, "params");
    if (p.contains("n")) {
      if (!p["n"].is_number_integer() || p["n"].get<long long>() < 1) throw ConfigError("params.n must be a positive integer");
      cfg.params.n = p["n"].get<std::size_t>();
    }
    if (p.contains("c")) cfg.params.c = numbers(p["c"], "params.c");
    if (p.contains("kappa")) cfg.params.kappa = number(p["kappa"], "params.kappa");
    if (p.contains("lambda")) cfg.params.lambda = number(p["lambda"], "params.lambda");
    if (p.contains("eta")) cfg.params.eta = number(p["eta"], "params.eta");
    if (p.contains("b")) cfg.params.b = number(p["b"], "params.b");
    if (p.contains("power")) cfg.params.power = number(p["power"], "params.power");
    if (p.contains("space")) {
      if (!p["space"].is_string()) throw ConfigError("params.space must be a string");
      cfg.params.space = p["space"].get<std::string>();
    }
  }
  if (cfg.system == "henon_heiles" || cfg.system.rfind("hh_", 0) == 0) cfg.params.n = 2;
  if (cfg.system == "painleve2") cfg.params.n = 1;
  if (!cfg.params.c.empty() && cfg.params.c.size() != cfg.params.n)
    throw ConfigError("params.c has " + std::to_string(cfg.params.c.size()) + " entries, n = " + std::to_string(cfg.params.n));

  if (j.contains("coefficients")) {
    if (!j["coefficients"].is_object()) throw ConfigError("'coefficients' must be an object");
    for (const auto& [name, value] : j["coefficients"].items()) cfg.coefficients[name] = coefficient(name, value);
  }

  if (!j.contains("initial") || !j["initial"].is_object()) throw ConfigError("config needs an 'initial' object with q and p");
  check_keys(j["initial"], {"q", "p"}, "initial");
  if (!j["initial"].contains("q") || !j["initial"].contains("p")) throw ConfigError("'initial' needs both q and p");
  cfg.q = numbers(j["initial"]["q"], "initial.q");
  cfg.p = numbers(j["initial"]["p"], "initial.p");

  if (j.contains("tspan")) {
    const auto ts = numbers(j["tspan"], "tspan");
    if (ts.size() != 2) throw ConfigError("tspan must be [t0, t1]");
    cfg.t0 = ts[0];
    cfg.t1 = ts[1];
  }

  if (j.contains("integrator")) {
    const json& in = j["integrator"];
    if (!in.is_object()) throw ConfigError("'integrator' must be an object");
    check_keys(in, {"method", "rtol", "atol", "h0", "hmax", "hmin", "max_steps", "stride"}, "integrator");
    auto& ic = cfg.integrator;
    if (in.contains("method")) {
      try {
        ic.method = parse_method(in["method"].get<std::string>());
      } catch (const std::exception& e) {
        throw ConfigError(std::string("integrator.method: ") + e.what());
      }
    }
    if (in.contains("rtol")) ic.rtol = number(in["rtol"], "integrator.rtol");
    if (in.contains("atol")) ic.atol = number(in["atol"], "integrator.atol");
    if (in.contains("h0")) ic.h0 = number(in["h0"], "integrator.h0");
    if (in.contains("hmax")) ic.hmax = number(in["hmax"], "integrator.hmax");
    if (in.contains("hmin")) ic.hmin = number(in["hmin"], "integrator.hmin");
    if (in.contains("h0") && !in.contains("hmax") && ic.h0 > ic.hmax) ic.hmax = ic.h0;
    if (in.contains("max_steps")) {
      if (!in["max_steps"].is_number_integer() || in["max_steps"].get<long long>() < 1)
        throw ConfigError("integrator.max_steps must be a positive integer");
      ic.max_steps = in["max_steps"].get<std::size_t>();
    }
    if (in.contains("stride")) {
      if (!in["stride"].is_number_integer() || in["stride"].get<long long>() < 1)
        throw ConfigError("integrator.stride must be a positive integer");
      ic.stride = in["stride"].get<std::size_t>();
    }
    try {
      ic.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("integrator: ") + e.what());
    }
  }

  if (j.contains("invariants")) {
    if (!j["invariants"].is_array()) throw ConfigError("'invariants' must be an array of names");
    for (const auto& v : j["invariants"]) {
      if (!v.is_string()) throw ConfigError("invariant names must be strings");
      cfg.invariants.push_back(v.get<std::string>());
    }
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("'output' must be a path string");
    cfg.output = j["output"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (!s.is_object()) throw ConfigError("'sweep' must be an object");
    check_keys(s, {"target", "values", "workers", "output"}, "sweep");
    SweepSpec sw;
    if (!s.contains("target") || !s["target"].is_string()) throw ConfigError("sweep needs a 'target' string");
    sw.target = s["target"].get<std::string>();
    if (!s.contains("values")) throw ConfigError("sweep needs 'values'");
    sw.values = numbers(s["values"], "sweep.values");
    if (s.contains("workers")) {
      if (!s["workers"].is_number_unsigned()) throw ConfigError("sweep.workers must be a non-negative integer");
      sw.workers = s["workers"].get<std::size_t>();
    }
    if (s.contains("output")) sw.output = s["output"].get<std::string>();
    cfg.sweep = sw;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

SystemSpec build_configured_system(RunConfig& cfg) {
  SystemSpec sys;
  try {
    sys = build_system(cfg.system, cfg.params, cfg.coefficients);
  } catch (const std::exception& e) {
    throw ConfigError(cfg.system + ": " + e.what());
  }
  if (cfg.q.size() != sys.n() || cfg.p.size() != sys.n())
    throw ConfigError("initial q and p must have " + std::to_string(sys.n()) + " entries for " + cfg.system);
  if (cfg.invariants.empty() && !cfg.raw.contains("invariants")) cfg.invariants = sys.default_invariants();
  for (const auto& name : cfg.invariants) {
    try {
      sys.invariant(name);
    } catch (const std::exception& e) {
      throw ConfigError("invariant '" + name + "': " + e.what());
    }
  }
  return sys;
}

RunConfig apply_sweep_value(const RunConfig& base, const std::string& target, double value) {
  RunConfig cfg = base;
  if (target.rfind("c_", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(target.substr(2));
    } catch (const std::exception&) {
      throw ConfigError("bad sweep target '" + target + "'");
    }
    if (cfg.params.c.empty()) cfg.params.c.assign(cfg.params.n, 0.0);
    if (k < 1 || k > cfg.params.c.size()) throw ConfigError("sweep target '" + target + "' out of range");
    cfg.params.c[k - 1] = value;
  } else if (target == "kappa") {
    cfg.params.kappa = value;
  } else if (target == "lambda") {
    cfg.params.lambda = value;
  } else if (target == "eta") {
    cfg.params.eta = value;
  } else if (target == "b") {
    cfg.params.b = value;
  } else if (target == "power") {
    cfg.params.power = value;
  } else {
    const SystemInfo& info = describe_system(cfg.system);
    auto it = std::find_if(info.coefficients.begin(), info.coefficients.end(),
                           [&](const auto& c) { return c.first == target; });
    if (it == info.coefficients.end())
      throw ConfigError("sweep target '" + target + "' is neither a parameter nor a coefficient of " + cfg.system);
    const TimeCoefficient orig =
        cfg.coefficients.count(target) ? cfg.coefficients.at(target) : TimeCoefficient::parse(it->second);
    std::ostringstream label;
    label.precision(17);
    label << value << "*(" << orig.text() << ")";
    cfg.coefficients[target] = TimeCoefficient::from_function([orig, value](double t) { return value * orig(t); }, label.str());
  }
  return cfg;
}

std::string manifest_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".manifest.json");
  return p.string();
}

}  // namespace lieham::cli
