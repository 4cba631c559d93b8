#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lieham/catalog.hpp"

namespace lieham {

namespace {

const std::vector<SystemInfo>& registry() {
  static const std::vector<SystemInfo> infos = {
      {"sw", "Smorodinsky-Winternitz oscillator: h = h_+/2 + omega2(t) h_-/2", "sl2_coalg", {"n", "c"},
       {{"omega2", "1"}}},
      {"ho_sl2", "isotropic oscillator h = h3 + omega2(t) h1 on the sl2_sw realization", "sl2_sw", {"n"},
       {{"omega2", "1"}}},
      {"ho_h4", "oscillator h = h2^2/2 + omega2(t) h1^2/2 on the h4 realization (n = 1)", "h4", {},
       {{"omega2", "1"}}},
      {"henon_heiles", "generic Henon-Heiles: (h1 + h4^2)/2 + Omega1 h2 + Omega2 h5^2 + alpha (h2 h5 + beta h5^3)",
       "sl2+h3", {}, {{"Omega1", "0.5"}, {"Omega2", "0.5"}, {"alpha", "1"}, {"beta", "1"}}},
      {"hh_sk", "Henon-Heiles, Sawada-Kotera case (beta = 1/3, Omega1 = Omega2 = omega2/2)", "sl2+h3", {},
       {{"omega2", "1"}, {"alpha", "1"}}},
      {"hh_kdv12", "Henon-Heiles, KdV 1:2 case (beta = 2, Omega1 = omega2/2, Omega2 = 2 omega2)", "sl2+h3", {},
       {{"omega2", "1"}, {"alpha", "1"}}},
      {"hh_kk", "Henon-Heiles, Kaup-Kupershmidt case (beta = 16/3, Omega1 = omega2/2, Omega2 = 8 omega2)", "sl2+h3",
       {}, {{"omega2", "1"}, {"alpha", "1"}}},
      {"painleve2", "Painleve II: h = p (p - 2 q^2 - t)/2 - b q on the Heisenberg realization", "h3", {"b"}, {}},
      {"central", "central potential U0(t) r^power on a conformally flat or Beltrami space", "sl2_coalg",
       {"n", "c", "space (flat|poincare|darboux3|taubnut|beltrami)", "kappa", "lambda", "eta", "power"},
       {{"U0", "0.5"}}},
      {"osc_poincare", "curved oscillator in Poincare coordinates", "sl2_coalg", {"n", "c", "kappa"},
       {{"omega2", "1"}}},
      {"osc_beltrami", "curved oscillator in Beltrami coordinates", "sl2_coalg", {"n", "c", "kappa"},
       {{"omega2", "1"}}},
      {"darboux3", "Darboux III oscillator", "sl2_coalg", {"n", "c", "lambda"}, {{"omega2", "1"}}},
      {"kc_euclidean", "Kepler-Coulomb in Euclidean space", "sl2_coalg", {"n", "c"}, {{"K", "1"}}},
      {"kc_poincare", "Kepler-Coulomb in Poincare coordinates", "sl2_coalg", {"n", "c", "kappa"}, {{"K", "1"}}},
      {"kc_beltrami", "Kepler-Coulomb in Beltrami coordinates", "sl2_coalg", {"n", "c", "kappa"}, {{"K", "1"}}},
      {"kc_taubnut", "Kepler-Coulomb on the Taub-NUT space", "sl2_coalg", {"n", "c", "eta"}, {{"K", "1"}}},
  };
  return infos;
}

Coefficients resolve(const SystemInfo& info, const Coefficients& given) {
  Coefficients out;
  for (const auto& [name, def] : info.coefficients) {
    auto it = given.find(name);
    out[name] = it != given.end() ? it->second : TimeCoefficient::parse(def);
  }
  for (const auto& [name, value] : given) {
    if (!out.count(name)) throw std::invalid_argument("system " + info.name + " has no coefficient '" + name + "'");
  }
  return out;
}

SystemSpec build_central(const SystemParams& p, const Coefficients& k) {
  CurvedSpaceSpec space;
  if (p.space == "flat") {
    space.conformal = spaces::flat();
  } else if (p.space == "poincare") {
    space.conformal = spaces::poincare(p.kappa);
  } else if (p.space == "darboux3") {
    space.conformal = spaces::darboux3(p.lambda);
  } else if (p.space == "taubnut") {
    space.conformal = spaces::taubnut(p.eta);
  } else if (p.space == "beltrami") {
    space.kinetic = spaces::beltrami(p.kappa);
  } else {
    throw std::invalid_argument("unknown space '" + p.space + "'");
  }
  const TimeCoefficient U0 = k.at("U0");
  const double power = p.power;
  RadialPotential U{[U0, power](double t, double r) { return U0(t) * std::pow(r, power); },
                    [U0, power](double t, double r) { return power * U0(t) * std::pow(r, power - 1.0); }};
  SystemSpec sys = make_central(p.n, p.c, space, U);
  sys.params = p;
  if (sys.params.c.empty()) sys.params.c.assign(p.n, 0.0);
  sys.coefficients = k;
  if (p.kappa != 0.0 && (p.space == "poincare" || p.space == "beltrami")) {
    const double qmax = std::sqrt(0.5 / (std::abs(p.kappa) * static_cast<double>(p.n)));
    sys.box.qmax = std::min(sys.box.qmax, qmax);
    sys.box.qmin = 0.15 * sys.box.qmax;
  }
  return sys;
}

}  // namespace

std::vector<std::string> system_names() {
  std::vector<std::string> out;
  for (const auto& info : registry()) out.push_back(info.name);
  return out;
}

const SystemInfo& describe_system(const std::string& name) {
  for (const auto& info : registry()) {
    if (info.name == name) return info;
  }
  throw std::out_of_range("unknown system '" + name + "'");
}

SystemSpec build_system(const std::string& name, const SystemParams& params, const Coefficients& coefficients) {
  const SystemInfo& info = describe_system(name);
  const Coefficients k = resolve(info, coefficients);
  const SystemParams& p = params;
  if (name == "sw") return make_sw(p.n, p.c, k.at("omega2"));
  if (name == "ho_sl2") return make_ho_sl2(p.n, k.at("omega2"));
  if (name == "ho_h4") return make_ho_h4(k.at("omega2"), p.n);
  if (name == "henon_heiles") return make_henon_heiles(k.at("Omega1"), k.at("Omega2"), k.at("alpha"), k.at("beta"));
  if (name == "hh_sk") return make_henon_heiles_preset(HenonHeilesPreset::SawadaKotera, k.at("omega2"), k.at("alpha"));
  if (name == "hh_kdv12") return make_henon_heiles_preset(HenonHeilesPreset::KdV12, k.at("omega2"), k.at("alpha"));
  if (name == "hh_kk") return make_henon_heiles_preset(HenonHeilesPreset::KaupKupershmidt, k.at("omega2"), k.at("alpha"));
  if (name == "painleve2") return make_painleve2(p.b);
  if (name == "central") return build_central(p, k);
  if (name == "osc_poincare") return make_curved_oscillator("poincare", p.n, p.kappa, p.c, k.at("omega2"));
  if (name == "osc_beltrami") return make_curved_oscillator("beltrami", p.n, p.kappa, p.c, k.at("omega2"));
  if (name == "darboux3") return make_darboux3(p.n, p.lambda, p.c, k.at("omega2"));
  if (name == "kc_euclidean") return make_kc("euclidean", p.n, 0.0, p.c, k.at("K"));
  if (name == "kc_poincare") return make_kc("poincare", p.n, p.kappa, p.c, k.at("K"));
  if (name == "kc_beltrami") return make_kc("beltrami", p.n, p.kappa, p.c, k.at("K"));
  if (name == "kc_taubnut") return make_taubnut(p.n, p.eta, p.c, k.at("K"));
  throw std::out_of_range("unknown system '" + name + "'");
}

}  // namespace lieham
