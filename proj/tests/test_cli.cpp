#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "support.hpp"

using namespace lieham;
using namespace lieham::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lieham_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json sw_config(const fs::path& out) {
  json j = json::parse(R"json({
    "system": "sw",
    "params": {"n": 3, "c": [1, 2, 3]},
    "coefficients": {"omega2": "1+0.1*sin(t)"},
    "initial": {"q": [1, 1, 1], "p": [0.3, -0.2, 0.1]},
    "tspan": [0, 20],
    "integrator": {"method": "dp54_adaptive", "rtol": 1e-10, "atol": 1e-10},
    "seed": 3
  })json");
  j["output"] = out.string();
  return j;
}

fs::path write_config(const std::string& name, const json& j) {
  const fs::path p = scratch(name);
  std::ofstream(p) << j.dump(2);
  return p;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

struct Run {
  int code;
  std::string out, err;
};

Run simulate(const fs::path& cfg) {
  std::ostringstream out, err;
  const int code = cmd_simulate(cfg.string(), std::nullopt, out, err);
  return {code, out.str(), err.str()};
}

Run check(const std::string& target, std::optional<std::string> arg = std::nullopt) {
  std::ostringstream out, err;
  const int code = cmd_check(target, arg, out, err);
  return {code, out.str(), err.str()};
}

Run sweep(const fs::path& cfg, std::optional<std::size_t> workers, const fs::path& out_csv) {
  std::ostringstream out, err;
  const int code = cmd_sweep(cfg.string(), workers, out_csv.string(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config validation") {
    const json base = sw_config(scratch("unused.csv"));
    CHECK_NOTHROW(parse_config(base));

    json j = base;
    j.erase("system");
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base;
    j["system"] = "nosuch";
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base;
    j["colour"] = "blue";
    CHECK_THROWS_WITH_AS(parse_config(j), "unknown key 'colour' in config", ConfigError);
    j = base;
    j["coefficients"]["omega2"] = "sin(";
    CHECK_THROWS_WITH_AS(parse_config(j), "coefficient 'omega2': expected ')' at 1:5", ConfigError);
    j = base;
    j["integrator"]["method"] = "euler";
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base;
    j["tspan"] = json::array({0});
    CHECK_THROWS_AS(parse_config(j), ConfigError);
    j = base;
    j["params"]["c"] = json::array({1, 2});
    CHECK_THROWS_AS(parse_config(j), ConfigError);

    j = base;
    j["initial"]["q"] = json::array({1, 1});
    RunConfig cfg = parse_config(j);
    CHECK_THROWS_AS(build_configured_system(cfg), ConfigError);
    j = base;
    j["invariants"] = json::array({"I_L_2", "I_L_7"});
    cfg = parse_config(j);
    CHECK_THROWS_AS(build_configured_system(cfg), ConfigError);
    j = base;
    j["coefficients"]["K"] = "1";
    cfg = parse_config(j);
    CHECK_THROWS_AS(build_configured_system(cfg), ConfigError);

    cfg = parse_config(base);
    build_configured_system(cfg);
    CHECK(cfg.invariants == std::vector<std::string>{"I_L_2", "I_R_2", "I_3"});
    CHECK_THROWS_AS(load_config(scratch("missing.json").string()), ConfigError);
  }

  TEST_CASE("sweep targets") {
    RunConfig cfg = parse_config(sw_config(scratch("unused.csv")));
    CHECK(apply_sweep_value(cfg, "c_2", 7.5).params.c == std::vector<double>{1, 7.5, 3});
    CHECK(apply_sweep_value(cfg, "kappa", -0.25).params.kappa == -0.25);
    const RunConfig scaled = apply_sweep_value(cfg, "omega2", 3.0);
    CHECK(scaled.coefficients.at("omega2")(0.7) == doctest::Approx(3.0 * (1 + 0.1 * std::sin(0.7))).epsilon(1e-15));
    CHECK_THROWS_AS(apply_sweep_value(cfg, "c_9", 1.0), ConfigError);
    CHECK_THROWS_AS(apply_sweep_value(cfg, "K", 1.0), ConfigError);
    CHECK(manifest_path("out/run.csv") == "out/run.manifest.json");
  }

  TEST_CASE("list and describe") {
    std::ostringstream out, err;
    CHECK(cmd_list(out) == kOk);
    CHECK(out.str().find("kc_taubnut") != std::string::npos);
    out.str("");
    CHECK(cmd_describe("sw", out, err) == kOk);
    CHECK(out.str().find("omega2") != std::string::npos);
    CHECK(out.str().find("c (array of n reals)") != std::string::npos);
    CHECK(cmd_describe("nosuch", out, err) == kConfigError);
    CHECK(err.str().find("unknown system") != std::string::npos);
  }

  TEST_CASE("simulate writes the trajectory and manifest") {
    const fs::path csv = scratch("sw.csv");
    const json j = sw_config(csv);
    const Run r = simulate(write_config("sw.json", j));
    REQUIRE(r.code == kOk);
    const auto rows = lines(slurp(csv));
    REQUIRE(rows.size() > 10);
    CHECK(rows[0] == "t,q1,q2,q3,p1,p2,p3,H,I_L_2,I_R_2,I_3");
    CHECK(split(rows[1])[0] == "0");
    CHECK(std::strtod(split(rows.back())[0].c_str(), nullptr) == 20.0);

    const json m = json::parse(slurp(scratch("sw.manifest.json")));
    CHECK(m["status"] == "completed");
    CHECK(m["config"] == j);
    CHECK(m["version"].get<std::string>().rfind("0.1.0", 0) == 0);
    CHECK(m["samples"].get<std::size_t>() == rows.size() - 1);
    CHECK(m["accepted_steps"].get<std::size_t>() > 0);
    for (const char* name : {"I_L_2", "I_R_2", "I_3"}) CHECK(m["invariant_drift"][name].get<double>() <= 1e-6);
  }

  TEST_CASE("CSV values round-trip to the last digit") {
    const fs::path csv = scratch("rt.csv");
    json j = sw_config(csv);
    j["tspan"] = json::array({0, 2});
    REQUIRE(simulate(write_config("rt.json", j)).code == kOk);
    RunConfig cfg = parse_config(j);
    const SystemSpec sys = build_configured_system(cfg);
    const auto rows = lines(slurp(csv));
    const auto header = split(rows[0]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto f = split(rows[i]);
      const double t = std::strtod(f[0].c_str(), nullptr);
      PhasePoint x(6);
      for (Eigen::Index k = 0; k < 6; ++k) x(k) = std::strtod(f[static_cast<std::size_t>(k) + 1].c_str(), nullptr);
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", sys.hamiltonian().value(t, x));
      CHECK(f[7] == buf);
      for (std::size_t c = 8; c < header.size(); ++c) {
        std::snprintf(buf, sizeof buf, "%.17g", sys.invariant(header[c]).value(t, x));
        CHECK(f[c] == buf);
      }
    }
  }

  TEST_CASE("repeated runs are byte-identical") {
    const fs::path a = scratch("det_a.csv"), b = scratch("det_b.csv");
    REQUIRE(simulate(write_config("det_a.json", sw_config(a))).code == kOk);
    REQUIRE(simulate(write_config("det_b.json", sw_config(a))).code == kOk);
    const std::string first = slurp(a);
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(scratch("det_a.json").string(), b.string(), out, err) == kOk);
    CHECK(first == slurp(b));
  }

  TEST_CASE("zero span gives one row") {
    const fs::path csv = scratch("zero.csv");
    json j = sw_config(csv);
    j["tspan"] = json::array({0, 0});
    REQUIRE(simulate(write_config("zero.json", j)).code == kOk);
    CHECK(lines(slurp(csv)).size() == 2);
  }

  TEST_CASE("exit codes") {
    json j = sw_config(scratch("bad.csv"));
    j["coefficients"]["omega2"] = "sin(";
    const Run bad = simulate(write_config("bad.json", j));
    CHECK(bad.code == kConfigError);
    CHECK(bad.err.find("expected ')' at 1:5") != std::string::npos);

    json fall = json::parse(R"json({"system": "kc_euclidean", "params": {"n": 2},
      "initial": {"q": [1, 0.5], "p": [0, 0]}, "tspan": [0, 5]})json");
    fall["output"] = scratch("fall.csv").string();
    const Run r = simulate(write_config("fall.json", fall));
    CHECK(r.code == kDomainViolation);
    CHECK(json::parse(slurp(scratch("fall.manifest.json")))["status"] == "domain_violation");
  }

  TEST_CASE("check targets") {
    const Run alg = check("algebra", "sl2_coalg");
    CHECK(alg.code == kOk);
    CHECK(alg.out.find("jacobi") != std::string::npos);
    CHECK(alg.out.find("FAIL") == std::string::npos);
    CHECK(check("realization", "hh_sk").code == kOk);
    CHECK(check("tables").code == kOk);
    CHECK(check("algebra", "e8").code == kConfigError);
    CHECK(check("realization", "nosuch").code == kConfigError);
    CHECK(check("everything").code == kConfigError);
    CHECK(check("algebra").code == kConfigError);

    const fs::path cfg = write_config("inv.json", sw_config(scratch("inv.csv")));
    const Run inv = check("invariants", cfg.string());
    CHECK(inv.code == kOk);
    CHECK(inv.out.find("involution") != std::string::npos);

    json loose = sw_config(scratch("loose.csv"));
    loose["integrator"] = {{"method", "rk4_fixed"}, {"h0", 0.5}, {"hmax", 0.5}};
    CHECK(check("invariants", write_config("loose.json", loose).string()).code == kVerificationFailed);
  }

  TEST_CASE("sweeps") {
    json j = sw_config(scratch("unused.csv"));
    j["tspan"] = json::array({0, 5});
    j["sweep"] = {{"target", "c_1"}, {"values", {0, 1, 2}}};
    const fs::path cfg = write_config("sweep.json", j);
    REQUIRE(sweep(cfg, 1, scratch("sweep1.csv")).code == kOk);
    const std::string one = slurp(scratch("sweep1.csv"));
    const auto rows = lines(one);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "index,value,status,drift_I_L_2,drift_I_R_2,drift_I_3");
    for (std::size_t i = 1; i <= 3; ++i) CHECK(split(rows[i])[0] == std::to_string(i - 1));
    for (std::size_t w : {2, 3, 8}) {
      REQUIRE(sweep(cfg, w, scratch("sweepw.csv")).code == kOk);
      CHECK(slurp(scratch("sweepw.csv")) == one);
    }

    j["sweep"]["values"] = json::array();
    CHECK(sweep(write_config("empty.json", j), 2, scratch("empty.csv")).code == kConfigError);
    j.erase("sweep");
    CHECK(sweep(write_config("nosweep.json", j), 2, scratch("nosweep.csv")).code == kConfigError);
  }

  TEST_CASE("sweep over a coefficient amplitude records domain violations") {
    json kc = json::parse(R"json({"system": "kc_poincare", "params": {"n": 3, "c": [0.1, 0.2, 0.3], "kappa": 0.5},
      "coefficients": {"K": "1+0.2*cos(t)"}, "initial": {"q": [0.5, 0.4, 0.3], "p": [0.1, 0.6, -0.3]},
      "tspan": [0, 3]})json");
    std::vector<double> values;
    for (int i = 1; i <= 20; ++i) values.push_back(0.1 * i);
    kc["sweep"] = {{"target", "K"}, {"values", values}};
    REQUIRE(sweep(write_config("kc.json", kc), 4, scratch("kc.csv")).code == kOk);
    CHECK(lines(slurp(scratch("kc.csv"))).size() == 21);

    json fall = json::parse(R"json({"system": "kc_euclidean", "params": {"n": 2},
      "initial": {"q": [1, 0.5], "p": [0, 0]}, "tspan": [0, 5],
      "sweep": {"target": "K", "values": [0, 1]}})json");
    REQUIRE(sweep(write_config("fallsweep.json", fall), 2, scratch("fallsweep.csv")).code == kOk);
    const auto rows = lines(slurp(scratch("fallsweep.csv")));
    CHECK(split(rows[1])[2] == "completed");
    CHECK(split(rows[2])[2] == "domain_violation");
  }
}
