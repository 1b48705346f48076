#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dirac/commands.hpp"
#include "dirac/output.hpp"

using namespace dirac;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("diracspec_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json base_config() {
  return json::parse(R"({
    "schema": 1,
    "potential": {"kind": "constant", "p": [1, 0], "q": [0, 16]},
    "h": [1],
    "window": {"re": [-6, 6], "im": [-5, 5]},
    "grid": [40, 40]
  })");
}

CommandContext silent(std::ostringstream& out, std::ostringstream& log) {
  CommandContext ctx;
  ctx.quiet = true;
  ctx.out = &out;
  ctx.log = &log;
  return ctx;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(base_config());
  CHECK(cfg.potential.kind() == PeriodicPotential::Kind::Constant);
  CHECK(cfg.potential.q0() == Complex(0, 16));
  CHECK(cfg.h_list == std::vector<double>{1.0});
  CHECK(cfg.nx == 40);
  CHECK(cfg.window.re_min == -6.0);
  CHECK(cfg.outputs.csv);

  json j = base_config();
  j["potential"] = json::parse(R"({"kind": "fourier", "p": [{"k": 1, "c": [0.5, 0]}], "q": [{"k": -1, "c": 0.5}]})");
  j["tolerances"] = {{"trace_tol", 1e-7}, {"richardson_tol", 1e-10}};
  j["outputs"] = {{"svg", false}};
  const RunConfig f = parse_config(j);
  CHECK(f.potential.kind() == PeriodicPotential::Kind::FourierSeries);
  CHECK(f.tol.trace_tol == 1e-7);
  CHECK(f.integrator.richardson_tol == 1e-10);
  CHECK_FALSE(f.outputs.svg);

  j["potential"] = json::parse(R"({"kind": "sampled", "p": [[1, 0], [0, 0]], "q": [1, 1]})");
  CHECK(parse_config(j).potential.kind() == PeriodicPotential::Kind::SampledGrid);
}

TEST_CASE("config errors") {
  auto broken = [](auto edit) {
    json j = base_config();
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j.erase("schema"); })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["schema"] = 2; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["h"] = json::array(); })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["h"] = {1.0, -0.5}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["grid"] = {4, 40}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["window"]["re"] = {1, 1}; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["potential"]["kind"] = "bessel"; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["potential"]["p"] = "one"; })), ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) {
                    j["potential"] = {{"kind", "sampled"}, {"p", json::array()}, {"q", {1}}};
                  })),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(broken([](json& j) { j["delta"] = -1; })), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("spectrum command writes deterministic files") {
  const fs::path a = scratch("spec_a"), b = scratch("spec_b");
  RunConfig cfg = parse_config(base_config());
  std::ostringstream out, log;
  cfg.out_dir = a.string();
  CHECK(cmd_spectrum(cfg, silent(out, log)) == kExitOk);
  cfg.out_dir = b.string();
  CHECK(cmd_spectrum(cfg, silent(out, log)) == kExitOk);
  REQUIRE(fs::exists(a / "spectrum_h1.csv"));
  REQUIRE(fs::exists(a / "spectrum_h1.svg"));
  REQUIRE(fs::exists(a / "report.json"));
  CHECK(slurp(a / "spectrum_h1.csv") == slurp(b / "spectrum_h1.csv"));
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
  CHECK(slurp(a / "spectrum_h1.csv").rfind("h,arc_id,vertex_id,re_z,im_z,re_delta\n", 0) == 0);

  const std::string svg = slurp(a / "spectrum_h1.svg");
  const auto enc = svg.find("id=\"enclosure\""), con = svg.find("id=\"contours\""), arcs = svg.find("id=\"arcs\""),
             mark = svg.find("id=\"markers\"");
  CHECK(enc < con);
  CHECK(con < arcs);
  CHECK(arcs < mark);
  CHECK(svg.find("<circle", mark) != std::string::npos);

  const json report = json::parse(slurp(a / "report.json"));
  CHECK(report["schema"] == 1);
  CHECK(report["runs"][0]["stats"]["accepted"].get<int>() > 0);
}

TEST_CASE("free operator CSV holds one two-row axis band") {
  json j = base_config();
  j["potential"] = {{"kind", "constant"}, {"p", 0}, {"q", 0}};
  j["window"] = {{"re", {-5, 5}}, {"im", {-1, 1}}};
  j["grid"] = {41, 9};
  RunConfig cfg = parse_config(j);
  cfg.out_dir = scratch("free").string();
  std::ostringstream out, log;
  REQUIRE(cmd_spectrum(cfg, silent(out, log)) == kExitOk);
  const std::string csv = slurp(fs::path(cfg.out_dir) / "spectrum_h1.csv");
  CHECK(csv.find(",-5,0,") != std::string::npos);
  CHECK(csv.find(",5,0,") != std::string::npos);
}

TEST_CASE("bounds, sweep, oracle and check commands") {
  std::ostringstream out, log;
  RunConfig cfg = parse_config(base_config());
  cfg.out_dir = scratch("cmds").string();

  CHECK(cmd_bounds(cfg, silent(out, log)) == kExitOk);
  const json rep = json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
  CHECK(rep["runs"][0]["params"]["B1"].get<double>() == doctest::Approx(4.0));
  CHECK(rep["runs"][0]["report"]["verdict"]["strip"] == "pass");

  CHECK(cmd_sweep(cfg, silent(out, log)) == kExitConfig);
  cfg.h_list = {1.0, 0.5, 0.25};
  CHECK(cmd_sweep(cfg, silent(out, log)) == kExitOk);
  const std::string sweep = slurp(fs::path(cfg.out_dir) / "sweep.csv");
  CHECK(sweep.rfind("h,max_cross_distance,B1,C_h,c_h,h0,confined\n", 0) == 0);
  CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 4);

  cfg.h_list = {1.0};
  CHECK(cmd_oracle(cfg, silent(out, log)) == kExitOk);
  CHECK(fs::exists(fs::path(cfg.out_dir) / "oracle_h1.csv"));

  CHECK(cmd_check(cfg, silent(out, log)) == kExitOk);
  CHECK(out.str().find("FAIL") == std::string::npos);

  RunConfig nonconst = parse_config(base_config());
  nonconst.potential = PeriodicPotential::fourier({{1, 1.0}}, {{0, 1.0}});
  nonconst.out_dir = cfg.out_dir;
  CHECK(cmd_oracle(nonconst, silent(out, log)) == kExitConfig);
}

TEST_CASE("integration failures give exit code 2") {
  json j = base_config();
  j["integrator"] = {{"min_steps", 2}, {"max_steps", 4}};
  RunConfig cfg = parse_config(j);
  cfg.out_dir = scratch("fail").string();
  std::ostringstream out, log;
  CHECK(cmd_spectrum(cfg, silent(out, log)) == kExitIntegration);
  CHECK(log.str().find("integration failed") != std::string::npos);
}

TEST_CASE("command-line binary") {
  const char* bin = std::getenv("DIRACSPEC_CLI");
  if (!bin) {
    MESSAGE("DIRACSPEC_CLI not set; skipping binary checks");
    return;
  }
  const fs::path dir = scratch("bin");
  const fs::path cfg_path = dir / "cfg.json";
  {
    std::ofstream f(cfg_path);
    f << base_config().dump();
  }
  auto run = [&](const std::string& args) {
    const std::string cmd = std::string(bin) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("spectrum --config " + cfg_path.string() + " --out " + (dir / "o").string() + " --quiet") == 0);
  CHECK(fs::exists(dir / "o" / "spectrum_h1.csv"));
  CHECK(run("spectrum --config " + cfg_path.string() + " --out " + (dir / "o").string() + " --h 0.5 --quiet") == 0);
  CHECK(fs::exists(dir / "o" / "spectrum_h0.5.csv"));
  {
    std::ofstream f(dir / "bad.json");
    f << "{\"schema\": 1";
  }
  CHECK(run("spectrum --config " + (dir / "bad.json").string()) == 1);
  CHECK(run("sweep --config " + cfg_path.string() + " --out " + (dir / "o").string()) == 1);
  CHECK(run("--config " + cfg_path.string()) == 1);
}

TEST_CASE("number formatting") {
  CHECK(fmt_num(0.1) == "0.10000000000000001");
  CHECK(h_tag(0.25) == "0.25");
  CHECK(h_tag(1.0) == "1");
}
