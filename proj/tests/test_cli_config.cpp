#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "llg/config.hpp"
#include "llg/error.hpp"
#include "llg/io.hpp"
#include "support.hpp"

using namespace llg;

namespace {

Config parse(std::vector<std::string> args) {
  args.insert(args.begin(), "llgsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  Config c;
  std::string help;
  if (!parse_cli(static_cast<int>(argv.size()), argv.data(), c, help)) throw std::runtime_error("help requested");
  return c;
}

std::string config_error(std::vector<std::string> args) {
  try {
    parse(std::move(args));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a full run configuration") {
  const Config c = parse({"run", "--scheme", "cn-t2", "--ic", "benchmark", "--dt", "1e-4", "--tmax", "0.8", "--nx", "64", "--ny", "64"});
  CHECK(c.command == Command::Run);
  CHECK(*c.spec.scheme == SchemeId::CnT2);
  CHECK(*c.spec.ic == InitialCondition::Benchmark);
  CHECK(*c.spec.dt == 1e-4);
  CHECK(c.spec.t_end == 0.8);
  CHECK(c.spec.nx == 64);
  CHECK(c.spec.ny == 64);
  CHECK(c.spec.params.gamma == 1.0);
  CHECK(c.spec.params.beta == 0.0);
  CHECK(c.spec.params.stab == 0.0);
  CHECK_FALSE(c.spec.adaptive.has_value());
}

TEST_CASE("unknown scheme lists the valid ids") {
  const std::string e = config_error({"run", "--scheme", "bogus", "--ic", "smooth", "--dt", "1e-3", "--tmax", "0.01"});
  CHECK(e.find("bogus") != std::string::npos);
  CHECK(e.find("cn-t2") != std::string::npos);
  CHECK(e.find("bdf1-energy") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  const auto dir = test::scratch_dir("cfg");
  const auto file = dir / "run.cfg";
  std::ofstream(file) << "# example\nscheme = bdf2\nic = manufactured   # trailing comment\ndt = 1e-3\ntmax = 0.01\nbeta = 1\nn = 32\n";
  const Config c = parse({"run", "--config", file.string(), "--dt", "1e-4", "--ny", "16"});
  CHECK(*c.spec.dt == 1e-4);
  CHECK(*c.spec.scheme == SchemeId::Bdf2);
  CHECK(c.spec.params.beta == 1.0);
  CHECK(c.spec.nx == 32);
  CHECK(c.spec.ny == 16);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config file errors name the line") {
  CHECK_THROWS_WITH_AS(parse_config_text("dt = 1\nbogus = 2\n"), doctest::Contains("line 2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("scheme cn\n"), doctest::Contains("line 1"), ConfigError);
  CHECK(parse_config_text("# only a comment\n\n  \n").empty());
  const auto kv = parse_config_text("  dt =  2e-4  \nname=abc\n");
  CHECK(kv.at("dt") == "2e-4");
  CHECK(kv.at("name") == "abc");
}

TEST_CASE("type and requirement errors") {
  CHECK(config_error({"run", "--scheme", "cn", "--ic", "smooth", "--dt", "fast", "--tmax", "0.01"}).find("expects a number") != std::string::npos);
  CHECK(config_error({"run", "--scheme", "cn", "--ic", "smooth", "--dt", "1e-3", "--tmax", "0.01", "--nx", "1.5"}).find("integer") != std::string::npos);
  CHECK_FALSE(config_error({"run", "--ic", "smooth", "--dt", "1e-3", "--tmax", "0.01"}).empty());
  CHECK_FALSE(config_error({"run", "--scheme", "cn", "--dt", "1e-3", "--tmax", "0.01"}).empty());
  CHECK_FALSE(config_error({"run", "--scheme", "cn", "--ic", "smooth", "--tmax", "0.01"}).empty());
  CHECK_FALSE(config_error({"run", "--scheme", "cn", "--ic", "smooth", "--dt", "1e-3", "--tmax", "0.01", "--bogus", "1"}).empty());
  CHECK_FALSE(config_error({"fly"}).empty());
  CHECK_FALSE(config_error({"reproduce", "table9"}).empty());
  CHECK(config_error({"converge", "--scheme", "bdf1", "--ic", "manufactured", "--dts", "1e-3", "--tmax", "0.01"}).find("at least two") != std::string::npos);
}

TEST_CASE("adaptive runs need an energy scheme or a dt") {
  const Config c = parse({"run", "--scheme", "cn-energy", "--ic", "benchmark", "--adaptive", "--tol", "5e-5", "--tmax", "0.01", "--dt-max", "1e-3"});
  REQUIRE(c.spec.adaptive.has_value());
  CHECK(c.spec.adaptive->tol == 5e-5);
  CHECK(c.spec.adaptive->dt_max == 1e-3);
  CHECK_FALSE(config_error({"run", "--scheme", "cn", "--ic", "benchmark", "--adaptive", "--tmax", "0.01"}).empty());
}

TEST_CASE("list settings and short stabilization flag") {
  const Config c = parse({"compare", "--schemes", "cn, cn-t2,llg-bdf2", "--ic", "benchmark", "--dt", "1e-4", "--times", "0.01,0.02", "-S", "0.5"});
  CHECK(c.schemes == std::vector<SchemeId>{SchemeId::Cn, SchemeId::CnT2, SchemeId::LlgBdf2});
  CHECK(c.times == std::vector<double>{0.01, 0.02});
  CHECK(c.spec.params.stab == 0.5);
  const Config r = parse({"reproduce", "table1", "--dts", "1e-3,5e-4"});
  CHECK(r.command == Command::Reproduce);
  CHECK(r.target == "table1");
  CHECK(r.dts == std::vector<double>{1e-3, 5e-4});
}

TEST_CASE("help is not an error") {
  const char* argv[] = {"llgsim", "--help"};
  Config c;
  std::string help;
  CHECK_FALSE(parse_cli(2, argv, c, help));
  CHECK(help.find("--scheme") != std::string::npos);
}

TEST_CASE("identical configurations give byte-identical output") {
  const auto a = test::scratch_dir("det_a");
  const auto b = test::scratch_dir("det_b");
  for (const auto& dir : {a, b}) {
    Config c = parse({"run", "--scheme", "cn-energy", "--ic", "smooth", "--n", "16", "--dt", "1e-3", "--tmax", "0.02",
                      "--perturb", "0.05", "--seed", "7", "--snapshots", "0.01,0.02", "--out", dir.string(), "--name", "det"});
    run_experiment(c.spec);
  }
  for (const char* f : {"det.csv", "det_t0.01.llgf", "det_t0.02.llgf"}) {
    CAPTURE(f);
    const std::string x = test::slurp(a / f);
    CHECK_FALSE(x.empty());
    CHECK(x == test::slurp(b / f));
  }
  // A different seed changes the result.
  const auto c2 = test::scratch_dir("det_c");
  Config c = parse({"run", "--scheme", "cn-energy", "--ic", "smooth", "--n", "16", "--dt", "1e-3", "--tmax", "0.02",
                    "--perturb", "0.05", "--seed", "8", "--out", c2.string(), "--name", "det"});
  run_experiment(c.spec);
  CHECK(test::slurp(a / "det.csv") != test::slurp(c2 / "det.csv"));

  // Every emitted file parses back.
  CHECK(read_records(a / "det.csv").size() == 21);
  CHECK(read_snapshot(a / "det_t0.02.llgf").t == doctest::Approx(0.02));
  for (const auto& d : {a, b, c2}) std::filesystem::remove_all(d);
}
