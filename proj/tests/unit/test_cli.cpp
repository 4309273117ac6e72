#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "krpt/cli/app.hpp"
#include "krpt/cli/config_file.hpp"
#include "krpt/cli/csv.hpp"
#include "krpt/cli/recipes.hpp"
#include "support/helpers.hpp"

using namespace krpt;
using namespace krpt::cli;
using krpt::testing::thrown_code;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "krpt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  const std::string prefix = key + " = ";
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) line = line.substr(2);
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("krpt_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config text parses keys, comments and blank lines") {
  const SimConfig c = parse_config_text(
      "# base case\n"
      "diffusion = 2e-5   # trailing comment\n"
      "\n"
      "n_gaussian=500\n"
      "boundary = periodic\n"
      "seed = 18446744073709551615\n");
  CHECK(c.diffusion == 2e-5);
  CHECK(c.n_gaussian == 500);
  CHECK(c.boundary == Boundary::Periodic);
  CHECK(c.seed == 18446744073709551615ull);
  CHECK(c.rate_constant == 5.0);
}

TEST_CASE("config errors name the line") {
  try {
    parse_config_text("dt = 0.1\nspeed = 3\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidConfig);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("speed") != std::string::npos);
  }
  CHECK(thrown_code([] { parse_config_text("dt = fast\n"); }) == ErrorCode::InvalidConfig);
  CHECK(thrown_code([] { parse_config_text("dt 0.1\n"); }) == ErrorCode::InvalidConfig);
  CHECK(thrown_code([] { parse_config_text("n_delta = 10.5\n"); }) == ErrorCode::InvalidConfig);
  CHECK(thrown_code([] { parse_config_text("boundary = open\n"); }) == ErrorCode::InvalidConfig);
  CHECK(thrown_code([] { load_config("/nonexistent/krpt.cfg"); }) == ErrorCode::Io);
}

TEST_CASE("overrides apply key=value assignments") {
  SimConfig c;
  apply_override(c, "dt=0.05");
  apply_override(c, "n_realizations = 3");
  CHECK(c.dt == 0.05);
  CHECK(c.n_realizations == 3);
  CHECK(thrown_code([&] { apply_override(c, "dt"); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("formatted configs parse back exactly") {
  SimConfig c;
  c.diffusion = 1.0 / 3.0;
  c.omega = 0.1 + 0.2;
  c.dt = 1e-7;
  c.seed = 987654321;
  c.boundary = Boundary::Periodic;
  std::string text;
  for (const auto& line : format_config(c)) text += line + "\n";
  CHECK(parse_config_text(text) == c);
  CHECK(format_config(c).size() == config_keys().size());
}

TEST_CASE("numbers round-trip through CSV text") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::exp(u(rng)) * (i % 2 ? 1.0 : -1.0);
    const std::string s = format_number(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_number(0.1) == "0.1");
}

TEST_CASE("tables write comments, header and rows") {
  Table t;
  t.comments = {"seed = 1"};
  t.add_column("time", {1.0, 2.0});
  t.add_column("value", {0.5, 0.25});
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str() == "# seed = 1\ntime,value\n1,0.5\n2,0.25\n");
  CHECK(thrown_code([&] { t.add_column("bad", {1.0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("recipes cover the experiment families") {
  for (const char* name : {"base", "tstar100", "tstar1000", "least-squares", "variable",
                           "omega-sweep", "eulerian-compare"}) {
    const auto r = find_recipe(name);
    REQUIRE(r.has_value());
    CHECK(!r->ratios.empty());
    CHECK(!r->omegas.empty());
  }
  CHECK(!find_recipe("nope").has_value());
  CHECK(find_recipe("eulerian-compare")->with_eulerian);
}

TEST_CASE("omega sweep keeps the particle Damkohler number") {
  const auto recipe = *find_recipe("omega-sweep");
  const auto points = sweep(recipe, SimConfig{});
  REQUIRE(points.size() == 5);
  for (const auto& p : points) {
    const Config c = validate_config(p.config);
    CHECK(damkohler(c, c.n_delta()) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.n_gaussian() * 10 == c.n_delta());
    CHECK(c.omega() == p.omega);
  }
  CHECK(points.back().config.n_delta == 16000);

  const auto ratios = sweep(*find_recipe("least-squares"), SimConfig{});
  REQUIRE(ratios.size() == 4);
  CHECK(ratios[0].config.n_gaussian == 900);
  CHECK(ratios[3].config.n_gaussian == 100);
}

TEST_CASE("usage and configuration problems exit with 2") {
  const Outcome missing = run({"simulate", "--config", "/nonexistent/base.cfg"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("/nonexistent/base.cfg") != std::string::npos);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"simulate", "--set", "dt=-1"}).code == kExitUsage);
  CHECK(run({"simulate", "--kernel", "square"}).code == kExitUsage);
  CHECK(run({"compare", "--recipe", "nope"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("match-width reports widths and tau*") {
  const Outcome ls = run({"match-width", "--strategy", "least-squares"});
  REQUIRE(ls.code == kExitOk);
  CHECK(std::stod(value_of(ls.out, "half_width")) == doctest::Approx(0.1096).epsilon(0.1));
  CHECK(std::stod(value_of(ls.out, "tau_star")) ==
        doctest::Approx(1.0 / (8.0 * 3.141592653589793 * 1e-5)).epsilon(1e-6));

  const Outcome t1000 = run({"match-width", "--strategy", "t-star", "--t-star", "1000"});
  REQUIRE(t1000.code == kExitOk);
  CHECK(std::stod(value_of(t1000.out, "half_width")) > 0.0);
  CHECK(t1000.err.find("exceeds 0.12") != std::string::npos);

  const Outcome late = run({"match-width", "--strategy", "t-star", "--t-star", "5000"});
  CHECK(late.code == kExitSolver);
  CHECK(late.err.find("InfeasibleMatchTime") != std::string::npos);
  CHECK(std::stod(value_of(late.err, "tau_star")) == doctest::Approx(3978.87).epsilon(1e-4));
}

TEST_CASE("the domain warning fires exactly above 0.12") {
  const std::vector<std::string> base{"simulate", "--set", "t_final=0.2", "--set",
                                      "n_realizations=1", "--kernel", "gaussian", "--match",
                                      "fixed", "--width"};
  auto with_width = [&](const char* w) {
    auto args = base;
    args.push_back(w);
    return run(args);
  };
  CHECK(with_width("0.13").err.find("exceeds 0.12") != std::string::npos);
  CHECK(with_width("0.12").err.find("exceeds 0.12") == std::string::npos);
  CHECK(with_width("0.05").err.find("exceeds 0.12") == std::string::npos);
}

TEST_CASE("simulate writes a reproducible trace with a full header") {
  const std::vector<std::string> args{"simulate", "--set", "t_final=5", "--set",
                                      "n_realizations=2", "--points", "10"};
  const Outcome first = run(args);
  REQUIRE(first.code == kExitOk);
  CHECK(value_of(first.out, "seed") == "1");
  CHECK(value_of(first.out, "damkohler_delta") == "0.5");
  CHECK(value_of(first.out, "kernel") == "dirac");
  const auto rows = data_lines(first.out);
  REQUIRE(rows.size() >= 2);
  CHECK(rows.front() == "time,cbar_mean,cbar_std");

  // Re-running from the recorded header reproduces the numbers byte for byte.
  const auto dir = scratch_dir("reproduce");
  const auto cfg = dir / "header.cfg";
  {
    std::ofstream file(cfg);
    std::istringstream in(first.out);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("# ", 0) != 0) continue;
      const std::string body = line.substr(2);
      const auto key = body.substr(0, body.find(' '));
      for (const auto& k : config_keys()) {
        if (k == key) file << body << '\n';
      }
    }
  }
  const Outcome again = run({"simulate", "--config", cfg.string(), "--points", "10"});
  REQUIRE(again.code == kExitOk);
  CHECK(data_lines(again.out) == rows);

  const auto out_file = dir / "trace.csv";
  REQUIRE(run({"simulate", "--config", cfg.string(), "--points", "10", "--out",
               out_file.string()})
              .code == kExitOk);
  std::ifstream written(out_file);
  std::stringstream text;
  text << written.rdbuf();
  CHECK(data_lines(text.str()) == rows);
}

TEST_CASE("simulate resolves the least-squares width") {
  const Outcome o = run({"simulate", "--kernel", "gaussian", "--match", "least-squares", "--set",
                         "n_realizations=1", "--times", "1,10"});
  REQUIRE(o.code == kExitOk);
  CHECK(std::stod(value_of(o.err, "half_width")) == doctest::Approx(0.1096).epsilon(0.1));
  CHECK(data_lines(o.out).size() == 3);
}

TEST_CASE("moments writes both traces and checks the lower bound") {
  const Outcome flat = run({"moments", "--set", "rate_constant=0", "--points", "7"});
  REQUIRE(flat.code == kExitOk);
  auto rows = data_lines(flat.out);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].find("cbar_dirac,cbar_gaussian,well_mixed") != std::string::npos);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream line(rows[i]);
    std::string cell;
    std::getline(line, cell, ',');
    std::getline(line, cell, ',');
    CHECK(cell == "1");
    std::getline(line, cell, ',');
    CHECK(cell == "1");
  }

  const Outcome base = run({"moments", "--kernel", "gaussian", "--match", "t-star", "--t-star",
                            "100", "--points", "25"});
  REQUIRE(base.code == kExitOk);
  CHECK(data_lines(base.out).size() == 26);

  const Outcome variable = run({"moments", "--kernel", "variable", "--points", "5"});
  CHECK(variable.code == kExitSolver);
}

TEST_CASE("compare adds the FD column only on request") {
  const std::vector<std::string> args{"compare", "--set", "t_final=2", "--set",
                                      "n_realizations=1", "--cell-list", "--kernel", "gaussian",
                                      "--match", "fixed", "--width", "0.05", "--times", "1,2"};
  const Outcome plain = run(args);
  REQUIRE(plain.code == kExitOk);
  const auto header = data_lines(plain.out).front();
  CHECK(header.find("gaussian_particle") != std::string::npos);
  CHECK(header.find(",fd") == std::string::npos);
  CHECK(!value_of(plain.out, "max_discrepancy").empty());
  CHECK(!value_of(plain.out, "final_discrepancy").empty());

  auto fd_args = args;
  fd_args.push_back("--with-eulerian");
  const Outcome fd = run(fd_args);
  REQUIRE(fd.code == kExitOk);
  CHECK(data_lines(fd.out).front().find(",fd,fd_std") != std::string::npos);
}

TEST_CASE("omega sweep writes one bundle per domain size") {
  const auto dir = scratch_dir("sweep");
  const Outcome needs_dir = run({"compare", "--recipe", "omega-sweep", "--set", "t_final=0.3"});
  CHECK(needs_dir.code == kExitUsage);

  const Outcome o = run({"compare", "--recipe", "omega-sweep", "--set", "t_final=0.3", "--set",
                         "n_realizations=1", "--cell-list", "--times", "0.3", "--out-dir",
                         dir.string()});
  REQUIRE(o.code == kExitOk);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    ++files;
    std::ifstream in(entry.path());
    std::stringstream text;
    text << in.rdbuf();
    CHECK(data_lines(text.str()).front().find("width_over_omega") != std::string::npos);
  }
  CHECK(files == 5);
}

TEST_CASE("snapshot records threshold, seed and kernel") {
  const Outcome o = run({"snapshot", "--set", "t_final=50", "--cell-list"});
  REQUIRE(o.code == kExitOk);
  CHECK(value_of(o.out, "threshold") == "2e-05");
  CHECK(value_of(o.out, "seed") == "1");
  CHECK(value_of(o.out, "kernel") == "dirac");
  CHECK(data_lines(o.out).front() == "time,species,position,mass");
  CHECK(data_lines(o.out).size() > 1);
}
