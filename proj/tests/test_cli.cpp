#include <doctest.h>

#include "nok/cli.hpp"
#include "nok/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using nok::io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nok");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = nok::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nok_test_" + name)).string();
}

void expect_error(const Run& r, int code) {
  CHECK(r.code == code);
  auto e = json::parse(r.err);
  CHECK(e.at("error").contains("kind"));
  CHECK(e.at("error").contains("message"));
}

}  // namespace

TEST_CASE("cli string") {
  auto r = cli({"string", "polytope", "--type", "A2", "--word", "1,2,1", "--lambda", "1,1"});
  REQUIRE(r.code == 0);
  CHECK(r.j() == json{{"lattice_points", 8}, {"volume", "1"}, {"weyl_dim", 8}});
  auto c = cli({"string", "cone", "--type", "A1", "--word", "1"});
  REQUIRE(c.code == 0);
  CHECK(c.j().at("rays") == 1);
  expect_error(cli({"string", "cone", "--type", "A2", "--word", "1,1,2"}), 2);
  expect_error(cli({"string", "polytope", "--type", "A2", "--word", "1,2,1", "--lambda", "-1,1"}), 2);
  expect_error(cli({"string", "cone", "--type", "X9", "--word", "1"}), 2);
  expect_error(cli({"string", "frobnicate"}), 2);
}

TEST_CASE("cli output is deterministic") {
  std::vector<std::string> args{"width", "report", "--type", "A2", "--word", "1,2,1", "--lambda", "2,3"};
  auto a = cli(args), b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  args.push_back("--jobs");
  args.push_back("3");
  CHECK(cli(args).out == a.out);
}

TEST_CASE("cli degen") {
  auto sl2 = cli({"degen", "build", "--example", "sl2"});
  REQUIRE(sl2.code == 0);
  CHECK(sl2.j().at("family").at("relations").empty());

  const auto path = temp_path("sl3.json");
  auto sl3 = cli({"degen", "build", "--example", "sl3-string-121", "--out", path});
  REQUIRE(sl3.code == 0);
  CHECK(sl3.out.empty());
  json fam = json::parse(std::ifstream(path));
  for (const auto& row : fam.at("family").at("t_exponents"))
    for (const auto& m : row) CHECK(m.get<long long>() >= 1);

  auto check = cli({"degen", "check", path});
  REQUIRE(check.code == 0);
  auto j = check.j();
  CHECK(j.at("faces").size() == 4);
  for (const auto& f : j.at("faces")) CHECK(f.at("dropped_generators_vanish") == true);
  CHECK(j.at("valuation_check").at("all_pass") == true);

  // A family whose t-exponents contradict e is rejected.
  json bad = fam.at("family");
  bad["t_exponents"] = json::array({json::array({2})});
  const auto bad_path = temp_path("bad.json");
  std::ofstream(bad_path) << bad.dump();
  expect_error(cli({"degen", "check", bad_path}), 2);
  json extra = fam.at("family");
  extra["colour"] = "red";
  std::ofstream(bad_path) << extra.dump();
  expect_error(cli({"degen", "check", bad_path}), 2);
  expect_error(cli({"degen", "build", "--example", "sl7"}), 2);
}

TEST_CASE("cli ghflow") {
  const auto path = temp_path("hyp.json");
  REQUIRE(cli({"degen", "build", "--example", "hyperbola", "--out", path}).code == 0);
  auto run = cli({"ghflow", "run", "--family", path, "--start", "[2, 0.5, 1]", "--t-end", "0.01"});
  REQUIRE(run.code == 0);
  auto inv = run.j().at("invariants");
  CHECK(inv.at("psi_drift").get<double>() < 1e-6);
  CHECK(inv.at("pi_drift").get<double>() < 1e-9);
  CHECK(run.j().at("diagnostics").at("t").back().get<double>() == doctest::Approx(0.01));

  auto lim = cli({"ghflow", "limit", "--example", "hyperbola", "--start", "[[2, 0], [0.5, 0]]"});
  REQUIRE(lim.code == 0);
  auto z = lim.j().at("z");
  CHECK(std::abs(z[1][0].get<double>()) < 1e-6);
  CHECK(lim.j().at("residual").get<double>() <= lim.j().at("error").get<double>());

  expect_error(cli({"ghflow", "run", "--family", "/nonexistent/family.json", "--start", "[1,1,1]", "--t-end", "0.1"}), 2);
  expect_error(cli({"ghflow", "run", "--example", "hyperbola", "--start", "[1,1,1]", "--t-end", "2"}), 2);
  expect_error(cli({"ghflow", "run", "--example", "hyperbola", "--start", "[1,1,1,1,1]", "--t-end", "0.5"}), 2);

  // A huge blow-up threshold turns the first field evaluation into a numerical failure.
  const auto cfg = temp_path("cfg.json");
  std::ofstream(cfg) << R"({"blowup": 0.99})";
  expect_error(cli({"ghflow", "run", "--example", "hyperbola", "--start", "[1,1,1]", "--t-end", "0.5", "--config", cfg}), 3);
}

TEST_CASE("cli config and environment") {
  const auto cfg = temp_path("cfg_bad.json");
  std::ofstream(cfg) << R"({"rtol": 1e-9, "speed": 3})";
  expect_error(cli({"--config", cfg, "string", "cone", "--type", "A1", "--word", "1"}), 2);
  std::ofstream(cfg) << R"({"rtol": -1})";
  expect_error(cli({"--config", cfg, "string", "cone", "--type", "A1", "--word", "1"}), 2);

  setenv("NOK_RTOL", "not-a-number", 1);
  expect_error(cli({"string", "cone", "--type", "A1", "--word", "1"}), 2);
  setenv("NOK_RTOL", "1e-9", 1);
  CHECK(cli({"string", "cone", "--type", "A1", "--word", "1"}).code == 0);
  unsetenv("NOK_RTOL");
}

TEST_CASE("cli width") {
  auto wall = cli({"width", "report", "--type", "A2", "--word", "1,2,1", "--lambda", "0,3"});
  REQUIRE(wall.code == 0);
  CHECK(wall.j().at("ell") == "3");
  CHECK(wall.j().at("embedding").at("status") == "found");
  auto big = cli({"width", "report", "--type", "A2", "--word", "1,2,1", "--lambda", "2,3"});
  CHECK(big.j().at("orbit_volume") == "15");
  CHECK(big.j().at("dh_fiber_volume") == "15");
  auto zero = cli({"width", "report", "--type", "A2", "--word", "1,2,1", "--lambda", "0,0"});
  CHECK(zero.code == 0);
  CHECK(zero.j().at("ell") == "0");
  CHECK(zero.j().at("warnings").size() == 1);
  auto capped = cli({"width", "report", "--type", "A2", "--word", "1,2,1", "--lambda", "2,3", "--max-box", "2"});
  CHECK(capped.code == 4);
  CHECK(capped.j().at("embedding").at("status") == "inconclusive");
  auto over = cli({"width", "report", "--type", "A2", "--word", "1,2,1", "--lambda", "0,3", "--delta", "-1"});
  CHECK(over.j().at("embedding").at("status") == "none");
}

TEST_CASE("json round trips") {
  using namespace nok;
  for (const auto& name : builtin_names()) {
    auto fam = builtin_example(name).family;
    auto back = io::decode_family(io::encode(fam));
    CHECK(io::encode(back) == io::encode(fam));
    CHECK(back.t_exponents == fam.t_exponents);
  }
  CHECK(io::decode_rational(json("-3/6")) == Rational(-1, 2));
  CHECK(io::decode_rational(json(4)) == 4);
  CHECK_THROWS_AS(io::decode_rational(json(0.5)), ValidationError);
  CHECK_THROWS_AS(io::decode_rational(json("1/0")), ValidationError);
  CHECK(io::encode(Rational(7, 3)) == "7/3");
  CHECK(json(0.1).dump() == "0.1");
}
