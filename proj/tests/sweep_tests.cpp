#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "iniqkd/config.hpp"
#include "iniqkd/sweep.hpp"

using namespace iniqkd;

TEST_CASE("config text parsing") {
  SweepConfig c = parse_config_text(
      "# comment line\n"
      "e_d = 0.30\n"
      "delta=0.05   # trailing comment\n"
      "\n"
      "l_min_km=10\nl_max_km=20\nl_step_km=5\n"
      "mu_points=12\nseed=99\nuse_ad=false\nclamp=total\nie_eta=arm-etad\n"
      "bit_error=kronecker\n");
  CHECK(c.params.e_d == 0.30);
  CHECK(c.params.delta == 0.05);
  CHECK(c.l_min_km == 10.0);
  CHECK(c.l_step_km == 5.0);
  CHECK(c.mu_points == 12);
  CHECK(c.seed == 99);
  CHECK(!c.use_ad);
  CHECK(c.clamp == ClampMode::Total);
  CHECK(c.ie_eta == EveEta::ArmEtaD);
  CHECK(c.params.bit_error == BitErrorConvention::Kronecker);

  CHECK_THROWS_WITH_AS(parse_config_text("no_such_key=1\n"),
                       "config: unknown key 'no_such_key'", std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("e_d=banana\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("just a line\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config_text("e_d=2.0\n"), std::runtime_error);
}

TEST_CASE("config echo round-trips") {
  SweepConfig c;
  c.params.e_d = 0.15;
  c.params.delta = 0.20;
  c.params.p_d = 3e-7;
  c.l_step_km = 2.5;
  c.seed = 1234567890123456789ull;
  c.use_ad = false;
  c.ie_eta = EveEta::ArmEtaD;
  SweepConfig back = parse_config_text(config_to_text(c));
  CHECK(back.params.e_d == c.params.e_d);
  CHECK(back.params.delta == c.params.delta);
  CHECK(back.params.p_d == c.params.p_d);
  CHECK(back.l_step_km == c.l_step_km);
  CHECK(back.seed == c.seed);
  CHECK(back.use_ad == c.use_ad);
  CHECK(back.ie_eta == c.ie_eta);
}

TEST_CASE("scenario presets") {
  CHECK(preset_names().size() == 9);
  CHECK(is_preset("ed50"));
  CHECK(!is_preset("ed51"));
  SweepConfig c = preset_config("ed50");
  CHECK(c.params.e_d == 0.50);
  CHECK(c.params.delta == 0.0);
  c = preset_config("d20ed15");
  CHECK(c.params.e_d == 0.15);
  CHECK(c.params.delta == 0.20);
  CHECK_THROWS_AS(preset_config("nope"), std::runtime_error);
}

TEST_CASE("sweep rows are deterministic and well formed") {
  SweepConfig c;
  c.l_min_km = 80.0;
  c.l_max_km = 120.0;
  c.l_step_km = 20.0;
  c.mu_points = 16;
  c.params.e_d = 0.10;
  std::vector<KeyRatePoint> par = run_sweep(c);
  std::vector<KeyRatePoint> ser = run_sweep_serial(c);
  REQUIRE(par.size() == 3);
  REQUIRE(ser.size() == 3);
  CHECK(sweep_csv(par, true) == sweep_csv(ser, true));
  for (const KeyRatePoint& r : par) {
    CHECK(r.r_original >= 0.0);
    CHECK(r.r_ad >= 0.0);
    CHECK(r.b_opt >= 1);
    CHECK(r.b_opt <= c.params.b_max);
    CHECK(r.mu_opt_original >= c.mu_min);
    CHECK(r.mu_opt_original <= c.mu_max);
    CHECK(r.plob > 0.0);
  }

  SweepConfig c1 = c;
  c1.workers = 1;
  SweepConfig c3 = c;
  c3.workers = 3;
  CHECK(sweep_csv(run_sweep(c1), true) == sweep_csv(run_sweep(c3), true));
}

TEST_CASE("csv format and lossless round trip") {
  SweepConfig c;
  c.l_min_km = 90.0;
  c.l_max_km = 100.0;
  c.l_step_km = 10.0;
  c.mu_points = 10;
  std::vector<KeyRatePoint> rows = run_sweep(c);
  std::string csv = sweep_csv(rows, true);
  CHECK(csv.rfind("distance_km,r_original,r_ad,b_opt,mu_opt_original,mu_opt_ad,plob\n", 0) ==
        0);
  CHECK(csv.find("\r") == std::string::npos);

  std::vector<KeyRatePoint> back = parse_sweep_csv(csv);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].distance_km == rows[i].distance_km);
    CHECK(back[i].r_original == rows[i].r_original);
    CHECK(back[i].r_ad == rows[i].r_ad);
    CHECK(back[i].b_opt == rows[i].b_opt);
    CHECK(back[i].mu_opt_original == rows[i].mu_opt_original);
    CHECK(back[i].mu_opt_ad == rows[i].mu_opt_ad);
    CHECK(back[i].plob == rows[i].plob);
  }

  std::string no_ad = sweep_csv(rows, false);
  std::istringstream lines(no_ad);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.find(",,,") != std::string::npos);

  CHECK_THROWS_AS(parse_sweep_csv("bogus\n"), std::runtime_error);
}

TEST_CASE("csv writer reports unwritable paths") {
  SweepConfig c;
  c.l_min_km = 100.0;
  c.l_max_km = 100.0;
  c.mu_points = 4;
  std::vector<KeyRatePoint> rows = run_sweep(c);
  CHECK_THROWS_AS(write_sweep_csv("/no/such/dir/out.csv", rows, true), std::runtime_error);
  const char* path = "sweep_test_out.csv";
  write_sweep_csv(path, rows, true);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == sweep_csv(rows, true));
  std::remove(path);
}

TEST_CASE("sweep endpoint is consistent with the bisection search") {
  SweepConfig c;
  c.use_ad = false;
  c.mu_points = 24;
  MaxDistanceResult endpoint = run_max_distance(c, false);
  c.l_min_km = std::floor(endpoint.distance_km) - 4.0;
  c.l_max_km = std::floor(endpoint.distance_km) + 4.0;
  c.l_step_km = 1.0;
  std::vector<KeyRatePoint> rows = run_sweep(c);
  double last_positive = 0.0;
  for (const KeyRatePoint& r : rows)
    if (r.r_original > 1e-12) last_positive = r.distance_km;
  CHECK(std::abs(last_positive - endpoint.distance_km) <= c.l_step_km);
}

TEST_CASE("verification driver passes on the default grid") {
  SweepConfig c;
  c.n_mc = 150000;
  VerifyReport report = run_verify(c);
  CHECK(report.pass);
  CHECK(report.checks.size() > 20);
  CHECK(report.worst_sigma < 4.0);
  std::string text = verify_report_text(report);
  CHECK(text.find("PASS") != std::string::npos);
  std::string csvr = verify_report_csv(report);
  CHECK(csvr.rfind("check,analytic,mc,sigma,pass\n", 0) == 0);
}
