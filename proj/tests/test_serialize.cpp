#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qland/config.hpp"
#include "qland/serialize.hpp"
#include "qland/homological.hpp"

using namespace qland;

TEST_CASE("trigpoly json round-trip is exact") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  TrigPoly p(2, 0.75);
  for (int rep = 0; rep < 12; ++rep)
    p.add_coeff({static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3},
                cplx(unif(rng), unif(rng)));
  auto j = to_json(p);
  auto text = j.dump();
  auto q = trigpoly_from_json(json::parse(text));
  CHECK(q.dim() == p.dim());
  CHECK(q.strip_width() == p.strip_width());
  CHECK(max_coeff_distance(p, q) == 0.0);
}

TEST_CASE("quadham json round-trip and deterministic ordering") {
  auto f = TrigPoly::sin1();
  auto b = build_landau(1.0, f, 0.02);
  auto j = to_json(b.q);
  auto q2 = quadham_from_json(json::parse(j.dump()));
  CHECK(q2.class_tag() == HamClass::landau);
  for (const auto& m : all_monomials(true))
    CHECK(max_coeff_distance(b.q.term(m), q2.term(m)) == 0.0);
  // byte-identical re-serialization
  CHECK(to_json(q2).dump() == j.dump());
}

TEST_CASE("kam result json carries status and diagnostics") {
  auto f = TrigPoly::sin1();
  auto build = build_landau(1.0, f, 1e-2);
  auto sched = make_schedule(1e-2, 1.0, 6);
  std::vector<double> om{2.4};
  auto res = kam_reduce(build, om, sched);
  auto j = to_json(res);
  CHECK(j["status"] == "converged");
  CHECK(j["steps"].size() == res.steps.size());
  CHECK(j["normal_form"]["kind"] == "landau");

  std::vector<double> om2{2.0};
  auto bad = kam_reduce(build, om2, sched);
  auto jb = to_json(bad);
  CHECK(jb["status"] == "resonant");
  CHECK(jb.contains("resonant_k"));
}

TEST_CASE("csv rows and headers") {
  auto f = TrigPoly::sin1();
  std::vector<double> om{3.0};
  auto row = constants_csv_row(step_constants(f, om, 1.0));
  CHECK(row.find("3,1,") == 0);
  CHECK(row.find(",ok") != std::string::npos);
  std::vector<double> res{2.0};
  auto rrow = constants_csv_row(step_constants(f, res, 1.0));
  CHECK(rrow.find("resonant") != std::string::npos);

  GaugeSpec spec{Gauge::landau, 1.0, f, 0.0, {2.4}};
  auto traj = integrate_flow(spec, Vec4(0.0, 1.0, 0.0, 0.0), 1.0, 0.01);
  auto csv = trajectory_csv(traj, spec);
  CHECK(csv.rfind("t,x1,x2,p1,p2,abs_z1,abs_z2\n", 0) == 0);
  // first sample: |z1| = 1/sqrt(2) at (0,1,0,0)
  auto line = csv.substr(csv.find('\n') + 1);
  CHECK(line.find("0,0,1,0,0,0.707106781187,0") == 0);
}

TEST_CASE("config: parsing, defaults, validation") {
  auto raw = parse_config_text(
      "# comment\n"
      "[experiment]\n"
      "gauge = symmetric\n"
      "B0 = 2.0\n"
      "f = sin\n"
      "eps = 0.01, 0.005\n"
      "omega = 3.0\n"
      "seed = 7\n"
      "[schedule]\n"
      "sigma0 = 0.8\n"
      "M_max = 9\n"
      "[output]\n"
      "out_dir = somewhere\n");
  auto cfg = experiment_config(raw);
  CHECK(cfg.gauge == Gauge::symmetric);
  CHECK(cfg.B0 == 2.0);
  CHECK(cfg.eps_list.size() == 2);
  CHECK(cfg.sigma0 == 0.8);
  CHECK(cfg.M_max == 9);
  CHECK(cfg.seed == 7);
  CHECK(cfg.out_dir == "somewhere");

  CHECK_THROWS_AS(experiment_config(parse_config_text("[experiment]\nB0 = -1\n")),
                  config_error);
  CHECK_THROWS_AS(experiment_config(parse_config_text("[experiment]\neps = 2.0\n")),
                  config_error);
  CHECK_THROWS_AS(experiment_config(parse_config_text("[experiment]\ngauge = nope\n")),
                  config_error);
  CHECK_THROWS_AS(experiment_config(parse_config_text("[experiment]\nf = 0:1:0\n")),
                  config_error);  // nonzero mean
  CHECK_THROWS_AS(parse_config_text("key_without_value\n"), config_error);

  // custom profile: f = sin via its modes
  auto cfg2 = experiment_config(
      parse_config_text("[experiment]\nf = 1:0:-0.5; -1:0:0.5\n"));
  CHECK(max_coeff_distance(cfg2.f, TrigPoly::sin1()) < 1e-15);
}

TEST_CASE("divisor report json") {
  NormalForm base{NormalForm::Kind::landau, 2.0, 0.0};
  std::vector<double> om{2.4};
  auto rep = small_divisors(base, om, 2);
  auto j = to_json(rep);
  CHECK(j["min_modulus"].get<double>() == doctest::Approx(0.4));
  CHECK(j["entries"].size() == rep.entries.size());
  CHECK(j["worst"].contains("monomial"));
}
