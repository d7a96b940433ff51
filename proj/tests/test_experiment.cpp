#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "saddlemg/error.hpp"
#include "saddlemg/experiment.hpp"

using namespace saddlemg;

TEST_SUITE("experiment") {
  TEST_CASE("config keys") {
    ExperimentConfig c;
    apply_config(c, {{"problem", "elasticity-toeplitz"}, {"rho", "1/20"}, {"t", "10"},
                     {"cycle", "v"}, {"omega", "55/96"}, {"projector", "trivial"},
                     {"eps", "1e-8"}, {"max_iter", "50"}, {"finest_omega", "0.6"}});
    CHECK(c.problem == Problem::elasticity_toeplitz);
    CHECK(c.rho == doctest::Approx(0.05));
    CHECK(c.t_min == 10);
    CHECK(c.t_max == 10);
    CHECK(c.cycle == CycleKind::v);
    CHECK(c.omega_mode == OmegaMode::fixed);
    CHECK(c.omega == doctest::Approx(55.0 / 96));
    CHECK(c.projector == ProjectorChoice::trivial);
    CHECK(c.eps == 1e-8);
    CHECK(c.max_iter == 50);
    CHECK(*c.finest_omega == 0.6);
    apply_config(c, {{"omega", "adaptive"}});
    CHECK(c.omega_mode == OmegaMode::adaptive);
    apply_config(c, {{"omega", "optimal"}});
    CHECK(c.omega_mode == OmegaMode::optimal);
  }

  TEST_CASE("invalid configuration") {
    ExperimentConfig c;
    CHECK_THROWS_AS(apply_config(c, {{"colour", "blue"}}), InvalidArgument);
    CHECK_THROWS_AS(apply_config(c, {{"cycle", "f"}}), InvalidArgument);
    CHECK_THROWS_AS(apply_config(c, {{"rho", "abc"}}), InvalidArgument);
    ExperimentConfig d;
    d.t_min = 12;
    d.t_max = 9;
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
    d = ExperimentConfig{};
    d.rho = -1.0;
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
  }

  TEST_CASE("config file") {
    const std::string path = "saddlemg_test_config.txt";
    {
      std::ofstream out(path);
      out << "# sweep\nproblem = elasticity-circulant\n\nrho = 0.005  # small\ncycle=tgm\n";
    }
    const auto kv = read_config_file(path);
    std::remove(path.c_str());
    CHECK(kv.at("rho") == "0.005");
    CHECK(kv.at("cycle") == "tgm");
    CHECK(kv.size() == 3);
    CHECK_THROWS(read_config_file("does/not/exist.cfg"));
  }

  TEST_CASE("problem assembly") {
    CHECK(block_size(Problem::elasticity_circulant, 9) == 512);
    CHECK(block_size(Problem::elasticity_toeplitz, 9) == 511);
    ExperimentConfig c;
    c.rho = 0.005;
    const SaddleSystem s = assemble_problem(c, 9);
    CHECK(s.n() == 512);
    CHECK(s.fC().coeff(0).real() == doctest::Approx(4.0 * 0.005 / 3));
    c.problem = Problem::elasticity_toeplitz;
    CHECK(assemble_problem(c, 9).n() == 511);
    c.omega_mode = OmegaMode::optimal;
    c.rho = 0.5;
    CHECK(*resolve_omega(c) == doctest::Approx(55.0 / 96).epsilon(1e-15));
  }

  TEST_CASE("presets") {
    for (const auto& name : preset_names()) CHECK_FALSE(table_preset(name).empty());
    CHECK(table_preset("table1").size() == 4);
    CHECK(table_preset("table3").size() == 6);
    CHECK_THROWS_AS(table_preset("table9"), InvalidArgument);
    auto cfg = table_preset("table1").front();
    cfg.t_min = cfg.t_max = 9;
    const auto rows = run_table(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].iterations == 34);
    std::ostringstream os;
    write_table_csv(os, rows);
    CHECK(os.str().rfind("t,N,omega,iterations,converged,cycle,rho,projector,omega_coarse\n9,1024,", 0) == 0);
  }
}
