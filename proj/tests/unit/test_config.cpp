#include <cstdlib>

#include <doctest.h>

#include "scgl/config.hpp"
#include "test_util.hpp"

using namespace scgl;

namespace {

const char* kPaperStable =
    "# reference parameters\n"
    "model.R = 4096\n"
    "model.mu = 1\n"
    "model.nu = 1\n"
    "model.sigma = 64\n"
    "model.T = 0.000244140625\n"
    "noise.kind = regular\n"
    "noise.epsilon = 0.0005\n"
    "run.N = 128\n"
    "run.dt = 0.0000152587890625\n"
    "run.seed = 42\n"
    "run.method = esm\n";

}  // namespace

TEST_CASE("load_config reads the reference parameter file") {
  const auto path = testutil::write_temp_file("stable.cfg", kPaperStable);
  const RunConfig cfg = load_config(path.string());
  CHECK(cfg.model.R == 4096.0);
  CHECK(cfg.model.sigma == 64.0);
  CHECK(cfg.model.T == 0.000244140625);
  CHECK(cfg.model.mu == 1.0);
  CHECK(cfg.model.nu == 1.0);
  CHECK(cfg.model.nu_in_theory_range());
  CHECK(cfg.N == 128);
  CHECK(cfg.seed == 42);
  CHECK(cfg.method == Method::Esm);
  CHECK(cfg.steps() == 16);
}

TEST_CASE("overrides win over file values") {
  const auto path = testutil::write_temp_file("stable.cfg", kPaperStable);
  const RunConfig cfg = load_config(path.string(), {"model.nu=3", "model.mu=-3"});
  CHECK(cfg.model.nu == 3.0);
  CHECK(cfg.model.mu == -3.0);
  CHECK_FALSE(cfg.model.nu_in_theory_range());
}

TEST_CASE("non-integral step count is rejected") {
  const auto path = testutil::write_temp_file(
      "badsteps.cfg", "model.R = 1\nmodel.T = 1\nrun.dt = 0.3\nrun.N = 8\n");
  CHECK_THROWS_AS(load_config(path.string()), ValidationError);
  CHECK_THROWS_WITH_AS(load_config(path.string()),
                       doctest::Contains("not an integral step count"), ValidationError);
}

TEST_CASE("validation names field and bound") {
  RunConfig cfg;
  cfg.model.T = 0.1;
  cfg.dt = 0.001;

  SUBCASE("dt above one") {
    cfg.dt = 1.5;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("run.dt must be < 1"), ValidationError);
  }
  SUBCASE("nonpositive R") {
    cfg.model.R = 0.0;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("model.R"), ValidationError);
  }
  SUBCASE("negative sigma") {
    cfg.model.sigma = -1.0;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("model.sigma"), ValidationError);
  }
  SUBCASE("epsilon out of range") {
    cfg.noise.epsilon = 1.5;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("noise.epsilon"), ValidationError);
  }
  SUBCASE("regular noise pins r to zero") {
    cfg.noise.r = 0.5;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("noise.r"), ValidationError);
  }
  SUBCASE("plane-wave mode must be retained") {
    cfg.init.kind = InitSpec::Kind::PlaneWave;
    cfg.init.mode = 100;
    cfg.N = 8;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("init.mode"), ValidationError);
  }
}

TEST_CASE("malformed files raise ParseError") {
  SUBCASE("missing equals") {
    const auto path = testutil::write_temp_file("bad1.cfg", "model.R 4\n");
    CHECK_THROWS_AS(load_config(path.string()), ParseError);
  }
  SUBCASE("bad number") {
    const auto path = testutil::write_temp_file("bad2.cfg", "model.R = four\n");
    CHECK_THROWS_AS(load_config(path.string()), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/nowhere.cfg"), ParseError);
  }
  SUBCASE("bad override") {
    const auto path = testutil::write_temp_file("ok.cfg", kPaperStable);
    CHECK_THROWS_AS(load_config(path.string(), {"model.R"}), ParseError);
  }
  SUBCASE("unknown keys are errors, not warnings") {
    const auto path = testutil::write_temp_file("typo.cfg", "model.Rr = 4\n");
    CHECK_THROWS_WITH_AS(load_config(path.string()),
                         doctest::Contains("unknown configuration key"), ParseError);
    const auto ok = testutil::write_temp_file("ok2.cfg", kPaperStable);
    CHECK_THROWS_AS(load_config(ok.string(), {"run.metod=esm"}), ParseError);
  }
}

TEST_CASE("qk_value follows the per-mode variance rules") {
  NoiseSpec regular;  // defaults: regular, epsilon 5e-4
  NoiseSpec white;
  white.kind = NoiseKind::White;
  white.r = -0.5;

  CHECK(qk_value(regular, 0) == 1.0);
  CHECK(qk_value(white, 17) == 1.0);
  // |2|^(-1-1e-3), confirmed with high-precision arithmetic.
  CHECK(qk_value(regular, 2) == doctest::Approx(0.49965354649522626).epsilon(1e-12));

  SUBCASE("mode symmetry") {
    for (long k = 1; k <= 50; ++k) CHECK(qk_value(regular, k) == qk_value(regular, -k));
  }
  SUBCASE("regularity bound with C = 1") {
    for (long k = 1; k <= 2000; ++k) {
      const double bound = qk_value(regular, k) * std::pow(static_cast<double>(k), 1.0 + 2.0 * regular.epsilon);
      CHECK(bound <= 1.0 + 1e-12);
    }
  }
  SUBCASE("custom map") {
    NoiseSpec custom;
    custom.kind = NoiseKind::Custom;
    custom.custom_qk = {{0, 1.0}, {1, 0.5}, {-1, 0.5}};
    CHECK(qk_value(custom, 1) == 0.5);
    CHECK_THROWS_AS(qk_value(custom, 2), MissingMode);
  }
}

TEST_CASE("load_config is deterministic") {
  const auto path = testutil::write_temp_file("det.cfg", kPaperStable);
  const RunConfig a = load_config(path.string(), {"run.seed=7"});
  const RunConfig b = load_config(path.string(), {"run.seed=7"});
  CHECK(to_key_values(a) == to_key_values(b));
}

TEST_CASE("SCGLE_SEED overrides the file seed but not explicit overrides") {
  const auto path = testutil::write_temp_file("envseed.cfg", kPaperStable);
  setenv("SCGLE_SEED", "999", 1);
  CHECK(load_config(path.string()).seed == 999);
  CHECK(load_config(path.string(), {"run.seed=5"}).seed == 5);
  unsetenv("SCGLE_SEED");
  CHECK(load_config(path.string()).seed == 42);
}

TEST_CASE("white noise forces r = -1/2") {
  const auto path = testutil::write_temp_file(
      "white.cfg",
      "model.R=1\nmodel.T=0.001\nrun.dt=0.001\nrun.N=8\nnoise.kind=white\n");
  const RunConfig cfg = load_config(path.string());
  CHECK(cfg.noise.r == -0.5);
}

TEST_CASE("custom qk entries parse from flat keys and must be positive") {
  const auto path = testutil::write_temp_file(
      "custom.cfg",
      "model.R=1\nmodel.T=0.001\nrun.dt=0.001\nrun.N=4\n"
      "noise.kind=custom\nnoise.qk.0=1\nnoise.qk.1=0.25\nnoise.qk.-1=0.25\nnoise.qk.2=0.1\n");
  const RunConfig cfg = load_config(path.string());
  CHECK(qk_value(cfg.noise, 1) == 0.25);

  const auto bad = testutil::write_temp_file(
      "custom_bad.cfg",
      "model.R=1\nmodel.T=0.001\nrun.dt=0.001\nrun.N=4\nnoise.kind=custom\nnoise.qk.0=-1\n");
  CHECK_THROWS_AS(load_config(bad.string()), ValidationError);
}

TEST_CASE("canonical key-value form round-trips") {
  const auto path = testutil::write_temp_file("rt.cfg", kPaperStable);
  const RunConfig cfg = load_config(path.string(), {"init.kind=plane_wave", "init.mode=2",
                                                    "init.amplitude=6.5", "run.dealias=true"});
  const RunConfig back = parse_run_config(to_key_values(cfg));
  CHECK(to_key_values(back) == to_key_values(cfg));
  CHECK(back.init.kind == InitSpec::Kind::PlaneWave);
  CHECK(back.dealias);
}
