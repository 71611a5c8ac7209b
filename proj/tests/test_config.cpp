#include <doctest.h>

#include "isac/config.hpp"
#include "isac/errors.hpp"

using namespace isac;

TEST_CASE("defaults describe the 2D scenario") {
  const ScenarioConfig cfg = preset_2d();
  CHECK(cfg.network.n_bs == 4);
  CHECK(cfg.network.bs_spacing == 140.0);
  CHECK(cfg.network.n0 == 4);
  CHECK(cfg.network.f0 == 2.6e9);
  CHECK(cfg.grid.counts == std::array<int, 3>{40, 40, 1});
  CHECK(cfg.grid.voxel_size.x() == 3.0);
  CHECK(cfg.uav_count == 6);
  CHECK(cfg.m_prior == 6);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("carrier wavelength") {
  NetworkConfig n;
  // 299792458 / 2.6e9
  CHECK(n.lambda0() == doctest::Approx(0.11530479).epsilon(1e-7));
}

TEST_CASE("3D preset") {
  const ScenarioConfig cfg = preset_3d();
  CHECK(cfg.grid.counts == std::array<int, 3>{20, 20, 16});
  CHECK(cfg.grid.voxel_size.z() == 5.0);
  CHECK(cfg.m_prior == 12);
}

TEST_CASE("scenario text round trip") {
  ScenarioConfig cfg = preset_3d();
  cfg.network.mode = SensingMode::B;
  cfg.network.spacing_scale = 2.5;
  cfg.network.noise_sigma2_override = 3e-16;
  cfg.network.rng_seed = 18446744073709551557ULL;
  cfg.rcs.policy = RcsPolicy::clamp;
  cfg.tau_det = 0.1 / 3.0;
  const ScenarioConfig back = parse_scenario(to_text(cfg));
  CHECK(to_text(back) == to_text(cfg));
  CHECK(back.network.rng_seed == cfg.network.rng_seed);
  CHECK(back.tau_det == cfg.tau_det);
  CHECK(*back.network.noise_sigma2_override == 3e-16);
}

TEST_CASE("parser rejects bad input") {
  CHECK_THROWS_AS(parse_scenario("bogus = 1"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("n0 = 4\nn0 = 5"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("n0 = four"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("n0 = 2.5"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("n0"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("mode = D"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("n_bs = 1"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("spacing_scale = 0.5"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("bandwidth = 0"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("clutter_ratio = 2"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("on_grid = maybe"), ConfigError);
}

TEST_CASE("comments and whitespace") {
  const auto cfg = parse_scenario("# heading\n  n0 = 5   # trailing\n\nmode=c\n");
  CHECK(cfg.network.n0 == 5);
  CHECK(cfg.network.mode == SensingMode::C);
}

TEST_CASE("voxel size change keeps the box") {
  const GridSpec g;
  for (double d0 : {1.0, 2.0, 3.0, 4.0, 5.0}) {
    const GridSpec h = g.with_voxel_size(d0);
    CHECK(h.counts[0] * d0 == doctest::Approx(120.0));
    CHECK(h.counts[1] * d0 == doctest::Approx(120.0));
    CHECK(h.counts[2] == 1);
  }
  CHECK(g.with_voxel_size(7.0).counts[0] == 17);
  CHECK(g.with_voxel_size(500.0).counts[0] == 1);
  CHECK_THROWS_AS(g.with_voxel_size(0.0), ConfigError);
}
