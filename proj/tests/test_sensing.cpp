#include <doctest.h>

#include <cmath>
#include <set>

#include "isac/errors.hpp"
#include "isac/sensing.hpp"

using namespace isac;

namespace {

std::complex<double> entry_oracle(const Vec3& t, const Vec3& r, const Vec3& p, double lambda, double lambda0, double gs) {
  const double d1 = (t - p).norm();
  const double d2 = (r - p).norm();
  const double amp = lambda0 * std::sqrt(gs) / std::sqrt(4 * M_PI) / (4 * M_PI * d1 * d2);
  return std::polar(amp, -2 * M_PI * (d1 + d2) / lambda);
}

// Coherence of two points summed directly over all BS pairs and elements.
double coherence_oracle(const NetworkConfig& cfg, const Vec3& p, const Vec3& q) {
  const auto arrays = build_network(cfg);
  const double lambda = cfg.lambda0();
  std::complex<double> inner = 0;
  double np = 0, nq = 0;
  for (int a = 0; a < cfg.n_bs; ++a) {
    for (int b = a; b < cfg.n_bs; ++b) {
      if (cfg.mode == SensingMode::B && a == b) continue;
      if (cfg.mode == SensingMode::C && a != b) continue;
      for (const auto& t : arrays[std::size_t(a)].elements) {
        for (const auto& r : arrays[std::size_t(b)].elements) {
          const auto x = entry_oracle(t, r, p, lambda, lambda, cfg.antenna_gain);
          const auto y = entry_oracle(t, r, q, lambda, lambda, cfg.antenna_gain);
          inner += std::conj(x) * y;
          np += std::norm(x);
          nq += std::norm(y);
        }
      }
    }
  }
  return std::abs(inner) / std::sqrt(np * nq);
}

}  // namespace

TEST_CASE("row counts") {
  const RoiGrid g = build_grid(GridSpec{});
  NetworkConfig cfg;
  const auto a = build_sensing_matrix(cfg, g);
  CHECK(a.n_rows() == 2560);
  CHECK(a.n_voxels() == 1600);
  CHECK(a.rows.size() == 2560);
  for (auto [mode, pairs] : {std::pair{SensingMode::A, 10}, {SensingMode::B, 6}, {SensingMode::C, 4}}) {
    for (int nf : {1, 2}) {
      NetworkConfig c = cfg;
      c.mode = mode;
      c.n0 = 2;
      c.n_subcarriers = nf;
      CHECK(make_layout(c).rows() == nf * 16 * pairs);
    }
  }
  NetworkConfig c = cfg;
  c.mode = SensingMode::C;
  std::set<std::pair<int, int>> blocks;
  for (const auto& r : row_layout(make_layout(c))) blocks.insert({r.tx_bs, r.rx_bs});
  CHECK(blocks.size() == 4);
}

TEST_CASE("row ordering") {
  NetworkConfig cfg;
  cfg.n0 = 2;
  cfg.n_subcarriers = 2;
  const auto rows = row_layout(make_layout(cfg));
  CHECK(std::is_sorted(rows.begin(), rows.end()));
  CHECK(rows[0] == RowIndex{0, 0, 0, 0, 0});
  CHECK(rows[1] == RowIndex{0, 0, 0, 0, 1});
  CHECK(rows[2] == RowIndex{0, 0, 0, 1, 0});
  CHECK(rows[8] == RowIndex{0, 0, 1, 0, 0});
  CHECK(rows[32] == RowIndex{0, 1, 0, 0, 0});
}

TEST_CASE("single voxel single antenna single pair") {
  NetworkConfig cfg;
  cfg.n0 = 1;
  cfg.n_bs = 2;
  cfg.mode = SensingMode::C;
  const RoiGrid g = build_grid(Vec3(3, 1, 30), {1, 1, 1}, Vec3::Constant(2.0));
  SensingLayout layout = make_layout(cfg);
  layout.pairs = {{0, 0}};
  const auto a = build_sensing_matrix(layout, g, SensingMode::C);
  REQUIRE(a.n_rows() == 1);
  REQUIRE(a.n_voxels() == 1);
  const double d = (layout.arrays[0].mount - g.center()).norm();
  const double expect = cfg.lambda0() * std::sqrt(cfg.antenna_gain) / (std::pow(4 * M_PI, 1.5) * d * d);
  CHECK(std::abs(a.a(0, 0)) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(a.a(0, 0) == point_response(g.center(), 1.0, layout)(0));
}

TEST_CASE("empty grid is rejected") {
  // a RoiGrid cannot be empty by construction
  CHECK_THROWS_AS(build_grid(Vec3::Zero(), {0, 1, 1}, Vec3::Ones()), GeometryError);
}

TEST_CASE("column consistency and mode nesting") {
  NetworkConfig cfg;
  cfg.n0 = 2;
  const RoiGrid g = build_grid(Vec3(0, 0, 40), {6, 5, 1}, Vec3::Constant(3.0));
  const auto a = build_sensing_matrix(cfg, g);
  const SensingLayout layout = make_layout(cfg);
  for (Index n = 0; n < g.size(); ++n) {
    CHECK((a.a.col(n) - point_response(g.voxel_center(n), 1.0, layout)).norm() == 0.0);
  }
  std::map<RowIndex, Index> a_rows;
  for (std::size_t i = 0; i < a.rows.size(); ++i) a_rows[a.rows[i]] = Index(i);
  for (SensingMode mode : {SensingMode::B, SensingMode::C}) {
    NetworkConfig c = cfg;
    c.mode = mode;
    const auto sub = build_sensing_matrix(c, g);
    for (std::size_t i = 0; i < sub.rows.size(); ++i) {
      const auto it = a_rows.find(sub.rows[i]);
      REQUIRE(it != a_rows.end());
      CHECK(sub.a.row(Index(i)) == a.a.row(it->second));
    }
  }
}

TEST_CASE("psf basics") {
  CMatrix toy = CMatrix::Zero(3, 3);
  toy(0, 0) = 1;
  toy(1, 1) = {0, 2};
  toy(0, 2) = 1;
  toy(2, 2) = 1;
  CHECK(psf(toy, 0, 0) == doctest::Approx(1.0));
  CHECK(psf(toy, 0, 1) == 0.0);
  CHECK(psf(toy, 0, 2) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(max_sidelobe(toy, 0) == doctest::Approx(1 / std::sqrt(2.0)));
  CMatrix zero = toy;
  zero.col(1).setZero();
  CHECK_THROWS_AS(psf(zero, 0, 1), DimensionError);
  CHECK_THROWS_AS(max_sidelobe(CMatrix::Ones(3, 1), 0), DimensionError);
  CHECK_THROWS_AS(psf(toy, 0, 3), DimensionError);
}

TEST_CASE("psf on the default geometry") {
  NetworkConfig cfg;
  const RoiGrid g = build_grid(GridSpec{});
  const auto a = build_sensing_matrix(cfg, g);
  const Index c = g.central_voxel();
  const CMatrix scaled = a.a * std::complex<double>(-3.0, 7.5);
  Rng rng = derive_rng(4, 0);
  for (int t = 0; t < 50; ++t) {
    const Index i = std::uniform_int_distribution<Index>(0, g.size() - 1)(rng);
    const Index j = std::uniform_int_distribution<Index>(0, g.size() - 1)(rng);
    CHECK(psf(a.a, i, j) == doctest::Approx(psf(a.a, j, i)).epsilon(1e-14));
    CHECK(std::abs(psf(scaled, i, j) - psf(a.a, i, j)) < 1e-12);
  }
  const RVector row = psf_row(a.a, c);
  CHECK(row(c) == doctest::Approx(1.0));
  CHECK(row.maxCoeff() <= 1.0 + 1e-12);
  CHECK(row.minCoeff() >= 0.0);
  const double adj = psf(a.a, c, c + 1);
  CHECK(adj == doctest::Approx(coherence_oracle(cfg, g.voxel_center(c), g.voxel_center(c + 1))).epsilon(1e-9));
  CHECK(max_sidelobe(a.a, c) == doctest::Approx(max_sidelobe(make_layout(cfg), g, c)).epsilon(1e-12));

  const auto two = build_grid(Vec3(0, 0, 40), {2, 1, 1}, Vec3::Constant(3.0));
  const auto a2 = build_sensing_matrix(cfg, two);
  CHECK(max_sidelobe(a2.a, 0) == doctest::Approx(psf(a2.a, 0, 1)).epsilon(1e-12));
}

TEST_CASE("sidelobe trends") {
  ScenarioConfig base;
  const RoiGrid g = build_grid(base.grid);
  NetworkConfig wide = base.network;
  wide.spacing_scale = 4;
  CHECK(max_sidelobe(make_layout(wide), g, g.central_voxel()) <
        max_sidelobe(make_layout(base.network), g, g.central_voxel()));
  const RoiGrid fine = build_grid(base.grid.with_voxel_size(1.0));
  const RoiGrid coarse = build_grid(base.grid.with_voxel_size(5.0));
  const SensingLayout layout = make_layout(base.network);
  CHECK(max_sidelobe(layout, coarse, coarse.central_voxel()) < max_sidelobe(layout, fine, fine.central_voxel()));
}

TEST_CASE("off-grid error") {
  NetworkConfig cfg;
  const RoiGrid g = build_grid(GridSpec{});
  const SensingLayout layout = make_layout(cfg);
  const Vec3 c = g.voxel_center(g.central_voxel());
  CHECK_FALSE(offgrid_error_db(c, g, layout).has_value());
  CHECK(offgrid_error_ratio(c, g, layout) == 0.0);
  CHECK_THROWS_AS(offgrid_error_db(Vec3(100, 0, 40), g, layout), OutsideRoiError);

  // monotone until the phase error approaches pi (about lambda0 / 3);
  // beyond that the error oscillates
  const Vec3 dir = Vec3(1, 2, 0).normalized();
  double prev = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const double dp = 1e-4 + (0.03 - 1e-4) * k / 99.0;
    const auto db = offgrid_error_db(c + dp * dir, g, layout);
    REQUIRE(db.has_value());
    CHECK(*db >= prev - 1e-9);
    prev = *db;
  }
  // b = b(p) in the denominator
  const Vec3 p = c + Vec3(0.01, 0, 0);
  const CVector b = point_response(p, 1.0, layout);
  const CVector bs = point_response(c, 1.0, layout);
  CHECK(offgrid_error_ratio(p, g, layout) == doctest::Approx((b - bs).norm() / b.norm()).epsilon(1e-12));
}
