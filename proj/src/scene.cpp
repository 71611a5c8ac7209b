#include "isac/scene.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "isac/errors.hpp"

namespace isac {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kBoundaryTolerance = 1e-9;

}  // namespace

Rng derive_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

std::vector<AntennaArray> build_network(const NetworkConfig& config) {
  if (config.n_bs < 2) throw ConfigError("build_network: n_bs must be >= 2");
  config.validate();
  const int nb = config.n_bs;
  const double radius = config.bs_spacing / (2.0 * std::sin(kPi / nb));
  const double spacing = config.lambda0() / 2.0 * config.spacing_scale;
  const double half = (config.n0 - 1) / 2.0;

  std::vector<AntennaArray> arrays;
  arrays.reserve(std::size_t(nb));
  for (int b = 0; b < nb; ++b) {
    // first BS at 45 degrees: the corners of an axis-aligned square for nb = 4
    const double angle = kPi / 4.0 + 2.0 * kPi * b / nb;
    AntennaArray arr;
    arr.bs_index = b;
    arr.mount = Vec3(radius * std::cos(angle), radius * std::sin(angle), config.bs_height);
    arr.normal = Vec3(-std::cos(angle), -std::sin(angle), 0.0);
    const Vec3 horizontal(-arr.normal.y(), arr.normal.x(), 0.0);
    const Vec3 vertical = Vec3::UnitZ();
    arr.elements.reserve(std::size_t(config.n0 * config.n0));
    for (int iv = 0; iv < config.n0; ++iv) {
      for (int ih = 0; ih < config.n0; ++ih) {
        arr.elements.push_back(arr.mount + (ih - half) * spacing * horizontal + (iv - half) * spacing * vertical);
      }
    }
    arrays.push_back(std::move(arr));
  }
  return arrays;
}

RoiGrid::RoiGrid(const Vec3& center, std::array<int, 3> counts, const Vec3& voxel_size)
    : center_(center), counts_(counts), voxel_size_(voxel_size) {
  for (int k = 0; k < 3; ++k) {
    if (counts[k] < 1) throw GeometryError("RoiGrid: counts must be >= 1");
    if (!(voxel_size[k] > 0)) throw GeometryError("RoiGrid: voxel sizes must be > 0");
  }
}

Vec3 RoiGrid::extent() const {
  return Vec3(counts_[0] * voxel_size_.x(), counts_[1] * voxel_size_.y(), counts_[2] * voxel_size_.z());
}

Vec3 RoiGrid::lower_corner() const { return center_ - extent() / 2.0; }
Vec3 RoiGrid::upper_corner() const { return center_ + extent() / 2.0; }

Index RoiGrid::flat_index(int ix, int iy, int iz) const {
  if (ix < 0 || iy < 0 || iz < 0 || ix >= counts_[0] || iy >= counts_[1] || iz >= counts_[2]) {
    throw OutsideRoiError("RoiGrid: voxel coordinates out of range");
  }
  return Index(ix) + Index(counts_[0]) * (Index(iy) + Index(counts_[1]) * iz);
}

std::array<int, 3> RoiGrid::unflatten(Index n) const {
  if (n < 0 || n >= size()) throw OutsideRoiError("RoiGrid: voxel index out of range");
  const int ix = int(n % counts_[0]);
  const Index rest = n / counts_[0];
  return {ix, int(rest % counts_[1]), int(rest / counts_[1])};
}

Vec3 RoiGrid::voxel_center(Index n) const {
  const auto c = unflatten(n);
  Vec3 p;
  for (int k = 0; k < 3; ++k) p[k] = center_[k] + (c[std::size_t(k)] - (counts_[std::size_t(k)] - 1) / 2.0) * voxel_size_[k];
  return p;
}

Index RoiGrid::central_voxel() const {
  return flat_index(counts_[0] / 2, counts_[1] / 2, counts_[2] / 2);
}

bool RoiGrid::contains(const Vec3& p) const {
  const Vec3 lo = lower_corner();
  const Vec3 hi = upper_corner();
  for (int k = 0; k < 3; ++k) {
    if (!(p[k] >= lo[k] - kBoundaryTolerance && p[k] <= hi[k] + kBoundaryTolerance)) return false;
  }
  return true;
}

Index RoiGrid::nearest_voxel(const Vec3& p) const {
  if (!contains(p)) throw OutsideRoiError("nearest_voxel: point outside the ROI");
  const Vec3 lo = lower_corner();
  std::array<int, 3> idx{};
  for (int k = 0; k < 3; ++k) {
    const double t = (p[k] - lo[k]) / voxel_size_[k];
    double f = std::floor(t);
    // on a voxel boundary both neighbours are equidistant: keep the lower one
    if (t == f && f > 0) f -= 1;
    idx[std::size_t(k)] = std::clamp(int(f), 0, counts_[std::size_t(k)] - 1);
  }
  return flat_index(idx[0], idx[1], idx[2]);
}

std::vector<Vec3> RoiGrid::voxel_centers() const {
  std::vector<Vec3> out;
  out.reserve(std::size_t(size()));
  for (Index n = 0; n < size(); ++n) out.push_back(voxel_center(n));
  return out;
}

RoiGrid build_grid(const Vec3& center, std::array<int, 3> counts, const Vec3& voxel_size) {
  return RoiGrid(center, counts, voxel_size);
}

RoiGrid build_grid(const GridSpec& spec) { return RoiGrid(spec.center, spec.counts, spec.voxel_size); }

double coefficient_from_rcs(const RcsModel& rcs, double rcs_draw) {
  const double area = rcs.policy == RcsPolicy::fold ? std::abs(rcs_draw) : rcs_draw;
  return std::sqrt(std::max(area, rcs.floor));
}

double draw_coefficient(const RcsModel& rcs, Rng& rng) {
  std::normal_distribution<double> normal(rcs.mean, std::sqrt(rcs.variance));
  return coefficient_from_rcs(rcs, normal(rng));
}

Scene sample_scene(const RoiGrid& grid, int m, bool on_grid, const RcsModel& rcs, Rng& rng) {
  if (m < 0 || Index(m) > grid.size()) throw DimensionError("sample_scene: more UAVs than voxels");
  Scene scene;
  scene.on_grid = on_grid;
  scene.uavs.resize(std::size_t(m));

  if (on_grid) {
    // partial Fisher-Yates over the voxel indices
    std::vector<Index> voxels(std::size_t(grid.size()));
    std::iota(voxels.begin(), voxels.end(), Index{0});
    for (int i = 0; i < m; ++i) {
      std::uniform_int_distribution<Index> pick(i, grid.size() - 1);
      std::swap(voxels[std::size_t(i)], voxels[std::size_t(pick(rng))]);
      scene.uavs[std::size_t(i)].position = grid.voxel_center(voxels[std::size_t(i)]);
    }
  } else {
    constexpr int kMaxRedraws = 1000;
    const Vec3 lo = grid.lower_corner();
    const Vec3 hi = grid.upper_corner();
    std::vector<char> occupied(std::size_t(grid.size()), 0);
    for (int i = 0; i < m; ++i) {
      int redraws = 0;
      for (;;) {
        Vec3 p;
        for (int k = 0; k < 3; ++k) p[k] = std::uniform_real_distribution<double>(lo[k], hi[k])(rng);
        const Index v = grid.nearest_voxel(p);
        if (!occupied[std::size_t(v)]) {
          occupied[std::size_t(v)] = 1;
          scene.uavs[std::size_t(i)].position = p;
          break;
        }
        if (++redraws > kMaxRedraws) throw std::runtime_error("sample_scene: could not place UAVs in distinct voxels");
      }
    }
  }
  for (auto& uav : scene.uavs) uav.coeff = draw_coefficient(rcs, rng);
  scene.sigma = rasterize(grid, scene.uavs);
  return scene;
}

RVector rasterize(const RoiGrid& grid, const std::vector<Uav>& uavs) {
  RVector sigma = RVector::Zero(grid.size());
  std::vector<char> used(std::size_t(grid.size()), 0);
  for (const auto& uav : uavs) {
    const Index v = grid.nearest_voxel(uav.position);
    if (used[std::size_t(v)]) throw GeometryError("rasterize: two UAVs share voxel " + std::to_string(v));
    used[std::size_t(v)] = 1;
    sigma(v) = uav.coeff;
  }
  return sigma;
}

}  // namespace isac
