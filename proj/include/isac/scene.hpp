#pragma once

#include <array>
#include <random>
#include <vector>

#include "isac/config.hpp"
#include "isac/types.hpp"

namespace isac {

using Rng = std::mt19937_64;

/// Independent generator for stream `stream` of a run seeded with `seed`.
Rng derive_rng(std::uint64_t seed, std::uint64_t stream);

struct AntennaArray {
  int bs_index = 0;
  Vec3 mount{Vec3::Zero()};
  Vec3 normal{Vec3::UnitX()};
  std::vector<Vec3> elements;  // row-major over (vertical, horizontal)
};

std::vector<AntennaArray> build_network(const NetworkConfig& config);

class RoiGrid {
 public:
  RoiGrid(const Vec3& center, std::array<int, 3> counts, const Vec3& voxel_size);

  const Vec3& center() const { return center_; }
  const std::array<int, 3>& counts() const { return counts_; }
  const Vec3& voxel_size() const { return voxel_size_; }
  Index size() const { return Index(counts_[0]) * counts_[1] * counts_[2]; }
  Vec3 extent() const;
  Vec3 lower_corner() const;
  Vec3 upper_corner() const;

  // x fastest, then y, then z
  Index flat_index(int ix, int iy, int iz) const;
  std::array<int, 3> unflatten(Index n) const;
  Vec3 voxel_center(Index n) const;
  Index central_voxel() const;

  bool contains(const Vec3& p) const;
  /// Nearest voxel center; ties go to the lowest flat index.
  /// Throws OutsideRoiError when `p` lies outside the box.
  Index nearest_voxel(const Vec3& p) const;

  std::vector<Vec3> voxel_centers() const;

 private:
  Vec3 center_;
  std::array<int, 3> counts_;
  Vec3 voxel_size_;
};

RoiGrid build_grid(const Vec3& center, std::array<int, 3> counts, const Vec3& voxel_size);
RoiGrid build_grid(const GridSpec& spec);

struct Uav {
  Vec3 position;
  double coeff = 0.0;
};

struct Scene {
  std::vector<Uav> uavs;
  RVector sigma;  // ground-truth image, one entry per voxel
  bool on_grid = true;
};

double draw_coefficient(const RcsModel& rcs, Rng& rng);
double coefficient_from_rcs(const RcsModel& rcs, double rcs_draw);

/// `m` UAVs in distinct voxels. On-grid scenes sit exactly on voxel centers;
/// off-grid scenes are uniform in the ROI box, redrawn on voxel collisions.
Scene sample_scene(const RoiGrid& grid, int m, bool on_grid, const RcsModel& rcs, Rng& rng);

/// Ground-truth image for a fixed list of UAVs.
RVector rasterize(const RoiGrid& grid, const std::vector<Uav>& uavs);

}  // namespace isac
