#include "isac/sensing.hpp"

#include <cmath>

namespace isac {

std::vector<RowIndex> row_layout(const SensingLayout& layout) {
  std::vector<RowIndex> rows;
  rows.reserve(std::size_t(layout.rows()));
  const int nf = int(layout.subcarriers.size());
  for (const auto& pair : layout.pairs) {
    const int nt = int(layout.arrays.at(std::size_t(pair.tx)).elements.size());
    const int nr = int(layout.arrays.at(std::size_t(pair.rx)).elements.size());
    for (int t = 0; t < nt; ++t) {
      for (int r = 0; r < nr; ++r) {
        for (int f = 0; f < nf; ++f) rows.push_back({pair.tx, pair.rx, t, r, f});
      }
    }
  }
  return rows;
}

SensingMatrix build_sensing_matrix(const NetworkConfig& config, const RoiGrid& grid) {
  return build_sensing_matrix<double>(make_layout(config), grid, config.mode);
}

double max_sidelobe(const SensingLayout& layout, const RoiGrid& grid, Index n1) {
  if (grid.size() < 2) throw DimensionError("max_sidelobe: needs at least two voxels");
  if (n1 < 0 || n1 >= grid.size()) throw DimensionError("max_sidelobe: voxel index out of range");
  CVector ref(layout.rows());
  CVector column(layout.rows());
  steering_vector(grid.voxel_center(n1), layout, ref);
  double best = -1.0;
  for (Index n = 0; n < grid.size(); ++n) {
    if (n == n1) continue;
    steering_vector(grid.voxel_center(n), layout, column);
    best = std::max(best, column_coherence(ref, column));
  }
  return best;
}

double offgrid_error_ratio(const Vec3& p, const RoiGrid& grid, const SensingLayout& layout) {
  const Vec3 center = grid.voxel_center(grid.nearest_voxel(p));
  CVector b(layout.rows());
  CVector b_star(layout.rows());
  steering_vector(p, layout, b);
  steering_vector(center, layout, b_star);
  return (b - b_star).norm() / b.norm();
}

std::optional<double> offgrid_error_db(const Vec3& p, const RoiGrid& grid, const SensingLayout& layout) {
  const double ratio = offgrid_error_ratio(p, grid, layout);
  if (ratio == 0.0) return std::nullopt;
  return 20.0 * std::log10(ratio);
}

}  // namespace isac
