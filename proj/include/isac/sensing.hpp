#pragma once

#include <optional>
#include <vector>

#include "isac/channel.hpp"
#include "isac/errors.hpp"
#include "isac/scene.hpp"

namespace isac {

struct RowIndex {
  int tx_bs = 0;
  int rx_bs = 0;
  int tx_antenna = 0;
  int rx_antenna = 0;
  int subcarrier = 0;
  friend auto operator<=>(const RowIndex&, const RowIndex&) = default;
};

std::vector<RowIndex> row_layout(const SensingLayout& layout);

/// Stacked steering vectors of every voxel center. Column n is the
/// unit-coefficient point response of voxel n.
template <typename Real>
struct BasicSensingMatrix {
  Matrix<std::complex<Real>> a;
  std::vector<RowIndex> rows;
  SensingMode mode = SensingMode::A;

  Index n_rows() const { return a.rows(); }
  Index n_voxels() const { return a.cols(); }
};

using SensingMatrix = BasicSensingMatrix<double>;

template <typename Real = double>
BasicSensingMatrix<Real> build_sensing_matrix(const SensingLayout& layout, const RoiGrid& grid,
                                              SensingMode mode) {
  if (grid.size() == 0) throw GeometryError("build_sensing_matrix: empty grid");
  BasicSensingMatrix<Real> m;
  m.mode = mode;
  m.rows = row_layout(layout);
  m.a.resize(layout.rows(), grid.size());
  CVector column(layout.rows());
  for (Index n = 0; n < grid.size(); ++n) {
    steering_vector(grid.voxel_center(n), layout, column);
    m.a.col(n) = column.cast<std::complex<Real>>();
  }
  return m;
}

/// Mode is taken from the config; the pair layout follows it.
SensingMatrix build_sensing_matrix(const NetworkConfig& config, const RoiGrid& grid);

/// |<a1, a2>| / (|a1| |a2|).
template <typename DerivedA, typename DerivedB>
double column_coherence(const Eigen::MatrixBase<DerivedA>& a1, const Eigen::MatrixBase<DerivedB>& a2) {
  const double n1 = double(a1.norm());
  const double n2 = double(a2.norm());
  if (n1 == 0.0 || n2 == 0.0) throw DimensionError("psf: zero column");
  return double(std::abs(a1.dot(a2))) / (n1 * n2);
}

template <typename Derived>
double psf(const Eigen::MatrixBase<Derived>& a, Index n1, Index n2) {
  if (n1 < 0 || n2 < 0 || n1 >= a.cols() || n2 >= a.cols()) {
    throw DimensionError("psf: voxel index out of range");
  }
  return column_coherence(a.col(n1), a.col(n2));
}

/// Coherence of column n1 with every column (entry n1 is 1).
template <typename Derived>
RVector psf_row(const Eigen::MatrixBase<Derived>& a, Index n1) {
  if (n1 < 0 || n1 >= a.cols()) throw DimensionError("psf_row: voxel index out of range");
  const auto ref = a.col(n1);
  const double ref_norm = double(ref.norm());
  if (ref_norm == 0.0) throw DimensionError("psf: zero column");
  const auto inner = (a.adjoint() * ref).eval();
  const auto norms = a.colwise().norm().eval();
  RVector out(a.cols());
  for (Index n = 0; n < a.cols(); ++n) {
    if (norms(n) == 0) throw DimensionError("psf: zero column");
    out(n) = double(std::abs(inner(n))) / (double(norms(n)) * ref_norm);
  }
  return out;
}

template <typename Derived>
double max_sidelobe(const Eigen::MatrixBase<Derived>& a, Index n1) {
  if (a.cols() < 2) throw DimensionError("max_sidelobe: needs at least two voxels");
  RVector row = psf_row(a, n1);
  row(n1) = -1.0;
  return row.maxCoeff();
}

/// Streams steering vectors voxel by voxel; never stores A.
double max_sidelobe(const SensingLayout& layout, const RoiGrid& grid, Index n1);

/// 20 log10(|b - b*| / |b|) between the steering vector at `p` and at its
/// nearest voxel center. Empty when `p` is exactly a voxel center.
std::optional<double> offgrid_error_db(const Vec3& p, const RoiGrid& grid, const SensingLayout& layout);

/// Linear relative error |b - b*| / |b|.
double offgrid_error_ratio(const Vec3& p, const RoiGrid& grid, const SensingLayout& layout);

}  // namespace isac
