#pragma once

#include <vector>

#include "isac/config.hpp"
#include "isac/errors.hpp"
#include "isac/scene.hpp"
#include "isac/types.hpp"

namespace isac {

struct SubcarrierSet {
  std::vector<double> wavelengths;  // ordered by increasing frequency

  std::size_t size() const { return wavelengths.size(); }
};

/// Uniform subcarriers over [f0 - B/2, f0 + B/2], both edges included;
/// a single carrier sits at f0.
SubcarrierSet make_subcarriers(double f0, double bandwidth, int n_subcarriers);

struct BsPair {
  int tx = 0;
  int rx = 0;
  friend bool operator==(const BsPair&, const BsPair&) = default;
};

/// Unordered BS pairs of a sensing mode in lexicographic order.
std::vector<BsPair> sensing_pairs(int n_bs, SensingMode mode);

/// Everything needed to evaluate a steering vector: the arrays, carriers,
/// pair layout and the common amplitude lambda0 * sqrt(Gs) / sqrt(4 pi).
struct SensingLayout {
  std::vector<AntennaArray> arrays;
  SubcarrierSet subcarriers;
  std::vector<BsPair> pairs;
  double lambda0 = 0.0;
  double antenna_gain = 1.0;

  double amplitude() const;
  /// N1 = Nf * sum over pairs of (tx elements * rx elements).
  Index rows() const;
};

SensingLayout make_layout(const NetworkConfig& config);
SensingLayout make_layout(const NetworkConfig& config, std::vector<AntennaArray> arrays);

/// Free-space one-way channel e^{-j 2 pi d / lambda} / (sqrt(4 pi) d).
std::complex<double> voxel_channel(const Vec3& antenna, const Vec3& point, double wavelength);

/// Measurement response of a point scatterer, ordered pair, then tx antenna,
/// then rx antenna, then subcarrier (fastest).
CVector point_response(const Vec3& p, double coeff, const SensingLayout& layout);

/// Writes the unit-coefficient response into `out` (size layout.rows()).
void steering_vector(const Vec3& p, const SensingLayout& layout, Eigen::Ref<CVector> out);

/// CSI-domain noise variance: Pn_lin * Nf / Ps_lin, or the configured override.
double noise_variance(const NetworkConfig& config);

struct MeasurementVector {
  CVector y;
  double noise_sigma2 = 0.0;
  std::vector<BsPair> pair_layout;
};

/// Adds circularly-symmetric complex Gaussian noise of per-entry variance sigma2.
void add_noise(CVector& y, double sigma2, Rng& rng);

/// Static point scatterers in a shell around the ROI box (inside 1.5x the box).
std::vector<Uav> sample_clutter(const RoiGrid& grid, const RcsModel& rcs, int count, Rng& rng);

/// y = A sigma + z.
template <typename Derived>
MeasurementVector synth_ongrid(const Eigen::MatrixBase<Derived>& a, const RVector& sigma,
                               double noise_sigma2, Rng& rng, std::vector<BsPair> pairs = {}) {
  if (a.cols() != sigma.size()) {
    throw DimensionError("synth_ongrid: sigma length does not match sensing matrix columns");
  }
  MeasurementVector m;
  m.y = (a * sigma.cast<typename Derived::Scalar>()).template cast<std::complex<double>>();
  m.noise_sigma2 = noise_sigma2;
  m.pair_layout = std::move(pairs);
  add_noise(m.y, noise_sigma2, rng);
  return m;
}

/// y = sum of point responses + clutter + z, with clutter energy set to
/// clutter_ratio times the target-return energy.
MeasurementVector synth_offgrid(const Scene& scene, const SensingLayout& layout, double noise_sigma2,
                                double clutter_ratio, const std::vector<Uav>& clutter, Rng& rng);

/// Convenience overload drawing the default clutter field from `rng`.
MeasurementVector synth_offgrid(const Scene& scene, const SensingLayout& layout, const RoiGrid& grid,
                                double noise_sigma2, double clutter_ratio, const RcsModel& rcs, Rng& rng);

inline constexpr int kClutterScatterers = 20;

}  // namespace isac
