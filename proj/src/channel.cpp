#include "isac/channel.hpp"

#include <cmath>

#include "isac/errors.hpp"

namespace isac {

SubcarrierSet make_subcarriers(double f0, double bandwidth, int n_subcarriers) {
  if (n_subcarriers < 1) throw ConfigError("make_subcarriers: need at least one subcarrier");
  SubcarrierSet set;
  if (n_subcarriers == 1) {
    set.wavelengths.push_back(kSpeedOfLight / f0);
    return set;
  }
  const double step = bandwidth / (n_subcarriers - 1);
  for (int k = 0; k < n_subcarriers; ++k) {
    const double f = f0 - bandwidth / 2.0 + k * step;
    if (!(f > 0)) throw ConfigError("make_subcarriers: non-positive subcarrier frequency");
    set.wavelengths.push_back(kSpeedOfLight / f);
  }
  return set;
}

std::vector<BsPair> sensing_pairs(int n_bs, SensingMode mode) {
  std::vector<BsPair> pairs;
  for (int a = 0; a < n_bs; ++a) {
    for (int b = a; b < n_bs; ++b) {
      const bool mono = a == b;
      if (mode == SensingMode::A || (mode == SensingMode::B && !mono) || (mode == SensingMode::C && mono)) {
        pairs.push_back({a, b});
      }
    }
  }
  return pairs;
}

double SensingLayout::amplitude() const {
  return lambda0 * std::sqrt(antenna_gain) / std::sqrt(4.0 * kPi);
}

Index SensingLayout::rows() const {
  Index n = 0;
  for (const auto& pair : pairs) {
    n += Index(arrays.at(std::size_t(pair.tx)).elements.size()) * Index(arrays.at(std::size_t(pair.rx)).elements.size());
  }
  return n * Index(subcarriers.size());
}

SensingLayout make_layout(const NetworkConfig& config, std::vector<AntennaArray> arrays) {
  SensingLayout layout;
  layout.arrays = std::move(arrays);
  layout.subcarriers = make_subcarriers(config.f0, config.bandwidth, config.n_subcarriers);
  layout.pairs = sensing_pairs(int(layout.arrays.size()), config.mode);
  layout.lambda0 = config.lambda0();
  layout.antenna_gain = config.antenna_gain;
  return layout;
}

SensingLayout make_layout(const NetworkConfig& config) { return make_layout(config, build_network(config)); }

std::complex<double> voxel_channel(const Vec3& antenna, const Vec3& point, double wavelength) {
  const double d = (antenna - point).norm();
  if (!(d > 0)) throw GeometryError("voxel_channel: antenna and point coincide");
  return std::polar(1.0 / (std::sqrt(4.0 * kPi) * d), -2.0 * kPi * d / wavelength);
}

void steering_vector(const Vec3& p, const SensingLayout& layout, Eigen::Ref<CVector> out) {
  if (out.size() != layout.rows()) throw DimensionError("steering_vector: output has the wrong length");
  const std::size_t nf = layout.subcarriers.size();
  // one-way channels h[b][element * nf + f]
  std::vector<std::vector<std::complex<double>>> h(layout.arrays.size());
  std::vector<char> needed(layout.arrays.size(), 0);
  for (const auto& pair : layout.pairs) needed[std::size_t(pair.tx)] = needed[std::size_t(pair.rx)] = 1;
  for (std::size_t b = 0; b < layout.arrays.size(); ++b) {
    if (!needed[b]) continue;
    const auto& elements = layout.arrays[b].elements;
    h[b].resize(elements.size() * nf);
    for (std::size_t e = 0; e < elements.size(); ++e) {
      for (std::size_t f = 0; f < nf; ++f) h[b][e * nf + f] = voxel_channel(elements[e], p, layout.subcarriers.wavelengths[f]);
    }
  }
  const double amp = layout.amplitude();
  Index row = 0;
  for (const auto& pair : layout.pairs) {
    const auto& ht = h[std::size_t(pair.tx)];
    const auto& hr = h[std::size_t(pair.rx)];
    const std::size_t nt = layout.arrays[std::size_t(pair.tx)].elements.size();
    const std::size_t nr = layout.arrays[std::size_t(pair.rx)].elements.size();
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t f = 0; f < nf; ++f) out(row++) = amp * ht[t * nf + f] * hr[r * nf + f];
      }
    }
  }
}

CVector point_response(const Vec3& p, double coeff, const SensingLayout& layout) {
  CVector out(layout.rows());
  steering_vector(p, layout, out);
  out *= coeff;
  return out;
}

double noise_variance(const NetworkConfig& config) {
  if (config.noise_sigma2_override) return *config.noise_sigma2_override;
  const double pn = std::pow(10.0, (config.noise_power_dbm - 30.0) / 10.0);
  const double ps = std::pow(10.0, (config.tx_sensing_power_dbm - 30.0) / 10.0);
  return pn / (ps / config.n_subcarriers);
}

void add_noise(CVector& y, double sigma2, Rng& rng) {
  if (sigma2 < 0) throw std::invalid_argument("add_noise: negative variance");
  if (sigma2 == 0) return;
  std::normal_distribution<double> normal(0.0, std::sqrt(sigma2 / 2.0));
  for (Index i = 0; i < y.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    y(i) += std::complex<double>(re, im);
  }
}

std::vector<Uav> sample_clutter(const RoiGrid& grid, const RcsModel& rcs, int count, Rng& rng) {
  const Vec3 half_outer = 0.75 * grid.extent();
  std::vector<Uav> out;
  out.reserve(std::size_t(count));
  while (int(out.size()) < count) {
    Vec3 p;
    for (int k = 0; k < 3; ++k) {
      p[k] = std::uniform_real_distribution<double>(grid.center()[k] - half_outer[k], grid.center()[k] + half_outer[k])(rng);
    }
    if (grid.contains(p)) continue;
    out.push_back({p, 0.0});
  }
  for (auto& c : out) c.coeff = draw_coefficient(rcs, rng);
  return out;
}

MeasurementVector synth_offgrid(const Scene& scene, const SensingLayout& layout, double noise_sigma2,
                                double clutter_ratio, const std::vector<Uav>& clutter, Rng& rng) {
  if (clutter_ratio < 0) throw std::invalid_argument("synth_offgrid: negative clutter ratio");
  MeasurementVector m;
  m.noise_sigma2 = noise_sigma2;
  m.pair_layout = layout.pairs;
  m.y = CVector::Zero(layout.rows());
  CVector column(layout.rows());
  for (const auto& uav : scene.uavs) {
    steering_vector(uav.position, layout, column);
    m.y += uav.coeff * column;
  }
  if (clutter_ratio > 0 && !clutter.empty()) {
    CVector c = CVector::Zero(layout.rows());
    for (const auto& s : clutter) {
      steering_vector(s.position, layout, column);
      c += s.coeff * column;
    }
    const double cn = c.norm();
    if (cn > 0) m.y += (clutter_ratio * m.y.norm() / cn) * c;
  }
  add_noise(m.y, noise_sigma2, rng);
  return m;
}

MeasurementVector synth_offgrid(const Scene& scene, const SensingLayout& layout, const RoiGrid& grid,
                                double noise_sigma2, double clutter_ratio, const RcsModel& rcs, Rng& rng) {
  // drawn unconditionally so the noise stream does not depend on the ratio
  const auto clutter = sample_clutter(grid, rcs, kClutterScatterers, rng);
  return synth_offgrid(scene, layout, noise_sigma2, clutter_ratio, clutter, rng);
}

}  // namespace isac
