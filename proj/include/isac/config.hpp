#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "isac/types.hpp"

namespace isac {

/// Physical and system parameters of the cooperative network.
struct NetworkConfig {
  int n_bs = 4;
  double bs_spacing = 140.0;         // side of the BS polygon, m
  double bs_height = 20.0;           // m
  int n0 = 4;                        // UPA is n0 x n0
  double spacing_scale = 2.0;        // element spacing = (lambda0 / 2) * scale
  double f0 = 2.6e9;                 // Hz
  int n_subcarriers = 1;
  double bandwidth = 40e6;           // Hz
  double antenna_gain = 4.0;         // combined Tx/Rx gain, linear
  double tx_sensing_power_dbm = 40.0;
  double noise_power_dbm = -110.0;   // per receiving antenna
  SensingMode mode = SensingMode::A;
  double clutter_ratio = 0.0;
  std::uint64_t rng_seed = 1;
  /// When set, replaces the dBm-derived CSI noise variance.
  std::optional<double> noise_sigma2_override;

  double lambda0() const { return kSpeedOfLight / f0; }
  void validate() const;
};

struct GridSpec {
  Vec3 center{0.0, 0.0, 40.0};
  std::array<int, 3> counts{40, 40, 1};
  Vec3 voxel_size{3.0, 3.0, 3.0};

  /// Same box, new voxel size: counts become round(extent / size), at least one.
  /// Axes with a single voxel stay single.
  GridSpec with_voxel_size(double d0) const;
};

enum class RcsPolicy {
  fold,   // coeff = sqrt(max(|rcs|, floor))
  clamp,  // coeff = sqrt(max(rcs, floor))
};

struct RcsModel {
  double mean = 0.01;      // m^2
  double variance = 0.001;
  double floor = 1e-6;
  RcsPolicy policy = RcsPolicy::fold;
};

/// Everything a scenario file can carry: network, ROI grid, scene statistics
/// and the recovery / evaluation knobs.
struct ScenarioConfig {
  NetworkConfig network;
  GridSpec grid;
  RcsModel rcs;
  int uav_count = 6;
  bool random_uav_count = false;  // Poisson with mean uav_count
  bool on_grid = true;
  int m_prior = 6;
  int max_iter = 20;
  double epsilon_scale = 1.1;
  double tau_det = 0.01;
  double ssim_range = 1.0;
  double ospa_c3 = 1.0;

  void validate() const;
};

/// Parses `key = value` lines. `#` starts a comment. Unknown keys are errors.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Applies one key/value pair; returns false if the key is not a scenario key.
bool apply_scenario_key(ScenarioConfig& cfg, const std::string& key, const std::string& value);

/// Canonical text form (stable key order, round-trippable number formatting).
std::string to_text(const ScenarioConfig& cfg);

/// Splits `key = value` lines into an ordered map (comments stripped).
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Named presets of the two ROI set-ups used throughout the experiments.
ScenarioConfig preset_2d();
ScenarioConfig preset_3d();

std::string format_double(double v);

// Value parsers shared by every key/value format. `key` only labels errors.
double parse_double(const std::string& key, const std::string& v);
int parse_int(const std::string& key, const std::string& v);
std::uint64_t parse_u64(const std::string& key, const std::string& v);
bool parse_bool(const std::string& key, const std::string& v);

}  // namespace isac
