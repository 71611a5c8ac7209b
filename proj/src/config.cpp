#include "isac/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "isac/errors.hpp"

namespace isac {

SensingMode parse_mode(std::string_view text) {
  if (text == "A" || text == "a") return SensingMode::A;
  if (text == "B" || text == "b") return SensingMode::B;
  if (text == "C" || text == "c") return SensingMode::C;
  throw ConfigError("unknown sensing mode '" + std::string(text) + "'");
}

char mode_letter(SensingMode mode) {
  switch (mode) {
    case SensingMode::A: return 'A';
    case SensingMode::B: return 'B';
    case SensingMode::C: return 'C';
  }
  return '?';
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void NetworkConfig::validate() const {
  if (n_bs < 2) throw ConfigError("n_bs must be >= 2");
  if (n0 < 1) throw ConfigError("n0 must be >= 1");
  if (spacing_scale < 1.0) throw ConfigError("spacing_scale must be >= 1");
  if (n_subcarriers < 1) throw ConfigError("n_subcarriers must be >= 1");
  if (!(bandwidth > 0)) throw ConfigError("bandwidth must be > 0");
  if (!(f0 > 0)) throw ConfigError("f0 must be > 0");
  if (n_subcarriers > 1 && !(f0 - bandwidth / 2 > 0)) throw ConfigError("lowest subcarrier frequency must be > 0");
  if (!(bs_spacing > 0)) throw ConfigError("bs_spacing must be > 0");
  if (!(antenna_gain > 0)) throw ConfigError("antenna_gain must be > 0");
  if (clutter_ratio < 0 || clutter_ratio > 1) throw ConfigError("clutter_ratio must lie in [0, 1]");
  if (noise_sigma2_override && *noise_sigma2_override < 0) throw ConfigError("noise_sigma2 must be >= 0");
}

GridSpec GridSpec::with_voxel_size(double d0) const {
  if (!(d0 > 0)) throw ConfigError("voxel size must be > 0");
  GridSpec out = *this;
  for (int k = 0; k < 3; ++k) {
    if (counts[k] > 1) {
      const double extent = counts[k] * voxel_size[k];
      out.counts[k] = std::max(1, int(std::lround(extent / d0)));
    }
    out.voxel_size[k] = d0;
  }
  return out;
}

void ScenarioConfig::validate() const {
  network.validate();
  for (int k = 0; k < 3; ++k) {
    if (grid.counts[k] < 1) throw ConfigError("grid counts must be >= 1");
    if (!(grid.voxel_size[k] > 0)) throw ConfigError("voxel sizes must be > 0");
  }
  if (uav_count < 0) throw ConfigError("uav_count must be >= 0");
  if (m_prior < 1) throw ConfigError("m_prior must be >= 1");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (epsilon_scale < 0) throw ConfigError("epsilon_scale must be >= 0");
  if (tau_det < 0) throw ConfigError("tau_det must be >= 0");
  if (!(ssim_range > 0)) throw ConfigError("ssim_range must be > 0");
  if (ospa_c3 < 0) throw ConfigError("ospa_c3 must be >= 0");
  if (rcs.variance < 0) throw ConfigError("rcs_variance must be >= 0");
  if (!(rcs.floor > 0)) throw ConfigError("rcs_floor must be > 0");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

double parse_double(const std::string& key, const std::string& v) {
  double out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d != std::floor(d)) throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  return int(d);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("key '" + key + "': not an unsigned integer: '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': not a boolean: '" + v + "'");
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!out.emplace(key, value).second) throw ConfigError("duplicate key '" + key + "'");
  }
  return out;
}

bool apply_scenario_key(ScenarioConfig& cfg, const std::string& key, const std::string& v) {
  auto& n = cfg.network;
  if (key == "n_bs") n.n_bs = parse_int(key, v);
  else if (key == "bs_spacing") n.bs_spacing = parse_double(key, v);
  else if (key == "bs_height") n.bs_height = parse_double(key, v);
  else if (key == "n0") n.n0 = parse_int(key, v);
  else if (key == "spacing_scale") n.spacing_scale = parse_double(key, v);
  else if (key == "f0") n.f0 = parse_double(key, v);
  else if (key == "n_subcarriers") n.n_subcarriers = parse_int(key, v);
  else if (key == "bandwidth") n.bandwidth = parse_double(key, v);
  else if (key == "antenna_gain") n.antenna_gain = parse_double(key, v);
  else if (key == "tx_sensing_power_dbm") n.tx_sensing_power_dbm = parse_double(key, v);
  else if (key == "noise_power_dbm") n.noise_power_dbm = parse_double(key, v);
  else if (key == "mode") n.mode = parse_mode(v);
  else if (key == "clutter_ratio") n.clutter_ratio = parse_double(key, v);
  else if (key == "rng_seed") n.rng_seed = parse_u64(key, v);
  else if (key == "noise_sigma2") {
    if (v == "auto") n.noise_sigma2_override.reset();
    else n.noise_sigma2_override = parse_double(key, v);
  }
  else if (key == "roi_center_x") cfg.grid.center.x() = parse_double(key, v);
  else if (key == "roi_center_y") cfg.grid.center.y() = parse_double(key, v);
  else if (key == "roi_center_z") cfg.grid.center.z() = parse_double(key, v);
  else if (key == "grid_nx") cfg.grid.counts[0] = parse_int(key, v);
  else if (key == "grid_ny") cfg.grid.counts[1] = parse_int(key, v);
  else if (key == "grid_nz") cfg.grid.counts[2] = parse_int(key, v);
  else if (key == "voxel_size") cfg.grid.voxel_size.setConstant(parse_double(key, v));
  else if (key == "voxel_dx") cfg.grid.voxel_size.x() = parse_double(key, v);
  else if (key == "voxel_dy") cfg.grid.voxel_size.y() = parse_double(key, v);
  else if (key == "voxel_dz") cfg.grid.voxel_size.z() = parse_double(key, v);
  else if (key == "rcs_mean") cfg.rcs.mean = parse_double(key, v);
  else if (key == "rcs_variance") cfg.rcs.variance = parse_double(key, v);
  else if (key == "rcs_floor") cfg.rcs.floor = parse_double(key, v);
  else if (key == "rcs_policy") {
    if (v == "fold") cfg.rcs.policy = RcsPolicy::fold;
    else if (v == "clamp") cfg.rcs.policy = RcsPolicy::clamp;
    else throw ConfigError("rcs_policy must be 'fold' or 'clamp'");
  }
  else if (key == "uav_count") cfg.uav_count = parse_int(key, v);
  else if (key == "random_uav_count") cfg.random_uav_count = parse_bool(key, v);
  else if (key == "on_grid") cfg.on_grid = parse_bool(key, v);
  else if (key == "m_prior") cfg.m_prior = parse_int(key, v);
  else if (key == "max_iter") cfg.max_iter = parse_int(key, v);
  else if (key == "epsilon_scale") cfg.epsilon_scale = parse_double(key, v);
  else if (key == "tau_det") cfg.tau_det = parse_double(key, v);
  else if (key == "ssim_range") cfg.ssim_range = parse_double(key, v);
  else if (key == "ospa_c3") cfg.ospa_c3 = parse_double(key, v);
  else return false;
  return true;
}

ScenarioConfig parse_scenario(const std::string& text) {
  ScenarioConfig cfg;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (!apply_scenario_key(cfg, key, value)) throw ConfigError("unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string to_text(const ScenarioConfig& cfg) {
  const auto& n = cfg.network;
  std::ostringstream os;
  auto kv = [&](const char* k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto kd = [&](const char* k, double v) { kv(k, format_double(v)); };
  kv("n_bs", std::to_string(n.n_bs));
  kd("bs_spacing", n.bs_spacing);
  kd("bs_height", n.bs_height);
  kv("n0", std::to_string(n.n0));
  kd("spacing_scale", n.spacing_scale);
  kd("f0", n.f0);
  kv("n_subcarriers", std::to_string(n.n_subcarriers));
  kd("bandwidth", n.bandwidth);
  kd("antenna_gain", n.antenna_gain);
  kd("tx_sensing_power_dbm", n.tx_sensing_power_dbm);
  kd("noise_power_dbm", n.noise_power_dbm);
  kv("mode", std::string(1, mode_letter(n.mode)));
  kd("clutter_ratio", n.clutter_ratio);
  kv("rng_seed", std::to_string(n.rng_seed));
  kv("noise_sigma2", n.noise_sigma2_override ? format_double(*n.noise_sigma2_override) : "auto");
  kd("roi_center_x", cfg.grid.center.x());
  kd("roi_center_y", cfg.grid.center.y());
  kd("roi_center_z", cfg.grid.center.z());
  kv("grid_nx", std::to_string(cfg.grid.counts[0]));
  kv("grid_ny", std::to_string(cfg.grid.counts[1]));
  kv("grid_nz", std::to_string(cfg.grid.counts[2]));
  kd("voxel_dx", cfg.grid.voxel_size.x());
  kd("voxel_dy", cfg.grid.voxel_size.y());
  kd("voxel_dz", cfg.grid.voxel_size.z());
  kd("rcs_mean", cfg.rcs.mean);
  kd("rcs_variance", cfg.rcs.variance);
  kd("rcs_floor", cfg.rcs.floor);
  kv("rcs_policy", cfg.rcs.policy == RcsPolicy::fold ? "fold" : "clamp");
  kv("uav_count", std::to_string(cfg.uav_count));
  kv("random_uav_count", cfg.random_uav_count ? "true" : "false");
  kv("on_grid", cfg.on_grid ? "true" : "false");
  kv("m_prior", std::to_string(cfg.m_prior));
  kv("max_iter", std::to_string(cfg.max_iter));
  kd("epsilon_scale", cfg.epsilon_scale);
  kd("tau_det", cfg.tau_det);
  kd("ssim_range", cfg.ssim_range);
  kd("ospa_c3", cfg.ospa_c3);
  return os.str();
}

ScenarioConfig preset_2d() {
  return ScenarioConfig{};
}

ScenarioConfig preset_3d() {
  ScenarioConfig cfg;
  cfg.grid.center = Vec3(0.0, 0.0, 80.0);
  cfg.grid.counts = {20, 20, 16};
  cfg.grid.voxel_size.setConstant(5.0);
  cfg.network.spacing_scale = 1.0;
  cfg.network.n_subcarriers = 6;
  cfg.uav_count = 12;
  cfg.m_prior = 12;
  return cfg;
}

}  // namespace isac
