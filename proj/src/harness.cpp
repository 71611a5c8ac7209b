#include "isac/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "isac/blob_io.hpp"
#include "isac/channel.hpp"
#include "isac/errors.hpp"
#include "isac/recovery.hpp"

namespace isac {

namespace {

/// Neumaier summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Method parse_method(const std::string& s) {
  if (s == "sp") return Method::sp;
  if (s == "mf") return Method::mf;
  throw ConfigError("unknown method '" + s + "' (expected sp or mf)");
}

const char* method_name(Method m) { return m == Method::sp ? "sp" : "mf"; }

int draw_uav_count(const ScenarioConfig& cfg, Index n_voxels, Rng& rng) {
  if (!cfg.random_uav_count) {
    if (cfg.uav_count > n_voxels) throw ConfigError("uav_count exceeds the number of voxels");
    return cfg.uav_count;
  }
  const int m = std::poisson_distribution<int>(double(cfg.uav_count))(rng);
  return int(std::min<Index>(m, n_voxels));
}

std::vector<Vec3> positions(const std::vector<Uav>& uavs) {
  std::vector<Vec3> out;
  out.reserve(uavs.size());
  for (const auto& u : uavs) out.push_back(u.position);
  return out;
}

TrialOutcome score(const RVector& sigma_hat, const RVector& sigma, const std::vector<Uav>& truth,
                   const RoiGrid& grid, const ScenarioConfig& cfg) {
  TrialOutcome out;
  out.mse = mse(sigma_hat, sigma);
  out.ssim = ssim(sigma_hat, sigma, cfg.ssim_range);
  std::vector<Vec3> est;
  for (const auto& d : detect(sigma_hat, grid, cfg.tau_det)) est.push_back(d.position);
  out.ospa = ospa(positions(truth), est, cfg.ospa_c3);
  out.counts = count_detections(sigma_hat, sigma, cfg.tau_det);
  return out;
}

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "none") return SweepParam::none;
  if (name == "d0") return SweepParam::d0;
  if (name == "mode") return SweepParam::mode;
  if (name == "n0") return SweepParam::n0;
  if (name == "xi") return SweepParam::xi;
  if (name == "nf") return SweepParam::nf;
  if (name == "bandwidth") return SweepParam::bandwidth;
  if (name == "ps") return SweepParam::ps;
  if (name == "clutter") return SweepParam::clutter;
  if (name == "bs_spacing") return SweepParam::bs_spacing;
  if (name == "uav_count") return SweepParam::uav_count;
  throw ConfigError("unknown sweep parameter '" + name + "'");
}

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::none: return "none";
    case SweepParam::d0: return "d0";
    case SweepParam::mode: return "mode";
    case SweepParam::n0: return "n0";
    case SweepParam::xi: return "xi";
    case SweepParam::nf: return "nf";
    case SweepParam::bandwidth: return "bandwidth";
    case SweepParam::ps: return "ps";
    case SweepParam::clutter: return "clutter";
    case SweepParam::bs_spacing: return "bs_spacing";
    case SweepParam::uav_count: return "uav_count";
  }
  return "none";
}

ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepParam param, const std::string& value) {
  ScenarioConfig cfg = base;
  auto set = [&](const char* key) { apply_scenario_key(cfg, key, value); };
  switch (param) {
    case SweepParam::none: break;
    case SweepParam::d0: cfg.grid = base.grid.with_voxel_size(parse_double("d0", value)); break;
    case SweepParam::mode: set("mode"); break;
    case SweepParam::n0: set("n0"); break;
    case SweepParam::xi: set("spacing_scale"); break;
    case SweepParam::nf: set("n_subcarriers"); break;
    case SweepParam::bandwidth: set("bandwidth"); break;
    case SweepParam::ps: set("tx_sensing_power_dbm"); break;
    case SweepParam::clutter: set("clutter_ratio"); break;
    case SweepParam::bs_spacing: set("bs_spacing"); break;
    case SweepParam::uav_count:
      set("uav_count");
      set("m_prior");
      break;
  }
  return cfg;
}

std::vector<std::string> default_sweep_values(SweepParam param) {
  switch (param) {
    case SweepParam::none: return {""};
    case SweepParam::d0: return {"1", "2", "3", "4", "5"};
    case SweepParam::mode: return {"A", "B", "C"};
    case SweepParam::n0: return {"2", "3", "4", "5", "6"};
    case SweepParam::xi: return {"1", "2", "3", "4"};
    case SweepParam::nf: return {"1", "2", "4", "6"};
    case SweepParam::bandwidth: return {"10e6", "20e6", "30e6", "40e6"};
    case SweepParam::ps: return {"20", "30", "40", "50"};
    case SweepParam::clutter: return {"0", "0.001", "0.01", "0.1", "1"};
    case SweepParam::bs_spacing: return {"100", "120", "140", "160"};
    case SweepParam::uav_count: return {"2", "4", "6", "8", "10"};
  }
  return {""};
}

void ExperimentSpec::validate() const {
  base.validate();
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (methods.empty()) throw ConfigError("at least one method is required");
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  for (const auto& v : values) apply_sweep(base, sweep, v);
}

ExperimentSpec parse_experiment(const std::string& text) {
  ExperimentSpec spec;
  bool have_values = false;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "sweep") {
      spec.sweep = parse_sweep_param(value);
    } else if (key == "values") {
      spec.values = split_list(value);
      have_values = true;
    } else if (key == "trials") {
      spec.trials = parse_int(key, value);
    } else if (key == "methods") {
      spec.methods.clear();
      for (const auto& m : split_list(value)) spec.methods.push_back(parse_method(m));
    } else if (key == "seed") {
      spec.seed = parse_u64(key, value);
    } else if (key == "threads") {
      spec.threads = unsigned(parse_u64(key, value));
    } else if (!apply_scenario_key(spec.base, key, value)) {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  if (!have_values) spec.values = default_sweep_values(spec.sweep);
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  try {
    return parse_experiment(read_text(path));
  } catch (const IoError&) {
    throw ConfigError("cannot open experiment file " + path.string());
  }
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = unsigned(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(mu);
        // keep the lowest failing index so the reported error is deterministic
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

TrialContext TrialContext::build(const ScenarioConfig& config) {
  config.validate();
  RoiGrid grid = build_grid(config.grid);
  SensingLayout layout = make_layout(config.network);
  SensingMatrix a = build_sensing_matrix<double>(layout, grid, config.network.mode);
  const double sigma2 = noise_variance(config.network);
  const double eps = default_epsilon(a.n_rows(), sigma2, config.epsilon_scale);
  return TrialContext{config, std::move(grid), std::move(layout), std::move(a), sigma2, eps};
}

TrialOutcome run_trial(const TrialContext& ctx, Method method, std::uint64_t seed, std::uint64_t trial) {
  Rng rng = derive_rng(seed, trial);
  const auto& cfg = ctx.config;
  const int m = draw_uav_count(cfg, ctx.grid.size(), rng);
  const Scene scene = sample_scene(ctx.grid, m, cfg.on_grid, cfg.rcs, rng);
  const MeasurementVector meas =
      synth_offgrid(scene, ctx.layout, ctx.grid, ctx.noise_sigma2, cfg.network.clutter_ratio, cfg.rcs, rng);
  RVector sigma_hat;
  if (method == Method::sp) {
    SubspacePursuitOptions opt;
    opt.m_prior = std::min<Index>({Index(cfg.m_prior), ctx.a.n_voxels(), ctx.a.n_rows()});
    opt.epsilon = ctx.epsilon;
    opt.max_iter = cfg.max_iter;
    sigma_hat = subspace_pursuit(ctx.a.a, meas.y, opt).sigma_hat;
  } else {
    sigma_hat = matched_filter_coefficients(ctx.a.a, meas.y);
  }
  return score(sigma_hat, scene.sigma, scene.uavs, ctx.grid, cfg);
}

MetricReport aggregate(const std::vector<TrialOutcome>& outcomes) {
  MetricReport r;
  CompensatedSum m, s, o;
  for (const auto& t : outcomes) {
    m.add(t.mse);
    s.add(t.ssim);
    o.add(t.ospa);
    r.counts += t.counts;
  }
  if (!outcomes.empty()) {
    const double n = double(outcomes.size());
    r.mse = m.value() / n;
    r.ssim = s.value() / n;
    r.ospa = o.value() / n;
  }
  r.dr = r.counts.dr();
  r.far = r.counts.far();
  return r;
}

MonteCarloTable run_monte_carlo(const ExperimentSpec& spec) {
  spec.validate();
  MonteCarloTable table;
  table.sweep = spec.sweep;
  for (const auto& value : spec.values) {
    std::optional<TrialContext> ctx;
    std::string reason;
    try {
      const ScenarioConfig cfg = apply_sweep(spec.base, spec.sweep, value);
      if (cfg.uav_count > Index(build_grid(cfg.grid).size())) {
        throw DimensionError("more UAVs than voxels");
      }
      ctx = TrialContext::build(cfg);
    } catch (const std::exception& e) {
      reason = e.what();
    }
    for (Method method : spec.methods) {
      SweepRow row;
      row.value = value;
      row.method = method;
      if (!ctx) {
        row.skipped = reason;
        table.rows.push_back(row);
        continue;
      }
      std::vector<TrialOutcome> outcomes(std::size_t(spec.trials));
      try {
        parallel_for(outcomes.size(), spec.threads,
                     [&](std::size_t i) { outcomes[i] = run_trial(*ctx, method, spec.seed, i); });
        row.trials = spec.trials;
        row.report = aggregate(outcomes);
      } catch (const std::exception& e) {
        row.skipped = e.what();
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

std::string report_csv_header() { return "mse,ssim,ospa,dr,far,targets,detections,hits"; }

std::string format_report_csv(const MetricReport& r) {
  std::ostringstream os;
  os << format_double(r.mse) << ',' << format_double(r.ssim) << ',' << format_double(r.ospa) << ','
     << format_double(r.dr) << ',' << format_double(r.far) << ',' << r.counts.targets << ','
     << r.counts.detections << ',' << r.counts.hits;
  return os.str();
}

void write_csv(std::ostream& os, const MonteCarloTable& table) {
  os << "sweep,value,method,metric,mean\n";
  const std::string sweep = to_string(table.sweep);
  for (const auto& row : table.rows) {
    const std::string prefix = sweep + ',' + row.value + ',' + method_name(row.method) + ',';
    if (!row.skipped.empty()) {
      os << prefix << "skipped," << csv_safe(row.skipped) << '\n';
      continue;
    }
    const auto& r = row.report;
    os << prefix << "mse," << format_double(r.mse) << '\n';
    os << prefix << "ssim," << format_double(r.ssim) << '\n';
    os << prefix << "ospa," << format_double(r.ospa) << '\n';
    os << prefix << "dr," << format_double(r.dr) << '\n';
    os << prefix << "far," << format_double(r.far) << '\n';
    os << prefix << "trials," << row.trials << '\n';
    os << prefix << "targets," << r.counts.targets << '\n';
    os << prefix << "detections," << r.counts.detections << '\n';
    os << prefix << "hits," << r.counts.hits << '\n';
  }
}

// ---- datasets ----

namespace {

constexpr const char* kManifestName = "manifest.txt";
constexpr std::size_t kChunk = 256;

std::string truth_csv(const std::vector<std::vector<Uav>>& truth) {
  std::ostringstream os;
  os << "sample,uav,x,y,z,coeff\n";
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t k = 0; k < truth[i].size(); ++k) {
      const auto& u = truth[i][k];
      os << i << ',' << k << ',' << format_double(u.position.x()) << ',' << format_double(u.position.y()) << ','
         << format_double(u.position.z()) << ',' << format_double(u.coeff) << '\n';
    }
  }
  return os.str();
}

std::vector<std::vector<Uav>> parse_truth_csv(const std::string& text, std::size_t count) {
  std::vector<std::vector<Uav>> truth(count);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "sample,uav,x,y,z,coeff") throw IoError("truth.csv: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(row, field, ',')) f.push_back(field);
    if (f.size() != 6) throw IoError("truth.csv: expected 6 fields");
    try {
      const std::size_t i = std::stoull(f[0]);
      if (i >= count) throw IoError("truth.csv: sample index out of range");
      truth[i].push_back({Vec3(std::stod(f[2]), std::stod(f[3]), std::stod(f[4])), std::stod(f[5])});
    } catch (const std::logic_error&) {
      throw IoError("truth.csv: malformed number");
    }
  }
  return truth;
}

std::string manifest_text(const DatasetManifest& m) {
  std::ostringstream os;
  os << "format_version = " << m.format_version << '\n';
  os << "count = " << m.count << '\n';
  os << "grid_nx = " << m.grid_counts[0] << '\n';
  os << "grid_ny = " << m.grid_counts[1] << '\n';
  os << "grid_nz = " << m.grid_counts[2] << '\n';
  os << "n_voxels = " << m.n_voxels << '\n';
  os << "seed = " << m.seed << '\n';
  os << "on_grid = " << (m.on_grid ? "true" : "false") << '\n';
  os << "sigma_pri_p99 = " << format_double(m.sigma_pri_p99) << '\n';
  os << "sigma_pri_file = " << m.sigma_pri_file << '\n';
  os << "sigma_pri_checksum = " << m.sigma_pri_checksum << '\n';
  os << "sigma_file = " << m.sigma_file << '\n';
  os << "sigma_checksum = " << m.sigma_checksum << '\n';
  os << "truth_file = " << m.truth_file << '\n';
  os << "truth_checksum = " << m.truth_checksum << '\n';
  if (!m.measurement_file.empty()) {
    os << "measurement_file = " << m.measurement_file << '\n';
    os << "measurement_checksum = " << m.measurement_checksum << '\n';
    os << "measurement_length = " << m.measurement_length << '\n';
  }
  std::istringstream cfg(to_text(m.config));
  std::string line;
  while (std::getline(cfg, line)) os << "config." << line << '\n';
  return os.str();
}

double percentile99(std::vector<float> values) {
  if (values.empty()) return 0.0;
  const std::size_t rank = std::size_t(std::ceil(0.99 * double(values.size())));
  const std::size_t k = std::max<std::size_t>(rank, 1) - 1;
  std::nth_element(values.begin(), values.begin() + std::ptrdiff_t(k), values.end());
  return values[k];
}

}  // namespace

DatasetManifest export_dataset(const ScenarioConfig& config, const DatasetOptions& options,
                               const std::filesystem::path& dir) {
  ScenarioConfig cfg = config;
  cfg.on_grid = options.on_grid.value_or(false);
  cfg.validate();

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());

  DatasetManifest m;
  m.count = options.count;
  m.config = cfg;
  m.seed = options.seed;
  m.on_grid = cfg.on_grid;
  m.grid_counts = cfg.grid.counts;

  std::vector<std::filesystem::path> created;
  try {
    const TrialContext ctx = TrialContext::build(cfg);
    m.n_voxels = ctx.grid.size();
    const std::size_t nv = std::size_t(m.n_voxels);
    std::vector<float> sigma_pri(m.count * nv);
    std::vector<float> sigma(m.count * nv);
    m.truth.resize(m.count);

    std::ofstream meas_out;
    if (options.with_measurements) {
      m.measurement_file = "y.c128";
      m.measurement_length = ctx.a.n_rows();
      created.push_back(dir / m.measurement_file);
      meas_out.open(dir / m.measurement_file, std::ios::binary | std::ios::trunc);
      if (!meas_out) throw IoError("cannot create " + (dir / m.measurement_file).string());
    }

    for (std::size_t start = 0; start < m.count; start += kChunk) {
      const std::size_t n = std::min(kChunk, m.count - start);
      std::vector<CVector> ys(options.with_measurements ? n : 0);
      parallel_for(n, options.threads, [&](std::size_t k) {
        const std::size_t i = start + k;
        Rng rng = derive_rng(options.seed, i);
        const int count = draw_uav_count(cfg, ctx.grid.size(), rng);
        Scene scene = sample_scene(ctx.grid, count, cfg.on_grid, cfg.rcs, rng);
        MeasurementVector meas =
            synth_offgrid(scene, ctx.layout, ctx.grid, ctx.noise_sigma2, cfg.network.clutter_ratio, cfg.rcs, rng);
        const RVector pri = matched_filter(ctx.a.a, meas.y);
        for (std::size_t v = 0; v < nv; ++v) {
          sigma_pri[i * nv + v] = float(pri(Index(v)));
          sigma[i * nv + v] = float(scene.sigma(Index(v)));
        }
        m.truth[i] = std::move(scene.uavs);
        if (options.with_measurements) ys[k] = std::move(meas.y);
      });
      for (const auto& y : ys) append_c128(meas_out, std::span(y.data(), std::size_t(y.size())));
    }
    if (meas_out.is_open()) {
      meas_out.close();
      if (!meas_out) throw IoError("write failed: " + (dir / m.measurement_file).string());
    }

    m.sigma_pri_p99 = percentile99(sigma_pri);
    created.push_back(dir / m.sigma_pri_file);
    write_f32(dir / m.sigma_pri_file, sigma_pri);
    created.push_back(dir / m.sigma_file);
    write_f32(dir / m.sigma_file, sigma);
    created.push_back(dir / m.truth_file);
    write_text_atomic(dir / m.truth_file, truth_csv(m.truth));

    m.sigma_pri_checksum = file_checksum(dir / m.sigma_pri_file);
    m.sigma_checksum = file_checksum(dir / m.sigma_file);
    m.truth_checksum = file_checksum(dir / m.truth_file);
    if (!m.measurement_file.empty()) m.measurement_checksum = file_checksum(dir / m.measurement_file);
    created.push_back(dir / kManifestName);
    write_text_atomic(dir / kManifestName, manifest_text(m));
  } catch (...) {
    for (const auto& p : created) std::filesystem::remove(p, ec);
    throw;
  }
  return m;
}

DatasetManifest read_manifest(const std::filesystem::path& dir) {
  const auto kv = parse_key_values(read_text(dir / kManifestName));
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw IoError("manifest: missing key '" + key + "'");
    return it->second;
  };
  auto get_u64 = [&](const std::string& key) { return parse_u64(key, get(key)); };

  DatasetManifest m;
  m.format_version = int(get_u64("format_version"));
  if (m.format_version != kDatasetFormatVersion) throw IoError("manifest: unsupported format version");
  m.count = std::size_t(get_u64("count"));
  m.grid_counts = {int(get_u64("grid_nx")), int(get_u64("grid_ny")), int(get_u64("grid_nz"))};
  m.n_voxels = Index(get_u64("n_voxels"));
  m.seed = get_u64("seed");
  m.on_grid = parse_bool("on_grid", get("on_grid"));
  m.sigma_pri_p99 = parse_double("sigma_pri_p99", get("sigma_pri_p99"));
  m.sigma_pri_file = get("sigma_pri_file");
  m.sigma_pri_checksum = get("sigma_pri_checksum");
  m.sigma_file = get("sigma_file");
  m.sigma_checksum = get("sigma_checksum");
  m.truth_file = get("truth_file");
  m.truth_checksum = get("truth_checksum");
  if (kv.count("measurement_file")) {
    m.measurement_file = get("measurement_file");
    m.measurement_checksum = get("measurement_checksum");
    m.measurement_length = Index(get_u64("measurement_length"));
  }
  std::string cfg_text;
  for (const auto& [key, value] : kv) {
    if (key.rfind("config.", 0) == 0) cfg_text += key.substr(7) + " = " + value + '\n';
  }
  m.config = parse_scenario(cfg_text);
  if (Index(m.config.grid.counts[0]) * m.config.grid.counts[1] * m.config.grid.counts[2] != m.n_voxels) {
    throw IoError("manifest: grid counts disagree with n_voxels");
  }
  m.truth = parse_truth_csv(read_text(dir / m.truth_file), m.count);
  return m;
}

bool verify_checksums(const DatasetManifest& m, const std::filesystem::path& dir) {
  try {
    if (file_checksum(dir / m.sigma_pri_file) != m.sigma_pri_checksum) return false;
    if (file_checksum(dir / m.sigma_file) != m.sigma_checksum) return false;
    if (file_checksum(dir / m.truth_file) != m.truth_checksum) return false;
    if (!m.measurement_file.empty() && file_checksum(dir / m.measurement_file) != m.measurement_checksum) {
      return false;
    }
  } catch (const IoError&) {
    return false;
  }
  return true;
}

std::vector<float> read_images(const std::filesystem::path& path, const DatasetManifest& m) {
  std::vector<float> out = read_f32(path);
  if (out.size() != m.count * std::size_t(m.n_voxels)) {
    throw DimensionError("image blob has " + std::to_string(out.size()) + " values, expected " +
                         std::to_string(m.count * std::size_t(m.n_voxels)));
  }
  return out;
}

MetricReport eval_predictions(const std::vector<float>& predictions, const DatasetManifest& m, double tau_det) {
  const std::size_t nv = std::size_t(m.n_voxels);
  if (predictions.size() != m.count * nv) throw DimensionError("eval: predictions do not match the manifest shape");
  if (m.truth.size() != m.count) throw DimensionError("eval: truth records do not match the sample count");
  ScenarioConfig cfg = m.config;
  cfg.tau_det = tau_det;
  const RoiGrid grid = build_grid(cfg.grid);
  std::vector<TrialOutcome> outcomes(m.count);
  for (std::size_t i = 0; i < m.count; ++i) {
    const RVector pred = Eigen::Map<const Eigen::VectorXf>(predictions.data() + i * nv, Index(nv)).cast<double>();
    // labels go through float32 like the stored blobs
    const RVector label = rasterize(grid, m.truth[i]).cast<float>().cast<double>();
    outcomes[i] = score(pred, label, m.truth[i], grid, cfg);
  }
  return aggregate(outcomes);
}

std::vector<PsfPoint> psf_sweep(const ScenarioConfig& base, SweepParam param, const std::vector<std::string>& values,
                                Index ref_voxel) {
  std::vector<PsfPoint> out;
  for (const auto& value : values) {
    const ScenarioConfig cfg = apply_sweep(base, param, value);
    cfg.validate();
    const RoiGrid grid = build_grid(cfg.grid);
    const SensingLayout layout = make_layout(cfg.network);
    const Index ref = ref_voxel < 0 ? grid.central_voxel() : ref_voxel;
    out.push_back({value, max_sidelobe(layout, grid, ref)});
  }
  return out;
}

}  // namespace isac
