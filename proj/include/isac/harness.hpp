#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "isac/config.hpp"
#include "isac/metrics.hpp"
#include "isac/scene.hpp"
#include "isac/sensing.hpp"

namespace isac {

enum class Method { sp, mf };

/// Parameters an experiment can sweep over.
enum class SweepParam { none, d0, mode, n0, xi, nf, bandwidth, ps, clutter, bs_spacing, uav_count };

SweepParam parse_sweep_param(const std::string& name);
std::string to_string(SweepParam p);

/// Applies one sweep value. Mode values are 'A', 'B' or 'C'; everything
/// else is numeric. Voxel-size sweeps keep the ROI box fixed.
ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepParam param, const std::string& value);

struct ExperimentSpec {
  ScenarioConfig base;
  SweepParam sweep = SweepParam::none;
  std::vector<std::string> values;
  int trials = 200;
  std::vector<Method> methods{Method::sp};
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

/// Scenario keys plus: sweep, values (comma list), trials, methods (sp,mf), seed, threads.
ExperimentSpec parse_experiment(const std::string& text);
ExperimentSpec load_experiment(const std::filesystem::path& path);

struct SweepRow {
  std::string value;
  Method method = Method::sp;
  int trials = 0;
  MetricReport report;
  std::string skipped;  // reason, when the point could not be run
};

struct MonteCarloTable {
  SweepParam sweep = SweepParam::none;
  std::vector<SweepRow> rows;
};

MonteCarloTable run_monte_carlo(const ExperimentSpec& spec);

/// Long format: sweep,value,method,metric,mean.
void write_csv(std::ostream& os, const MonteCarloTable& table);

/// Per-trial outcome, exposed for tests and custom aggregation.
struct TrialOutcome {
  double mse = 0.0;
  double ssim = 0.0;
  double ospa = 0.0;
  DetectionCounts counts;
};

/// Geometry and sensing matrix shared by every trial of one sweep point.
struct TrialContext {
  ScenarioConfig config;
  RoiGrid grid;
  SensingLayout layout;
  SensingMatrix a;
  double noise_sigma2 = 0.0;
  double epsilon = 0.0;

  static TrialContext build(const ScenarioConfig& config);
};

/// Runs trial `trial`; its random stream depends only on (seed, trial).
TrialOutcome run_trial(const TrialContext& ctx, Method method, std::uint64_t seed, std::uint64_t trial);

/// Order-independent aggregation of trial outcomes (pooled DR / FAR,
/// compensated means for the rest).
MetricReport aggregate(const std::vector<TrialOutcome>& outcomes);

/// Runs f(i) for i in [0, n) across `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

inline constexpr int kDatasetFormatVersion = 1;

struct DatasetManifest {
  int format_version = kDatasetFormatVersion;
  std::size_t count = 0;
  std::array<int, 3> grid_counts{0, 0, 0};
  Index n_voxels = 0;
  std::uint64_t seed = 0;
  bool on_grid = false;
  double sigma_pri_p99 = 0.0;
  std::string sigma_pri_file = "sigma_pri.f32";
  std::string sigma_file = "sigma.f32";
  std::string truth_file = "truth.csv";
  std::string measurement_file;  // empty unless measurements were exported
  std::string sigma_pri_checksum;
  std::string sigma_checksum;
  std::string truth_checksum;
  std::string measurement_checksum;
  Index measurement_length = 0;
  ScenarioConfig config;
  std::vector<std::vector<Uav>> truth;  // per sample
};

struct DatasetOptions {
  std::size_t count = 10000;
  std::optional<bool> on_grid;  // default: off-grid
  bool with_measurements = false;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

DatasetManifest export_dataset(const ScenarioConfig& config, const DatasetOptions& options,
                               const std::filesystem::path& dir);
DatasetManifest read_manifest(const std::filesystem::path& dir);
/// Re-hashes the blob files and compares with the manifest.
bool verify_checksums(const DatasetManifest& manifest, const std::filesystem::path& dir);

std::vector<float> read_images(const std::filesystem::path& path, const DatasetManifest& manifest);

/// Pooled DR / FAR and per-sample means of MSE, SSIM, OSPA. OSPA compares
/// detected voxel centers with the continuous UAV positions.
MetricReport eval_predictions(const std::vector<float>& predictions, const DatasetManifest& manifest,
                              double tau_det);

struct PsfPoint {
  std::string value;
  double max_sidelobe = 0.0;
};

/// Max PSF sidelobe of a reference voxel (central voxel when ref < 0) for
/// each value of `param`.
std::vector<PsfPoint> psf_sweep(const ScenarioConfig& base, SweepParam param,
                                const std::vector<std::string>& values, Index ref_voxel = -1);

std::vector<std::string> default_sweep_values(SweepParam param);

std::string format_report_csv(const MetricReport& r);
std::string report_csv_header();

}  // namespace isac
