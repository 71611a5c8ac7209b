#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "isac/blob_io.hpp"
#include "isac/channel.hpp"
#include "isac/harness.hpp"
#include "isac/recovery.hpp"
#include "isac/sensing.hpp"

namespace {

using namespace isac;

ScenarioConfig config_or_preset(const std::string& path) {
  return path.empty() ? preset_2d() : load_scenario(path);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_atomic(path, text);
  }
}

std::vector<std::string> split_values(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int run_psf(const std::string& sweep, const std::string& config, const std::string& out,
            const std::string& values, long long ref_voxel) {
  const SweepParam param = parse_sweep_param(sweep);
  const auto list = values.empty() ? default_sweep_values(param) : split_values(values);
  const auto points = psf_sweep(config_or_preset(config), param, list, Index(ref_voxel));
  std::ostringstream os;
  os << "sweep_param,value,max_sidelobe\n";
  for (const auto& p : points) os << to_string(param) << ',' << p.value << ',' << format_double(p.max_sidelobe) << '\n';
  write_output(out, os.str());
  return 0;
}

int run_simulate(const std::string& spec_path, const std::string& out, int trials, int threads) {
  ExperimentSpec spec = load_experiment(spec_path);
  if (trials > 0) spec.trials = trials;
  if (threads >= 0) spec.threads = unsigned(threads);
  const MonteCarloTable table = run_monte_carlo(spec);
  std::ostringstream os;
  write_csv(os, table);
  write_output(out, os.str());
  return 0;
}

int run_dataset(const std::string& config, const std::string& out, std::size_t count, bool with_measurements,
                std::uint64_t seed, bool on_grid, int threads) {
  DatasetOptions opt;
  opt.count = count;
  opt.with_measurements = with_measurements;
  opt.seed = seed;
  if (on_grid) opt.on_grid = true;
  if (threads >= 0) opt.threads = unsigned(threads);
  const DatasetManifest m = export_dataset(config_or_preset(config), opt, out);
  std::cout << "wrote " << m.count << " samples, " << m.n_voxels << " voxels, sigma_pri_p99 "
            << format_double(m.sigma_pri_p99) << '\n';
  return 0;
}

int run_recover(const std::string& config, const std::string& measurement, const std::string& out,
                const std::string& method) {
  const ScenarioConfig cfg = config_or_preset(config);
  const TrialContext ctx = TrialContext::build(cfg);
  const auto y = read_c128(measurement);
  const Index n1 = ctx.a.n_rows();
  if (y.empty() || Index(y.size()) % n1 != 0) {
    throw DimensionError("measurement length " + std::to_string(y.size()) + " is not a multiple of " +
                         std::to_string(n1) + " rows");
  }
  const std::size_t count = y.size() / std::size_t(n1);
  const std::size_t nv = std::size_t(ctx.a.n_voxels());
  std::vector<float> images(count * nv);
  std::map<std::string, int> stops;
  long long iterations = 0;
  long long detections = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Eigen::Map<const CVector> yi(y.data() + i * std::size_t(n1), n1);
    RVector sigma_hat;
    if (method == "mf") {
      sigma_hat = matched_filter_coefficients(ctx.a.a, yi);
    } else {
      SubspacePursuitOptions opt;
      opt.m_prior = std::min<Index>({Index(cfg.m_prior), ctx.a.n_voxels(), n1});
      opt.epsilon = ctx.epsilon;
      opt.max_iter = cfg.max_iter;
      const RecoveryResult r = subspace_pursuit(ctx.a.a, yi, opt);
      sigma_hat = r.sigma_hat;
      iterations += r.iterations;
      ++stops[to_string(r.stop)];
    }
    detections += Index(detect(sigma_hat, ctx.grid, cfg.tau_det).size());
    for (std::size_t v = 0; v < nv; ++v) images[i * nv + v] = float(sigma_hat(Index(v)));
  }
  write_f32(out, images);
  std::cout << "recovered " << count << " measurement(s) method " << (method == "mf" ? "mf" : "sp") << " rows "
            << n1 << " voxels " << nv << " detections " << detections;
  if (method != "mf") {
    std::cout << " iterations " << iterations;
    for (const auto& [reason, n] : stops) std::cout << ' ' << reason << ' ' << n;
  }
  std::cout << '\n';
  return 0;
}

int run_eval(const std::string& pred, const std::string& data, std::optional<double> tau, bool header) {
  const DatasetManifest m = read_manifest(data);
  if (!verify_checksums(m, data)) throw IoError("dataset checksums do not match the manifest");
  const auto predictions = read_images(pred, m);
  const MetricReport r = eval_predictions(predictions, m, tau.value_or(m.config.tau_det));
  if (header) std::cout << report_csv_header() << '\n';
  std::cout << format_report_csv(r) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed-sensing UAV imaging simulator for cooperative ISAC networks"};
  app.require_subcommand(1);

  std::string config, out, sweep, values, spec, measurement, pred, data, method = "sp", preset = "2d";
  long long ref_voxel = -1;
  int trials = 0;
  int threads = -1;
  std::size_t count = 10000;
  std::uint64_t seed = 1;
  bool with_measurements = false;
  bool on_grid = false;
  bool header = false;
  std::optional<double> tau;

  auto* psf = app.add_subcommand("psf", "Max PSF sidelobe over a parameter sweep");
  psf->add_option("--sweep", sweep, "n0, xi, d0, nf, bandwidth, mode, ...")->required();
  psf->add_option("--config", config, "Scenario file (default: 2D preset)");
  psf->add_option("--out", out, "CSV output ('-' for stdout)")->required();
  psf->add_option("--values", values, "Comma-separated sweep values");
  psf->add_option("--ref-voxel", ref_voxel, "Reference voxel (default: central voxel)");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo sweep");
  sim->add_option("--spec", spec, "Experiment file")->required();
  sim->add_option("--out", out, "CSV output ('-' for stdout)")->required();
  sim->add_option("--trials", trials, "Override trials per point");
  sim->add_option("--threads", threads, "Worker threads (0: all cores)");

  auto* ds = app.add_subcommand("dataset", "Export (sigma_pri, sigma) training pairs");
  ds->add_option("--config", config, "Scenario file (default: 2D preset)");
  ds->add_option("--count", count, "Number of samples");
  ds->add_option("--out", out, "Output directory")->required();
  ds->add_flag("--with-measurements", with_measurements, "Also write the raw CSI vectors");
  ds->add_option("--seed", seed, "Dataset seed");
  ds->add_flag("--on-grid", on_grid, "Place UAVs on voxel centers");
  ds->add_option("--threads", threads, "Worker threads (0: all cores)");

  auto* rec = app.add_subcommand("recover", "Recover sigma_hat from measurement blobs");
  rec->add_option("--config", config, "Scenario file (default: 2D preset)");
  rec->add_option("--measurement", measurement, "complex128 blob, one or more stacked vectors")->required();
  rec->add_option("--out", out, "float32 output blob")->required();
  rec->add_option("--method", method, "sp or mf")->check(CLI::IsMember({"sp", "mf"}));

  auto* ev = app.add_subcommand("eval", "Score predictions against a dataset");
  ev->add_option("--pred", pred, "float32 prediction blob")->required();
  ev->add_option("--data", data, "Dataset directory")->required();
  ev->add_option("--tau", tau, "Detection threshold (default: dataset config)");
  ev->add_flag("--header", header, "Print the CSV header line first");

  auto* cfg = app.add_subcommand("config", "Print a preset scenario file");
  cfg->add_option("--preset", preset, "2d or 3d")->check(CLI::IsMember({"2d", "3d"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*psf) return run_psf(sweep, config, out, values, ref_voxel);
    if (*sim) return run_simulate(spec, out, trials, threads);
    if (*ds) return run_dataset(config, out, count, with_measurements, seed, on_grid, threads);
    if (*rec) return run_recover(config, measurement, out, method);
    if (*ev) return run_eval(pred, data, tau, header);
    if (*cfg) {
      std::cout << to_text(preset == "3d" ? preset_3d() : preset_2d());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
