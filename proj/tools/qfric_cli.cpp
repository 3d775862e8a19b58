// qfric: effective temperature of a dipole moving parallel to a surface.

#include <cmath>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qfric/scan.hpp"
#include "qfric/selftest.hpp"

namespace {

using namespace qfric;

int cmd_scan(const std::string& config_path, unsigned threads, const std::string& out_path) {
  ScanConfig cfg = load_scan_config(config_path);
  if (!out_path.empty()) {
    cfg.output.path = out_path;
    if (out_path.size() >= 5 && out_path.compare(out_path.size() - 5, 5, ".json") == 0) cfg.output.format = OutputFormat::Json;
  }
  ScanOptions opts;
  opts.threads = threads;
  const Dataset data = run_scan(cfg, opts);
  if (cfg.output.path.empty())
    std::cout << (cfg.output.format == OutputFormat::Csv ? format_csv(data) : format_json(data));
  else
    std::cerr << "wrote " << data.rows.size() << " rows to " << cfg.output.path << "\n";
  if (!data.gaps.empty()) {
    std::cerr << "warning: partial scan, no convergence at omega =";
    for (double w : data.gaps) std::cerr << ' ' << format_number(w);
    std::cerr << "\n";
  }
  return 0;
}

int cmd_figure2(const std::string& panel, const std::string& out_dir, unsigned threads) {
  ScanOptions opts;
  opts.threads = threads;
  for (const std::string& path : figure2_dataset(panel.at(0), out_dir, opts)) std::cout << path << "\n";
  return 0;
}

int cmd_limits(const std::string& config_path) {
  const ScanConfig cfg = load_scan_config(config_path);
  const SystemState st = to_system_state(cfg);
  const double t_f = tf_scale(cfg.kin);
  const LowFrequencyAnalysis lf = low_frequency_analysis(st);
  std::cout << "T_F_K=" << format_number(t_f) << "\n"
            << "omega_F_over_2pi_Hz=" << format_number(constants::k_B * t_f / (2.0 * constants::pi * constants::hbar)) << "\n"
            << "T_low_K=" << format_number(lf.temperature) << "\n"
            << "T_low_over_T_F=" << format_number(t_f > 0.0 ? lf.temperature / t_f : 0.0) << "\n"
            << "three_over_pi=" << format_number(3.0 / constants::pi) << "\n"
            << "richardson_change=" << format_number(lf.richardson_change) << "\n";
  return 0;
}

int cmd_cherenkov(double n_eps, double z_a, double v_min, double v_max, int points, double omega_scale) {
  if (points < 2 || !(v_min < v_max)) throw ConfigError("cherenkov", "need points >= 2 and v-min < v-max");
  const double c = constants::c;
  const double omega = omega_scale * c / (n_eps * z_a);
  const DipoleModel dip(Vector3(kDebye, 0.0, 0.0), 1e15, Averaging::IsotropicAverage);
  std::cout << "# qfric_version=" << kLibraryVersion << "\n"
            << "# n_eps=" << format_number(n_eps) << "\n"
            << "# z_a=" << format_number(z_a) << "\n"
            << "# omega=" << format_number(omega) << "\n"
            << "# threshold_v=" << format_number(c / n_eps) << "\n"
            << "v,v_over_c,T_v_K,T_cherenkov_K\n";
  for (int i = 0; i < points; ++i) {
    const double v = v_min + (v_max - v_min) * i / (points - 1);
    const Kinematics kin(z_a, v);
    const SystemState st{ConstantIndex(n_eps), kin, dip, GreenMode::FullTensor};
    const TemperaturePoint p = effective_temperature(st, omega);
    std::cout << format_number(v) << ',' << format_number(v / c) << ',' << format_number(p.T_v) << ','
              << format_number(cherenkov_temperature(n_eps, kin)) << "\n";
  }
  return 0;
}

int cmd_selftest(bool flip, double tolerance_scale) {
  SelftestOptions opts;
  opts.inject_sigma_minus_flip = flip;
  opts.tolerance_scale = tolerance_scale;
  const auto results = run_selftest(opts, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective temperature of a dipole in uniform motion near a surface"};
  app.require_subcommand(1);

  std::string config_path, out_path, out_dir, panel;
  unsigned threads = 0;
  auto* scan = app.add_subcommand("scan", "Scan T_v over a frequency grid");
  scan->add_option("--config", config_path, "JSON scan configuration")->required()->check(CLI::ExistingFile);
  scan->add_option("--threads", threads, "Worker threads (default: hardware concurrency)");
  scan->add_option("--out", out_path, "Output path; .json selects JSON");

  auto* fig = app.add_subcommand("figure2", "Write the three curves of one panel (a: speed, b: distance, c: damping)");
  fig->add_option("--panel", panel, "Panel")->required()->check(CLI::IsMember({"a", "b", "c"}));
  fig->add_option("--out-dir", out_dir, "Output directory")->required();
  fig->add_option("--threads", threads, "Worker threads");

  auto* limits = app.add_subcommand("limits", "Print T_F and the zero-frequency limit");
  limits->add_option("--config", config_path, "JSON scan configuration")->required()->check(CLI::ExistingFile);

  double n_eps = 0.0, z_a = 0.0, v_min = 0.0, v_max = 0.0, omega_scale = 200.0;
  int points = 0;
  auto* ch = app.add_subcommand("cherenkov", "Sweep v across the Cherenkov threshold of a dielectric");
  ch->add_option("--n-eps", n_eps, "Refractive index")->required();
  ch->add_option("--za", z_a, "Atom-surface distance (m)")->required();
  ch->add_option("--v-min", v_min, "Lowest speed (m/s)")->required();
  ch->add_option("--v-max", v_max, "Highest speed (m/s)")->required();
  ch->add_option("--points", points, "Number of speeds")->required();
  ch->add_option("--omega-scale", omega_scale, "Frequency in units of c / (n_eps z_a)");

  bool flip = false;
  double tolerance_scale = 1.0;
  auto* self = app.add_subcommand("selftest", "Run the closed-form and cross-route checks");
  self->add_flag("--inject-sigma-minus-flip", flip, "Flip the sign of Sigma^- (must make checks fail)");
  self->add_option("--tolerance-scale", tolerance_scale, "Multiply the quadrature tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scan) return cmd_scan(config_path, threads, out_path);
    if (*fig) return cmd_figure2(panel, out_dir, threads);
    if (*limits) return cmd_limits(config_path);
    if (*ch) return cmd_cherenkov(n_eps, z_a, v_min, v_max, points, omega_scale);
    if (*self) return cmd_selftest(flip, tolerance_scale);
  } catch (const qfric::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
