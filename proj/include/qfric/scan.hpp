#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qfric/spectral.hpp"
#include "qfric/temperature.hpp"

namespace qfric {

inline constexpr const char* kLibraryVersion = "0.1.0";

inline constexpr const char* kCsvHeader =
    "omega,omega_over_ref,T_v_K,T_over_TF,N_v,sigma0_J,sigma_plus_J,sigma_minus_J";

enum class GridSpacing { Linear, Log };
/// Unit of grid.min / grid.max: rad/s, omega_ref, or v / z_a.
enum class GridUnit { RadPerSecond, OmegaRef, VOverZ };
enum class OutputFormat { Csv, Json };

struct FrequencyGrid {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  GridSpacing spacing = GridSpacing::Log;
  GridUnit unit = GridUnit::RadPerSecond;
};

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::Csv;
};

struct ScanConfig {
  Material material;
  Kinematics kin;
  DipoleModel dip;
  GreenMode mode = GreenMode::NearField;
  FrequencyGrid grid;
  OutputSpec output;
  Tolerances tol;
};

/// JSON schema:
///   material   {model: "drude", omega_p, gamma} | {model: "constant_index", n_eps}
///   kinematics {z_a, v}
///   dipole     {d: [x, y, z], omega_a, averaging: "isotropic" | "fixed"}
///   mode       "near_field" | "full_tensor"                        (optional)
///   grid       {min, max, points, spacing: "log" | "linear",
///               unit: "rad_s" | "omega_ref" | "v_over_z"}           (spacing, unit optional)
///   output     {path, format: "csv" | "json"}                       (optional)
///   tolerances {rel, abs}                                           (optional)
/// Throws ConfigError naming the offending field.
ScanConfig parse_scan_config(const std::string& json_text);
ScanConfig load_scan_config(const std::string& path);
/// Compact JSON that parse_scan_config maps back to the same config.
std::string scan_config_to_json(const ScanConfig& config);

SystemState to_system_state(const ScanConfig& config);

/// Grid frequencies in rad/s, strictly increasing.
std::vector<double> grid_frequencies(const ScanConfig& config);

struct DataRow {
  double omega = 0.0;
  double omega_over_ref = 0.0;
  double T_v_K = 0.0;
  double T_over_TF = 0.0;
  double N_v = 0.0;
  double sigma0_J = 0.0;
  double sigma_plus_J = 0.0;
  /// Underflows to 0 beyond omega ~ 350 v / z_a; T_v_K and N_v are computed
  /// from its logarithm and stay exact there.
  double sigma_minus_J = 0.0;
};

struct Dataset {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<DataRow> rows;
  /// Grid frequencies skipped because the quadrature did not converge.
  std::vector<double> gaps;

  /// Value of a metadata key, or empty.
  std::string meta(const std::string& key) const;
};

struct ScanOptions {
  /// Worker threads; 0 selects the hardware concurrency.
  unsigned threads = 0;
  /// Extra metadata appended after the config echo (e.g. figure curve labels).
  std::vector<std::pair<std::string, std::string>> extra_metadata;
};

/// Evaluates the effective temperature on the grid. Rows keep grid order
/// whatever the completion order. Writes config.output.path when it is non-empty.
Dataset run_scan(const ScanConfig& config, const ScanOptions& options = {});

/// 17 significant digits in C-locale "%.17g" form, independent of the process locale.
std::string format_number(double x);

std::string format_csv(const Dataset& data);
std::string format_json(const Dataset& data);
void write_dataset(const Dataset& data, const OutputSpec& output);

/// Parses a CSV produced by format_csv. Throws IoError on malformed input.
Dataset parse_csv(std::istream& in);
/// Rebuilds the scan configuration from a dataset's metadata echo.
ScanConfig config_from_dataset(const Dataset& data);

/// Surface parameters used for the figure curves: omega_p (rad/s) and |d| (1 debye).
inline constexpr double kFigurePlasmaFrequency = 1.37e16;
inline constexpr double kDebye = 3.33564e-30;

struct FigureCurve {
  std::string label;
  ScanConfig config;
};

/// The three curves of panel 'a' (v/c), 'b' (z_a w_sp / c) or 'c' (gamma / w_sp).
/// Grids span [min(1e-3, 1e-2 (v/z_a)/w_sp), 10] w_sp with at least 400 points
/// and 100 per decade.
std::vector<FigureCurve> figure2_curves(char panel, const std::string& out_dir);

/// Runs every curve of a panel and writes one CSV per curve. Returns the paths.
std::vector<std::string> figure2_dataset(char panel, const std::string& out_dir, const ScanOptions& options = {});

} // namespace qfric
