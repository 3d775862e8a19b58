#include "qfric/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace qfric {

namespace {

using json = nlohmann::ordered_json;

// --- config parsing -------------------------------------------------------

const json& child(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(path + key, "missing");
  return obj.at(key);
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = child(obj, key, path);
  if (!v.is_number()) throw ConfigError(path + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path + key, "must be finite");
  return x;
}

std::string text(const json& obj, const std::string& key, const std::string& path, const std::string& fallback) {
  if (!obj.contains(key)) {
    if (fallback.empty()) throw ConfigError(path + key, "missing");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(path + key, "expected a string");
  return v.get<std::string>();
}

// Runs a constructor, reporting domain errors against a config field.
template <class F>
auto checked(const std::string& field, F&& make) {
  try {
    return make();
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  }
}

Material parse_material(const json& root) {
  const json& m = child(root, "material", "");
  const std::string model = text(m, "model", "material.", "");
  if (model == "drude") {
    const double wp = number(m, "omega_p", "material.");
    const double gamma = number(m, "gamma", "material.");
    return checked("material", [&] { return Material(Drude(wp, gamma)); });
  }
  if (model == "constant_index") {
    const double n = number(m, "n_eps", "material.");
    return checked("material.n_eps", [&] { return Material(ConstantIndex(n)); });
  }
  throw ConfigError("material.model", "expected \"drude\" or \"constant_index\"");
}

const char* spacing_name(GridSpacing s) { return s == GridSpacing::Log ? "log" : "linear"; }

const char* unit_name(GridUnit u) {
  switch (u) {
  case GridUnit::OmegaRef: return "omega_ref";
  case GridUnit::VOverZ: return "v_over_z";
  default: return "rad_s";
  }
}

std::string short_number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// --- time -----------------------------------------------------------------

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw IoError("parse_csv: malformed number '" + std::string(s) + "'");
  return x;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

} // namespace

ScanConfig parse_scan_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "top level must be an object");

  const Material material = parse_material(root);

  const json& k = child(root, "kinematics", "");
  const double z_a = number(k, "z_a", "kinematics.");
  const double v = number(k, "v", "kinematics.");
  const Kinematics kin = checked("kinematics", [&] { return Kinematics(z_a, v); });

  const json& d = child(root, "dipole", "");
  const json& dv = child(d, "d", "dipole.");
  if (!dv.is_array() || dv.size() != 3 || !std::all_of(dv.begin(), dv.end(), [](const json& x) { return x.is_number(); }))
    throw ConfigError("dipole.d", "expected an array of three numbers");
  const Vector3 dvec(dv[0].get<double>(), dv[1].get<double>(), dv[2].get<double>());
  const double omega_a = number(d, "omega_a", "dipole.");
  const std::string averaging = text(d, "averaging", "dipole.", "isotropic");
  Averaging avg;
  if (averaging == "isotropic") avg = Averaging::IsotropicAverage;
  else if (averaging == "fixed") avg = Averaging::FixedOrientation;
  else throw ConfigError("dipole.averaging", "expected \"isotropic\" or \"fixed\"");
  const DipoleModel dip = checked("dipole", [&] { return DipoleModel(dvec, omega_a, avg); });

  GreenMode mode = GreenMode::NearField;
  const std::string mode_name = text(root, "mode", "", "near_field");
  if (mode_name == "full_tensor") mode = GreenMode::FullTensor;
  else if (mode_name != "near_field") throw ConfigError("mode", "expected \"near_field\" or \"full_tensor\"");

  const json& g = child(root, "grid", "");
  FrequencyGrid grid;
  grid.min = number(g, "min", "grid.");
  grid.max = number(g, "max", "grid.");
  const json& pts = child(g, "points", "grid.");
  if (!pts.is_number_integer()) throw ConfigError("grid.points", "expected an integer");
  grid.points = pts.get<int>();
  const std::string spacing = text(g, "spacing", "grid.", "log");
  if (spacing == "log") grid.spacing = GridSpacing::Log;
  else if (spacing == "linear") grid.spacing = GridSpacing::Linear;
  else throw ConfigError("grid.spacing", "expected \"log\" or \"linear\"");
  const std::string unit = text(g, "unit", "grid.", "rad_s");
  if (unit == "rad_s") grid.unit = GridUnit::RadPerSecond;
  else if (unit == "omega_ref") grid.unit = GridUnit::OmegaRef;
  else if (unit == "v_over_z") grid.unit = GridUnit::VOverZ;
  else throw ConfigError("grid.unit", "expected \"rad_s\", \"omega_ref\" or \"v_over_z\"");
  if (grid.points < 2) throw ConfigError("grid.points", "must be >= 2");
  if (!(grid.min < grid.max)) throw ConfigError("grid.min", "must be < grid.max");
  if (!(grid.min > 0.0)) throw ConfigError("grid.min", "must be > 0");
  if (grid.unit == GridUnit::VOverZ && kin.v() == 0.0) throw ConfigError("grid.unit", "v_over_z needs v > 0");

  OutputSpec output;
  if (root.contains("output")) {
    const json& o = root.at("output");
    if (!o.is_object()) throw ConfigError("output", "expected an object");
    output.path = o.contains("path") ? text(o, "path", "output.", "") : "";
    const std::string format = text(o, "format", "output.", "csv");
    if (format == "csv") output.format = OutputFormat::Csv;
    else if (format == "json") output.format = OutputFormat::Json;
    else throw ConfigError("output.format", "expected \"csv\" or \"json\"");
  }

  Tolerances tol;
  if (root.contains("tolerances")) {
    const json& t = root.at("tolerances");
    if (t.contains("rel")) tol.rel = number(t, "rel", "tolerances.");
    if (t.contains("abs")) tol.abs = number(t, "abs", "tolerances.");
    if (!(tol.rel > 1e-14 && tol.rel < 1e-2)) throw ConfigError("tolerances.rel", "must lie in (1e-14, 1e-2)");
    if (!(tol.abs >= 0.0)) throw ConfigError("tolerances.abs", "must be >= 0");
  }

  return ScanConfig{material, kin, dip, mode, grid, output, tol};
}

ScanConfig load_scan_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scan_config(ss.str());
}

std::string scan_config_to_json(const ScanConfig& config) {
  json root;
  json m;
  if (const auto* d = std::get_if<Drude>(&config.material)) {
    m["model"] = "drude";
    m["omega_p"] = d->omega_p();
    m["gamma"] = d->gamma();
  } else {
    m["model"] = "constant_index";
    m["n_eps"] = std::get<ConstantIndex>(config.material).n_eps();
  }
  root["material"] = m;
  root["kinematics"] = {{"z_a", config.kin.z_a()}, {"v", config.kin.v()}};
  const Vector3& d = config.dip.d();
  root["dipole"] = {{"d", {d.x(), d.y(), d.z()}},
                    {"omega_a", config.dip.omega_a()},
                    {"averaging", config.dip.averaging() == Averaging::IsotropicAverage ? "isotropic" : "fixed"}};
  root["mode"] = config.mode == GreenMode::NearField ? "near_field" : "full_tensor";
  root["grid"] = {{"min", config.grid.min},
                  {"max", config.grid.max},
                  {"points", config.grid.points},
                  {"spacing", spacing_name(config.grid.spacing)},
                  {"unit", unit_name(config.grid.unit)}};
  root["output"] = {{"path", config.output.path}, {"format", config.output.format == OutputFormat::Csv ? "csv" : "json"}};
  root["tolerances"] = {{"rel", config.tol.rel}, {"abs", config.tol.abs}};
  return root.dump();
}

SystemState to_system_state(const ScanConfig& config) {
  return SystemState{config.material, config.kin, config.dip, config.mode, config.tol};
}

std::vector<double> grid_frequencies(const ScanConfig& config) {
  const FrequencyGrid& g = config.grid;
  double unit = 1.0;
  if (g.unit == GridUnit::OmegaRef) unit = make_reference_scales(config.material, config.kin, config.dip).omega_ref;
  if (g.unit == GridUnit::VOverZ) unit = config.kin.v() / config.kin.z_a();

  std::vector<double> w(static_cast<std::size_t>(g.points));
  for (int i = 0; i < g.points; ++i) {
    const double t = static_cast<double>(i) / (g.points - 1);
    const double x = g.spacing == GridSpacing::Log ? g.min * std::pow(g.max / g.min, t) : g.min + (g.max - g.min) * t;
    w[static_cast<std::size_t>(i)] = x * unit;
  }
  w.front() = g.min * unit;
  w.back() = g.max * unit;
  return w;
}

std::string Dataset::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return {};
}

Dataset run_scan(const ScanConfig& config, const ScanOptions& options) {
  const SystemState state = to_system_state(config);
  const std::vector<double> omegas = grid_frequencies(config);
  const ReferenceScales scales = make_reference_scales(config.material, config.kin, config.dip);
  const double t_f = tf_scale(config.kin);

  std::vector<std::optional<TemperaturePoint>> points(omegas.size());
  std::vector<std::exception_ptr> failures(omegas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < omegas.size(); i = next++) {
      try {
        points[i] = effective_temperature(state, omegas[i]);
      } catch (const NoConvergence&) {
        // recorded as a gap
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, omegas.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  Dataset data;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (!points[i]) {
      data.gaps.push_back(omegas[i]);
      continue;
    }
    const TemperaturePoint& p = *points[i];
    DataRow row;
    row.omega = p.omega;
    row.omega_over_ref = scales.to_dimensionless_frequency(p.omega);
    row.T_v_K = p.T_v;
    row.T_over_TF = p.T_v == 0.0 ? 0.0 : p.T_v / t_f;
    row.N_v = p.N_v;
    row.sigma0_J = p.sigma.sigma0;
    row.sigma_plus_J = p.sigma.sigma_plus;
    row.sigma_minus_J = p.sigma.sigma_minus;
    data.rows.push_back(row);
  }

  auto& md = data.metadata;
  md.emplace_back("qfric_version", kLibraryVersion);
  md.emplace_back("timestamp", utc_timestamp());
  md.emplace_back("config", scan_config_to_json(config));
  if (const auto* d = std::get_if<Drude>(&config.material)) {
    md.emplace_back("material.model", "drude");
    md.emplace_back("material.omega_p", format_number(d->omega_p()));
    md.emplace_back("material.gamma", format_number(d->gamma()));
  } else {
    md.emplace_back("material.model", "constant_index");
    md.emplace_back("material.n_eps", format_number(std::get<ConstantIndex>(config.material).n_eps()));
  }
  md.emplace_back("kinematics.z_a", format_number(config.kin.z_a()));
  md.emplace_back("kinematics.v", format_number(config.kin.v()));
  const Vector3& dv = config.dip.d();
  md.emplace_back("dipole.d", format_number(dv.x()) + ";" + format_number(dv.y()) + ";" + format_number(dv.z()));
  md.emplace_back("dipole.omega_a", format_number(config.dip.omega_a()));
  md.emplace_back("dipole.averaging", config.dip.averaging() == Averaging::IsotropicAverage ? "isotropic" : "fixed");
  md.emplace_back("mode", config.mode == GreenMode::NearField ? "near_field" : "full_tensor");
  md.emplace_back("grid.min", format_number(config.grid.min));
  md.emplace_back("grid.max", format_number(config.grid.max));
  md.emplace_back("grid.points", std::to_string(config.grid.points));
  md.emplace_back("grid.spacing", spacing_name(config.grid.spacing));
  md.emplace_back("grid.unit", unit_name(config.grid.unit));
  md.emplace_back("tolerances.rel", format_number(config.tol.rel));
  md.emplace_back("tolerances.abs", format_number(config.tol.abs));
  md.emplace_back("omega_ref", format_number(scales.omega_ref));
  md.emplace_back("sigma_ref_J", format_number(scales.sigma_ref));
  md.emplace_back("T_F_K", format_number(t_f));
  for (const auto& kv : options.extra_metadata) md.push_back(kv);
  if (config.kin.relativistic_warning()) md.emplace_back("warning.relativistic", "v/c > 0.1");
  if (near_field_regime_warning(state, omegas.back())) md.emplace_back("warning.near_field", "z_a omega / c > 1 on part of the grid");
  std::string gaps;
  for (double w : data.gaps) gaps += (gaps.empty() ? "" : ";") + format_number(w);
  md.emplace_back("rows", std::to_string(data.rows.size()));
  md.emplace_back("gaps", gaps);

  if (!config.output.path.empty()) write_dataset(data, config.output);
  return data;
}

std::string format_number(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_csv(const Dataset& data) {
  std::string out;
  for (const auto& [k, v] : data.metadata) out += "# " + k + "=" + v + "\n";
  out += kCsvHeader;
  out += "\n";
  for (const DataRow& r : data.rows) {
    const double cols[] = {r.omega, r.omega_over_ref, r.T_v_K, r.T_over_TF, r.N_v, r.sigma0_J, r.sigma_plus_J, r.sigma_minus_J};
    for (std::size_t i = 0; i < std::size(cols); ++i) {
      if (i) out += ',';
      out += format_number(cols[i]);
    }
    out += '\n';
  }
  return out;
}

std::string format_json(const Dataset& data) {
  json root;
  json md = json::object();
  for (const auto& [k, v] : data.metadata) md[k] = v;
  json rows = json::array();
  for (const DataRow& r : data.rows) {
    rows.push_back({{"omega", r.omega},
                    {"omega_over_ref", r.omega_over_ref},
                    {"T_v_K", r.T_v_K},
                    {"T_over_TF", r.T_over_TF},
                    {"N_v", r.N_v},
                    {"sigma0_J", r.sigma0_J},
                    {"sigma_plus_J", r.sigma_plus_J},
                    {"sigma_minus_J", r.sigma_minus_J}});
  }
  root["metadata"] = md;
  root["rows"] = rows;
  return root.dump(1) + "\n";
}

void write_dataset(const Dataset& data, const OutputSpec& output) {
  const std::filesystem::path path(output.path);
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + output.path + "'");
  out << (output.format == OutputFormat::Csv ? format_csv(data) : format_json(data));
  if (!out) throw IoError("write failed for '" + output.path + "'");
}

Dataset parse_csv(std::istream& in) {
  Dataset data;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!header_seen && line.rfind("# ", 0) == 0) {
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) throw IoError("parse_csv: metadata line without '='");
      data.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw IoError("parse_csv: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() != 8) throw IoError("parse_csv: expected 8 columns");
    DataRow r;
    double* fields[] = {&r.omega, &r.omega_over_ref, &r.T_v_K, &r.T_over_TF, &r.N_v, &r.sigma0_J, &r.sigma_plus_J, &r.sigma_minus_J};
    for (std::size_t i = 0; i < 8; ++i) *fields[i] = parse_double(cols[i]);
    data.rows.push_back(r);
  }
  if (!header_seen) throw IoError("parse_csv: no header line");
  const std::string gaps = data.meta("gaps");
  if (!gaps.empty())
    for (auto g : split(gaps, ';')) data.gaps.push_back(parse_double(g));
  return data;
}

ScanConfig config_from_dataset(const Dataset& data) {
  const std::string cfg = data.meta("config");
  if (cfg.empty()) throw ConfigError("config", "dataset carries no config echo");
  return parse_scan_config(cfg);
}

std::vector<FigureCurve> figure2_curves(char panel, const std::string& out_dir) {
  struct Params {
    double v_over_c;
    double z_omega_sp_over_c;
    double gamma_over_omega_sp;
    std::string label;
  };
  std::vector<Params> params;
  switch (panel) {
  case 'a':
    for (double v : {1e-6, 1e-5, 1e-3}) params.push_back({v, 0.1, 1e-2, "v_over_c=" + short_number(v)});
    break;
  case 'b':
    for (double z : {0.1, 1.0, 10.0}) params.push_back({1e-4, z, 1e-2, "z_omega_sp_over_c=" + short_number(z)});
    break;
  case 'c':
    for (double g : {1e-6, 1e-3, 1e-1}) params.push_back({1e-6, 0.1, g, "gamma_over_omega_sp=" + short_number(g)});
    break;
  default:
    throw ConfigError("panel", "expected a, b or c");
  }

  const double c = constants::c;
  const double wsp = kFigurePlasmaFrequency / std::sqrt(2.0);
  std::vector<FigureCurve> curves;
  for (const Params& p : params) {
    const double z_a = p.z_omega_sp_over_c * c / wsp;
    const double v = p.v_over_c * c;
    FrequencyGrid grid;
    grid.min = std::min(1e-3, 1e-2 * (v / z_a) / wsp);
    grid.max = 10.0;
    grid.points = std::max(400, static_cast<int>(std::ceil(100.0 * std::log10(grid.max / grid.min))) + 1);
    grid.spacing = GridSpacing::Log;
    grid.unit = GridUnit::OmegaRef;

    std::string file = p.label;
    std::replace(file.begin(), file.end(), '=', '_');
    OutputSpec out{(std::filesystem::path(out_dir) / ("figure2" + std::string(1, panel) + "_" + file + ".csv")).string(),
                   OutputFormat::Csv};
    ScanConfig cfg{Drude(kFigurePlasmaFrequency, p.gamma_over_omega_sp * wsp), Kinematics(z_a, v),
                   DipoleModel(Vector3(kDebye, 0.0, 0.0), 0.5 * wsp, Averaging::IsotropicAverage), GreenMode::NearField,
                   grid, out, Tolerances{}};
    curves.push_back({p.label, cfg});
  }
  return curves;
}

std::vector<std::string> figure2_dataset(char panel, const std::string& out_dir, const ScanOptions& options) {
  std::vector<std::string> paths;
  for (const FigureCurve& curve : figure2_curves(panel, out_dir)) {
    ScanOptions opts = options;
    opts.extra_metadata.emplace_back("figure.panel", std::string(1, panel));
    const std::size_t eq = curve.label.find('=');
    opts.extra_metadata.emplace_back("figure." + curve.label.substr(0, eq), curve.label.substr(eq + 1));
    run_scan(curve.config, opts);
    paths.push_back(curve.config.output.path);
  }
  return paths;
}

} // namespace qfric
