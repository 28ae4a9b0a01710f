#include "ribbon_klein/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ribbon_klein/errors.hpp"
#include "ribbon_klein/transport.hpp"

namespace rk {

double RunConfig::theta_rad() const { return theta_deg * std::numbers::pi / 180.0; }

BarrierSpec RunConfig::barrier(const PhysicalConstants& pc) const {
  return BarrierSpec{V0_eV, D_a0 * pc.a0, d_a0 * pc.a0, theta_rad()};
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fmt_token(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

struct Field {
  const char* name;
  bool is_int;
  int RunConfig::* iptr;
  double RunConfig::* dptr;
};

constexpr Field kFields[] = {
    {"N", true, &RunConfig::N, nullptr},
    {"n_modes", true, &RunConfig::n_modes, nullptr},
    {"delta_A", false, nullptr, &RunConfig::delta_A},
    {"total_length_a0", false, nullptr, &RunConfig::total_length_a0},
    {"D_a0", false, nullptr, &RunConfig::D_a0},
    {"d_a0", false, nullptr, &RunConfig::d_a0},
    {"V0_eV", false, nullptr, &RunConfig::V0_eV},
    {"theta_deg", false, nullptr, &RunConfig::theta_deg},
    {"eta_eV", false, nullptr, &RunConfig::eta_eV},
    {"E_min_eV", false, nullptr, &RunConfig::E_min_eV},
    {"E_max_eV", false, nullptr, &RunConfig::E_max_eV},
    {"E_steps", true, &RunConfig::E_steps, nullptr},
    {"mu_eV", false, nullptr, &RunConfig::mu_eV},
    {"temperature_K", false, nullptr, &RunConfig::temperature_K},
    {"quad_pts_per_a0", true, &RunConfig::quad_pts_per_a0, nullptr},
    {"workers", true, &RunConfig::workers, nullptr},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected `key = value`: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError(lineno, "expected `key = value`: '" + line + "'");

    const Field* field = nullptr;
    for (const auto& f : kFields)
      if (key == f.name) {
        field = &f;
        break;
      }
    if (!field) throw ParseError(lineno, "unknown key '" + key + "'");

    try {
      std::size_t used = 0;
      if (field->is_int && field->iptr) {
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        cfg.*(field->iptr) = static_cast<int>(v);
      } else {
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        cfg.*(field->dptr) = v;
      }
    } catch (const std::exception&) {
      throw ParseError(lineno, "cannot parse value '" + value + "' for key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

void validate_config(const RunConfig& cfg, const PhysicalConstants& pc) {
  auto fail = [](const std::string& msg) { throw ParseError(0, "invalid config: " + msg); };
  if (cfg.N < 1) fail("N must be >= 1");
  if (cfg.n_modes < 1 || cfg.n_modes > cfg.N) fail("need 1 <= n_modes <= N");
  if (!(cfg.delta_A > 0.0)) fail("delta_A must be > 0");
  if (!(cfg.total_length_a0 > 0.0)) fail("total_length_a0 must be > 0");
  if (cfg.D_a0 < 0.0 || cfg.d_a0 < 0.0) fail("D_a0 and d_a0 must be >= 0");
  if (!(std::abs(cfg.theta_deg) < 90.0)) fail("|theta_deg| must be < 90");
  if (cfg.eta_eV < 0.0) fail("eta_eV must be >= 0");
  if (cfg.E_steps < 2) fail("E_steps must be >= 2");
  if (!(cfg.E_max_eV > cfg.E_min_eV)) fail("E_max_eV must exceed E_min_eV");
  if (cfg.temperature_K < 0.0) fail("temperature_K must be >= 0");
  if (cfg.quad_pts_per_a0 < 2) fail("quad_pts_per_a0 must be >= 2");
  if (cfg.workers < 0) fail("workers must be >= 0");
  const double L = cfg.total_length_a0 * pc.a0;
  if (std::llround(L / cfg.delta_A) < 3) fail("device shorter than 3 grid rows");
  if (cfg.V0_eV != 0.0) {
    const double W = cfg.N * pc.a0 / 2.0;
    const double reach = barrier_footprint_halfwidth(cfg.barrier(pc), W, pc);
    if (reach + 5.0 * cfg.delta_A > 0.5 * L)
      fail("barrier footprint " + fmt_token(reach) + " A plus a 5-row margin exceeds half the device length " +
           fmt_token(0.5 * L) + " A");
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : kFields) {
    if (f.is_int && f.iptr)
      out.emplace_back(f.name, std::to_string(cfg.*(f.iptr)));
    else
      out.emplace_back(f.name, fmt_double(cfg.*(f.dptr)));
  }
  return out;
}

namespace {

void write_header(std::ostream& os, const RunConfig& cfg) {
  os << "# ribbon-klein v" << kVersion << "\n";
  for (const auto& [k, v] : config_entries(cfg)) os << "# " << k << " = " << v << "\n";
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path.string());
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_curve_csv(const std::filesystem::path& path, const RunConfig& cfg,
                     const std::vector<double>& energies,
                     const std::vector<std::pair<bool, double>>& T,
                     const std::string& extra_comment) {
  auto os = open_out(path);
  write_header(os, cfg);
  if (!extra_comment.empty()) os << "# " << extra_comment << "\n";
  os << "E_eV,T\n";
  for (std::size_t i = 0; i < energies.size(); ++i) {
    os << fmt_sig9(energies[i]) << ',';
    if (T[i].first)
      os << fmt_sig9(T[i].second);
    else
      os << "error";
    os << '\n';
  }
  finish(os, path);
}

void write_ldos_csv(const std::filesystem::path& path, const RunConfig& cfg,
                    const std::vector<double>& energies,
                    const std::vector<std::vector<double>>& rows_by_energy) {
  auto os = open_out(path);
  write_header(os, cfg);
  os << "m";
  for (double e : energies) os << ",E=" << fmt_sig9(e);
  os << "\n";
  std::size_t rows = 0;
  for (const auto& col : rows_by_energy) rows = std::max(rows, col.size());
  for (std::size_t m = 0; m < rows; ++m) {
    os << m;
    for (const auto& col : rows_by_energy) {
      os << ',';
      if (m < col.size())
        os << fmt_sig9(col[m]);
      else
        os << "error";
    }
    os << '\n';
  }
  finish(os, path);
}

void write_manifest_csv(const std::filesystem::path& path, const RunConfig& cfg,
                        const std::string& key_column,
                        const std::vector<std::pair<std::string, std::string>>& rows) {
  auto os = open_out(path);
  write_header(os, cfg);
  os << key_column << ",file\n";
  for (const auto& [k, f] : rows) os << k << ',' << f << '\n';
  finish(os, path);
}

SweepKind default_sweep(SweepVariant variant) {
  switch (variant) {
    case SweepVariant::angle:
      return {variant, {0.0, 15.0, 45.0}};
    case SweepVariant::length:
      return {variant, {40.0, 60.0, 80.0}};
    case SweepVariant::broadening:
      return {variant, {0.0, 1e-4, 1e-3, 1e-2}};
    default:
      return {variant, {}};
  }
}

SweepVariant sweep_variant_from_name(const std::string& name) {
  if (name == "energy") return SweepVariant::energy;
  if (name == "angle") return SweepVariant::angle;
  if (name == "length") return SweepVariant::length;
  if (name == "broadening") return SweepVariant::broadening;
  if (name == "ldos") return SweepVariant::ldos;
  throw std::invalid_argument("unknown sweep kind '" + name +
                              "' (expected energy|angle|length|broadening|ldos)");
}

namespace {

std::string conductance_comment(const RunConfig& cfg, const std::vector<double>& energies,
                                const std::vector<EnergyPointResult>& res) {
  TransmissionCurve curve;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (!res[i].ok()) return {};
    curve.points.push_back({energies[i], res[i].T});
  }
  try {
    const double sigma = conductance(curve, {cfg.mu_eV, cfg.temperature_K});
    return "conductance[2e^2/h]: " + fmt_sig9(sigma) + " at mu " + fmt_token(cfg.mu_eV) +
           " eV, temperature " + fmt_token(cfg.temperature_K) + " K";
  } catch (const std::invalid_argument&) {
    return {};  // window not covered by this sweep
  }
}

bool run_curve_point(const RunConfig& cfg, const std::filesystem::path& path) {
  const DeviceModel model = build_device(cfg);
  const auto energies = energy_grid(cfg.E_min_eV, cfg.E_max_eV, cfg.E_steps);
  const auto res = solve_many(model, energies, cfg.workers, false);
  bool ok = true;
  std::vector<std::pair<bool, double>> tcol(res.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    tcol[i] = {res[i].ok(), res[i].T};
    if (!res[i].ok()) {
      ok = false;
      std::fprintf(stderr, "ribbon-klein: E = %g eV failed: %s\n", energies[i],
                   res[i].error.c_str());
    }
  }
  write_curve_csv(path, cfg, energies, tcol, conductance_comment(cfg, energies, res));
  return ok;
}

}  // namespace

bool run_sweep(const RunConfig& cfg, const SweepKind& kind, const std::filesystem::path& out_dir) {
  validate_config(cfg);
  const bool listy = kind.variant == SweepVariant::angle || kind.variant == SweepVariant::length ||
                     kind.variant == SweepVariant::broadening;
  if (listy && kind.values.empty())
    throw std::invalid_argument("run_sweep: sweep value list must be non-empty");
  std::filesystem::create_directories(out_dir);

  bool all_ok = true;
  std::vector<std::pair<std::string, std::string>> manifest;
  std::string key_column = "index";

  switch (kind.variant) {
    case SweepVariant::energy: {
      const std::string file = "transmission.csv";
      all_ok = run_curve_point(cfg, out_dir / file);
      manifest.emplace_back("0", file);
      break;
    }
    case SweepVariant::angle:
    case SweepVariant::length:
    case SweepVariant::broadening: {
      for (double v : kind.values) {
        RunConfig point = cfg;
        std::string file;
        if (kind.variant == SweepVariant::angle) {
          point.theta_deg = v;
          key_column = "theta_deg";
          file = "transmission_theta_" + fmt_token(v) + ".csv";
        } else if (kind.variant == SweepVariant::length) {
          point.D_a0 = v;
          key_column = "D_a0";
          file = "transmission_D_" + fmt_token(v) + "a0.csv";
        } else {
          point.eta_eV = v;
          key_column = "eta_eV";
          file = "transmission_eta_" + fmt_token(v) + ".csv";
        }
        validate_config(point);
        all_ok = run_curve_point(point, out_dir / file) && all_ok;
        manifest.emplace_back(fmt_token(v), file);
      }
      break;
    }
    case SweepVariant::ldos: {
      const DeviceModel model = build_device(cfg);
      const auto energies = energy_grid(cfg.E_min_eV, cfg.E_max_eV, cfg.E_steps);
      const auto res = solve_many(model, energies, cfg.workers, true);
      std::vector<std::vector<double>> cols(res.size());
      for (std::size_t i = 0; i < res.size(); ++i) {
        if (res[i].ok()) {
          cols[i] = res[i].ldos_rows;
        } else {
          all_ok = false;
          std::fprintf(stderr, "ribbon-klein: E = %g eV failed: %s\n", energies[i],
                       res[i].error.c_str());
        }
      }
      const std::string file = "ldos_map.csv";
      write_ldos_csv(out_dir / file, cfg, energies, cols);
      manifest.emplace_back("0", file);
      break;
    }
  }
  write_manifest_csv(out_dir / "manifest.csv", cfg, key_column, manifest);
  return all_ok;
}

}  // namespace rk
