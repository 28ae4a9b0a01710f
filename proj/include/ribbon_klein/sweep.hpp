#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ribbon_klein/config.hpp"
#include "ribbon_klein/observables.hpp"

namespace rk {

enum class SweepVariant { energy, angle, length, broadening, ldos };

struct SweepKind {
  SweepVariant variant = SweepVariant::energy;
  std::vector<double> values;  // angle: deg, length: a0 multiples, broadening: eV
};

// Paper-figure defaults: angles {0, 15, 45} deg, lengths {40, 60, 80} a0,
// broadenings {0, 1e-4, 1e-3, 1e-2} eV.
SweepKind default_sweep(SweepVariant variant);

SweepVariant sweep_variant_from_name(const std::string& name);

// Executes the sweep, writing one CSV per sweep point plus manifest.csv into
// out_dir. Per-energy solver failures are recorded as `error` rows; returns
// false if any occurred.
bool run_sweep(const RunConfig& cfg, const SweepKind& kind, const std::filesystem::path& out_dir);

// CSV payloads (header: version line, `# key = value` config echo, column
// header, LF endings, energies with 9 significant digits).
void write_curve_csv(const std::filesystem::path& path, const RunConfig& cfg,
                     const std::vector<double>& energies,
                     const std::vector<std::pair<bool, double>>& T,
                     const std::string& extra_comment = {});
void write_ldos_csv(const std::filesystem::path& path, const RunConfig& cfg,
                    const std::vector<double>& energies,
                    const std::vector<std::vector<double>>& rows_by_energy);
void write_manifest_csv(const std::filesystem::path& path, const RunConfig& cfg,
                        const std::string& key_column,
                        const std::vector<std::pair<std::string, std::string>>& rows);

}  // namespace rk
