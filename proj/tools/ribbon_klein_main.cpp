// ribbon-klein: Klein-tunneling transport through oblique barriers in
// armchair graphene nanoribbons.
//
//   ribbon-klein run --config run.cfg --sweep energy --out results/
//   ribbon-klein validate --config run.cfg
//
// Exit codes: 0 success, 1 parse/validation error, 2 numerical failure.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ribbon_klein/errors.hpp"
#include "ribbon_klein/kernels.hpp"
#include "ribbon_klein/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rk::ParseError(0, "cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein tunneling through oblique barriers in armchair graphene nanoribbons"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", sweep_name = "energy";
  std::vector<double> values;

  auto* run = app.add_subcommand("run", "execute a sweep and write CSV artifacts");
  run->add_option("--config", config_path, "config file (key = value lines)")->required();
  run->add_option("--sweep", sweep_name, "energy|angle|length|broadening|ldos");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--values", values,
                  "override sweep point list (deg / a0 multiples / eV, comma separated)")
      ->delimiter(',');

  auto* validate = app.add_subcommand("validate", "parse and invariant-check a config");
  validate->add_option("--config", config_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const rk::RunConfig cfg = rk::parse_config(read_file(config_path));
    if (validate->parsed()) {
      std::printf("OK\n");
      return 0;
    }
    rk::SweepKind kind = rk::default_sweep(rk::sweep_variant_from_name(sweep_name));
    if (!values.empty()) {
      if (kind.variant == rk::SweepVariant::energy || kind.variant == rk::SweepVariant::ldos) {
        std::fprintf(stderr, "ribbon-klein: --values only applies to angle/length/broadening\n");
        return 1;
      }
      kind.values = values;
    }
    std::fprintf(stderr, "ribbon-klein: kernels backend: %s\n",
                 rk::kernels::backend_name(rk::kernels::active()));
    const bool ok = rk::run_sweep(cfg, kind, out_dir);
    if (!ok) {
      std::fprintf(stderr, "ribbon-klein: completed with numerical failures\n");
      return 2;
    }
    return 0;
  } catch (const rk::NumericalFailure& e) {
    std::fprintf(stderr, "ribbon-klein: numerical failure: %s\n", e.what());
    return 2;
  } catch (const rk::ParseError& e) {
    std::fprintf(stderr, "ribbon-klein: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "ribbon-klein: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ribbon-klein: error: %s\n", e.what());
    return 1;
  }
}
