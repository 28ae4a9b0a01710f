#pragma once

#include <string>
#include <vector>

#include "ribbon_klein/config.hpp"
#include "ribbon_klein/observables.hpp"
#include "ribbon_klein/rgf.hpp"

namespace rk {

// Energy-independent device state shared read-only by all energy points.
struct DeviceModel {
  PhysicalConstants pc;
  RibbonGeometry geom;
  ModeSpace space;
  BarrierSpec barrier;
  PotentialTable table;
  CouplingBlock b;
  double eta_eff = kEtaFloor;
};

DeviceModel build_device(const RunConfig& cfg, const PhysicalConstants& pc = {});

// Block system for one energy. References the model; the model must outlive
// the returned system.
BlockSystem make_system(const DeviceModel& model, double E);

struct EnergyPointResult {
  double T = 0.0;
  std::vector<double> ldos_rows;  // filled when requested
  std::string error;              // empty on success
  bool ok() const { return error.empty(); }
};

EnergyPointResult solve_energy_point(const DeviceModel& model, double E, bool want_ldos);

// Independent energy points fanned out over a bounded worker pool; results
// ordered by index, identical to the serial run.
std::vector<EnergyPointResult> solve_many(const DeviceModel& model,
                                          const std::vector<double>& energies, int workers,
                                          bool want_ldos);

std::vector<double> energy_grid(double e_min, double e_max, int steps);
int resolve_workers(int requested);

}  // namespace rk
