#include "ribbon_klein/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "ribbon_klein/errors.hpp"

namespace rk {

DeviceModel build_device(const RunConfig& cfg, const PhysicalConstants& pc) {
  pc.validate();
  validate_config(cfg, pc);
  DeviceModel m;
  m.pc = pc;
  m.geom = RibbonGeometry::make(cfg.N, cfg.delta_A, cfg.total_length_a0 * pc.a0, pc);
  m.space = enumerate_modes(cfg.N, cfg.n_modes, pc);
  m.barrier = cfg.barrier(pc);
  m.table = build_potential_table(m.geom, m.space, m.barrier, cfg.quad_pts_per_a0, pc);
  m.b = CouplingBlock::make(cfg.delta_A, m.space.block_dim, pc);
  m.eta_eff = std::max(cfg.eta_eV, kEtaFloor);
  if (m.barrier.V0 != 0.0) {
    // The closed-form self-energies assume pristine leads; flag barrier leakage.
    double edge = 0.0;
    for (double v : m.table.rows.front()) edge = std::max(edge, std::abs(v));
    for (double v : m.table.rows.back()) edge = std::max(edge, std::abs(v));
    if (edge > 1e-6 * std::abs(m.barrier.V0))
      std::fprintf(stderr,
                   "ribbon-klein: warning: barrier potential reaches the lead-adjacent rows "
                   "(max |V| = %.3e eV); self-energies assume pristine leads\n",
                   edge);
  }
  return m;
}

BlockSystem make_system(const DeviceModel& model, double E) {
  BlockSystem sys;
  sys.num_rows = model.geom.M;
  sys.dim = model.space.block_dim;
  sys.energy = E;
  sys.eta = model.eta_eff;
  sys.b = model.b;
  sys.sigma_lower = surface_self_energy_analytic(E, model.eta_eff, model.space, model.geom.delta,
                                                 model.pc, LeadSide::Lower);
  sys.sigma_upper = surface_self_energy_analytic(E, model.eta_eff, model.space, model.geom.delta,
                                                 model.pc, LeadSide::Upper);
  const DeviceModel* mp = &model;
  const double eta = model.eta_eff;
  sys.fill_row = [mp, E, eta](int m, CMatrix& out) {
    assemble_block(E, eta, m, mp->space, mp->table, mp->pc, out);
  };
  return sys;
}

EnergyPointResult solve_energy_point(const DeviceModel& model, double E, bool want_ldos) {
  EnergyPointResult res;
  try {
    const BlockSystem sys = make_system(model, E);
    const CMatrix gamma_L = gamma_matrix(sys.sigma_lower);
    const CMatrix gamma_U = gamma_matrix(sys.sigma_upper);
    if (want_ldos) {
      CornerAndTraces ct = rgf_diag_traces(sys);
      res.T = transmission(ct.corner, gamma_L, gamma_U);
      res.ldos_rows.resize(ct.diag_trace.size());
      for (std::size_t m = 0; m < ct.diag_trace.size(); ++m)
        res.ldos_rows[m] = ldos_from_trace(ct.diag_trace[m]);
    } else {
      const CMatrix corner = rgf_corner(sys);
      res.T = transmission(corner, gamma_L, gamma_U);
    }
  } catch (const NumericalFailure& e) {
    res.error = e.what();
  }
  return res;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<EnergyPointResult> solve_many(const DeviceModel& model,
                                          const std::vector<double>& energies, int workers,
                                          bool want_ldos) {
  std::vector<EnergyPointResult> results(energies.size());
  const int n = static_cast<int>(energies.size());
  const int nw = std::min(resolve_workers(workers), std::max(1, n));
  if (nw <= 1) {
    for (int i = 0; i < n; ++i) results[i] = solve_energy_point(model, energies[i], want_ldos);
    return results;
  }
  std::atomic<int> next{0};
  auto body = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        results[i] = solve_energy_point(model, energies[i], want_ldos);
      } catch (const std::exception& e) {
        results[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  return results;
}

std::vector<double> energy_grid(double e_min, double e_max, int steps) {
  if (steps < 2) throw std::invalid_argument("energy_grid: need at least 2 steps");
  if (!(e_max > e_min)) throw std::invalid_argument("energy_grid: E_max must exceed E_min");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = e_min + (e_max - e_min) * double(i) / (steps - 1);
  return g;
}

}  // namespace rk
