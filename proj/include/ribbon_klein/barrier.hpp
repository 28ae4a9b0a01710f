#pragma once

#include <vector>

#include "ribbon_klein/ribbon.hpp"

namespace rk {

// Smoothed barrier: V0 inside |y| <= (D-d)/2, zero outside |y| >= (D+d)/2,
// half-sine ramp in between. theta tilts it across the ribbon.
struct BarrierSpec {
  double V0 = 0.0;     // [eV]
  double D = 0.0;      // barrier length [A]
  double d = 0.0;      // transition length [A]
  double theta = 0.0;  // oblique angle [rad]

  void validate() const;
};

double profile_1d(double y, const BarrierSpec& spec);

// V(x, y) = profile_1d(y - (x - W/2) * tan(theta))
double oblique_value(double x, double y, const BarrierSpec& spec, double W);

// Per-row projected barrier matrices V_{nn'}(y_m) over the distinct-n basis.
// Same-gamma blocks receive these entries at assembly; cross-gamma blocks are
// zero. Row matrices are n_modes x n_modes, row-major, symmetric.
struct PotentialTable {
  int n_modes = 0;
  int quadrature_points_per_a0 = 0;
  std::vector<std::vector<double>> rows;  // [M][n_modes*n_modes]

  const double* row(int m) const { return rows[m].data(); }
  double entry(int m, int i, int j) const { return rows[m][std::size_t(i) * n_modes + j]; }
};

// Transverse projection of one row: (1/Wt) * integral_0^Wt V(x,y) cos((q_n - q_n')x) dx
// with Wt = W + a0/2, composite trapezoid with quad_pts panels per a0.
std::vector<double> project_potential(double y, const ModeSpace& space, const BarrierSpec& spec,
                                      const RibbonGeometry& geom, int quad_pts,
                                      const PhysicalConstants& pc = {});

PotentialTable build_potential_table(const RibbonGeometry& geom, const ModeSpace& space,
                                     const BarrierSpec& spec, int quad_pts,
                                     const PhysicalConstants& pc = {});

// Largest |y|-reach of the tilted barrier measured from its center:
// (D+d)/2 + (W/2 + a0/2)*|tan(theta)|.
double barrier_footprint_halfwidth(const BarrierSpec& spec, double W,
                                   const PhysicalConstants& pc = {});

}  // namespace rk
