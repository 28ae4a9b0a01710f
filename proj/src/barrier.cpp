#include "ribbon_klein/barrier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rk {

void BarrierSpec::validate() const {
  if (d < 0.0) throw std::invalid_argument("BarrierSpec: d must be >= 0");
  if (D < 0.0) throw std::invalid_argument("BarrierSpec: D must be >= 0");
  if (!(std::abs(theta) < std::numbers::pi / 2))
    throw std::invalid_argument("BarrierSpec: |theta| must be < pi/2");
}

double profile_1d(double y, const BarrierSpec& spec) {
  const double ay = std::abs(y);
  if (ay <= 0.5 * (spec.D - spec.d)) return spec.V0;
  if (ay >= 0.5 * (spec.D + spec.d)) return 0.0;
  return 0.5 * spec.V0 * (1.0 - std::sin(std::numbers::pi * (2.0 * ay - spec.D) / (2.0 * spec.d)));
}

double oblique_value(double x, double y, const BarrierSpec& spec, double W) {
  return profile_1d(y - (x - 0.5 * W) * std::tan(spec.theta), spec);
}

double barrier_footprint_halfwidth(const BarrierSpec& spec, double W,
                                   const PhysicalConstants& pc) {
  return 0.5 * (spec.D + spec.d) + (0.5 * W + 0.5 * pc.a0) * std::abs(std::tan(spec.theta));
}

namespace {

struct Quadrature {
  double Wt = 0.0;
  std::vector<double> x;  // nodes on [0, Wt]
  std::vector<double> w;  // trapezoid weights
};

Quadrature make_quadrature(double W, int quad_pts, const PhysicalConstants& pc) {
  if (quad_pts < 2) throw std::invalid_argument("project_potential: quad_pts must be >= 2");
  Quadrature q;
  q.Wt = W + 0.5 * pc.a0;
  const int panels = std::max<int>(2, static_cast<int>(std::llround(quad_pts * q.Wt / pc.a0)));
  const double h = q.Wt / panels;
  q.x.resize(panels + 1);
  q.w.assign(panels + 1, h);
  for (int j = 0; j <= panels; ++j) q.x[j] = j * h;
  q.w.front() *= 0.5;
  q.w.back() *= 0.5;
  return q;
}

// cos((q_n - q_n')x) depends only on dn = n - n'; dq_dn = (2pi/a0)*dn/(N+1).
std::vector<std::vector<double>> make_cos_table(const Quadrature& quad, int N, int dmax,
                                                const PhysicalConstants& pc) {
  std::vector<std::vector<double>> table(dmax + 1, std::vector<double>(quad.x.size()));
  for (int dn = 0; dn <= dmax; ++dn) {
    const double dq = (2.0 * std::numbers::pi / pc.a0) * double(dn) / (N + 1);
    for (std::size_t j = 0; j < quad.x.size(); ++j) table[dn][j] = std::cos(dq * quad.x[j]);
  }
  return table;
}

std::vector<double> project_row(double y, const ModeSpace& space, const BarrierSpec& spec,
                                double W, const Quadrature& quad,
                                const std::vector<std::vector<double>>& cos_table) {
  const int nm = space.n_modes;
  const double tan_theta = std::tan(spec.theta);
  std::vector<double> v(quad.x.size());
  for (std::size_t j = 0; j < quad.x.size(); ++j)
    v[j] = profile_1d(y - (quad.x[j] - 0.5 * W) * tan_theta, spec);

  std::vector<double> t(cos_table.size());
  for (std::size_t dn = 0; dn < cos_table.size(); ++dn) {
    double acc = 0.0;
    const double* c = cos_table[dn].data();
    for (std::size_t j = 0; j < quad.x.size(); ++j) acc += quad.w[j] * v[j] * c[j];
    t[dn] = acc / quad.Wt;
  }

  std::vector<double> out(std::size_t(nm) * nm);
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nm; ++j)
      out[std::size_t(i) * nm + j] = t[std::abs(space.distinct_n[i] - space.distinct_n[j])];
  return out;
}

int max_index_spread(const ModeSpace& space) {
  int lo = space.distinct_n.front(), hi = lo;
  for (int n : space.distinct_n) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  return hi - lo;
}

}  // namespace

std::vector<double> project_potential(double y, const ModeSpace& space, const BarrierSpec& spec,
                                      const RibbonGeometry& geom, int quad_pts,
                                      const PhysicalConstants& pc) {
  spec.validate();
  const Quadrature quad = make_quadrature(geom.W, quad_pts, pc);
  const auto cos_table = make_cos_table(quad, geom.N, max_index_spread(space), pc);
  return project_row(y, space, spec, geom.W, quad, cos_table);
}

PotentialTable build_potential_table(const RibbonGeometry& geom, const ModeSpace& space,
                                     const BarrierSpec& spec, int quad_pts,
                                     const PhysicalConstants& pc) {
  spec.validate();
  PotentialTable table;
  table.n_modes = space.n_modes;
  table.quadrature_points_per_a0 = quad_pts;
  table.rows.resize(geom.M);
  if (spec.V0 == 0.0) {
    for (auto& r : table.rows) r.assign(std::size_t(space.n_modes) * space.n_modes, 0.0);
    return table;
  }
  const Quadrature quad = make_quadrature(geom.W, quad_pts, pc);
  const auto cos_table = make_cos_table(quad, geom.N, max_index_spread(space), pc);
  for (int m = 0; m < geom.M; ++m)
    table.rows[m] = project_row(geom.y(m), space, spec, geom.W, quad, cos_table);
  return table;
}

}  // namespace rk
