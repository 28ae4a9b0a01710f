#include "ribbon_klein/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ribbon_klein/errors.hpp"
#include "ribbon_klein/kernels.hpp"

namespace rk {

double transmission(const CMatrix& corner, const CMatrix& gamma_L, const CMatrix& gamma_U) {
  const int n = corner.rows();
  if (corner.cols() != n || gamma_L.rows() != n || gamma_L.cols() != n || gamma_U.rows() != n ||
      gamma_U.cols() != n)
    throw std::invalid_argument("transmission: dimension mismatch");
  using kernels::gemm;
  using kernels::GemmMode;
  CMatrix cu(n, n), cdl(n, n);
  gemm(GemmMode::set, cu, corner, gamma_U);  // C * Gamma_U
  const CMatrix cdag = adjoint(corner);
  gemm(GemmMode::set, cdl, cdag, gamma_L);   // C^dagger * Gamma_L
  cx tr = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) tr += cu(i, k) * cdl(k, i);
  const double T = tr.real() / kConeDegeneracy;
  if (std::abs(tr.imag()) > 1e-9 * (1.0 + std::abs(T)))
    throw NumericalFailure("transmission: trace imaginary part " + std::to_string(tr.imag()));
  return T;
}

double ldos_from_trace(cx diag_trace) { return -diag_trace.imag() / std::numbers::pi; }

double ldos(const DeviceGreen& green, int m) {
  if (m < 0 || m >= static_cast<int>(green.diag.size()))
    throw std::invalid_argument("ldos: row index out of range");
  return ldos_from_trace(trace(green.diag[m]));
}

double conductance(const TransmissionCurve& curve, const ThermalSpec& thermal,
                   const PhysicalConstants& pc) {
  if (thermal.temperature < 0.0) throw std::invalid_argument("conductance: temperature < 0");
  const auto& pts = curve.points;
  if (pts.size() < 2) throw std::invalid_argument("conductance: need at least 2 curve points");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i].energy > pts[i - 1].energy))
      throw std::invalid_argument("conductance: curve energies must be strictly increasing");

  auto interp = [&](double e) {
    auto it = std::lower_bound(pts.begin(), pts.end(), e,
                               [](const TransmissionPoint& p, double v) { return p.energy < v; });
    if (it == pts.begin()) return it->T;
    if (it == pts.end()) return (it - 1)->T;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double f = (e - lo.energy) / (hi.energy - lo.energy);
    return lo.T + f * (hi.T - lo.T);
  };

  if (thermal.temperature == 0.0) {
    if (thermal.mu < pts.front().energy || thermal.mu > pts.back().energy)
      throw std::invalid_argument("conductance: mu outside the curve at T = 0");
    return interp(thermal.mu);
  }

  const double kT = pc.kB * thermal.temperature;
  const double lo = thermal.mu - 10.0 * kT;
  const double hi = thermal.mu + 10.0 * kT;
  if (pts.front().energy > lo || pts.back().energy < hi)
    throw std::invalid_argument("conductance: curve must cover mu +- 10 kB T");

  // window sub-grid with interpolated endpoints
  std::vector<double> es, ts;
  es.push_back(lo);
  ts.push_back(interp(lo));
  for (const auto& p : pts)
    if (p.energy > lo && p.energy < hi) {
      es.push_back(p.energy);
      ts.push_back(p.T);
    }
  es.push_back(hi);
  ts.push_back(interp(hi));
  for (std::size_t i = 1; i < es.size(); ++i)
    if (es[i] - es[i - 1] > kT / 4.0 + 1e-12)
      throw std::invalid_argument("conductance: curve spacing exceeds kB T / 4 inside the window");

  // -df/dE = sech^2((E-mu)/(2 kT)) / (4 kT); weights normalized so that a
  // constant T integrates to itself exactly despite window truncation.
  auto kernel = [&](double e) {
    const double u = (e - thermal.mu) / (2.0 * kT);
    const double c = std::cosh(u);
    return 1.0 / (4.0 * kT * c * c);
  };
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i < es.size(); ++i) {
    const double h = es[i] - es[i - 1];
    const double k0 = kernel(es[i - 1]), k1 = kernel(es[i]);
    num += 0.5 * h * (k0 * ts[i - 1] + k1 * ts[i]);
    den += 0.5 * h * (k0 + k1);
  }
  return num / den;
}

double klein_2d(double theta, double k, double D) {
  if (!(std::abs(theta) < std::numbers::pi / 2))
    throw std::invalid_argument("klein_2d: |theta| must be < pi/2");
  const double c = std::cos(theta), s = std::sin(theta);
  const double ckd = std::cos(k * D);
  return c * c / (1.0 - ckd * ckd * s * s);
}

double peak_spacing_estimate(double D, double W, const PhysicalConstants& pc) {
  if (!(D > 0.0) || !(W > 0.0))
    throw std::invalid_argument("peak_spacing_estimate: D, W must be > 0");
  return pc.hbar_vF / std::max(D, W);
}

}  // namespace rk
