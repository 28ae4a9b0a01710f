#include "ribbon_klein/ribbon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rk {

RibbonGeometry RibbonGeometry::make(int N, double delta, double requested_length,
                                    const PhysicalConstants& pc) {
  pc.validate();
  if (N < 1) throw std::invalid_argument("RibbonGeometry: N must be >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("RibbonGeometry: delta must be > 0");
  RibbonGeometry g;
  g.N = N;
  g.W = N * pc.a0 / 2.0;
  g.delta = delta;
  g.M = static_cast<int>(std::llround(requested_length / delta));
  if (g.M < 3) throw std::invalid_argument("RibbonGeometry: device needs at least 3 grid rows");
  g.total_length = g.M * delta;
  g.classification = classify_ribbon(N);
  return g;
}

double subband_momentum(int n, int N, const PhysicalConstants& pc) {
  if (N < 1) throw std::invalid_argument("subband_momentum: N must be >= 1");
  return (2.0 * std::numbers::pi / pc.a0) * (double(n) / (N + 1) + 1.0 / 3.0);
}

RibbonKind classify_ribbon(int N) {
  if (N < 1) throw std::invalid_argument("classify_ribbon: N must be >= 1");
  return ((N + 1) % 3 == 0) ? RibbonKind::Metallic : RibbonKind::Semiconducting;
}

ModeSpace enumerate_modes(int N, int n_modes, const PhysicalConstants& pc) {
  if (N < 1) throw std::invalid_argument("enumerate_modes: N must be >= 1");
  if (n_modes < 1 || n_modes > N)
    throw std::invalid_argument("enumerate_modes: need 1 <= n_modes <= N");
  // |q| is minimized near n = -(N+1)/3; a window of +-(n_modes+2) around it
  // always contains the n_modes closest subbands.
  const int center = static_cast<int>(std::llround(-double(N + 1) / 3.0));
  std::vector<int> cand;
  for (int n = center - n_modes - 2; n <= center + n_modes + 2; ++n) cand.push_back(n);
  // +-q partners are exact ties up to roundoff; resolve them by smaller n
  std::sort(cand.begin(), cand.end(), [&](int a, int b) {
    const double qa = std::abs(subband_momentum(a, N, pc));
    const double qb = std::abs(subband_momentum(b, N, pc));
    if (std::abs(qa - qb) > 1e-12 * (1.0 + qa)) return qa < qb;
    return a < b;
  });
  cand.resize(n_modes);

  ModeSpace s;
  s.n_modes = n_modes;
  s.block_dim = 2 * n_modes;
  s.distinct_n = cand;
  for (int n : cand) {
    const double q = subband_momentum(n, N, pc);
    s.q.push_back(q);
    s.modes.push_back({n, +1, q});
    s.modes.push_back({n, -1, q});
  }
  return s;
}

double dispersion(const Mode& mode, double k, const PhysicalConstants& pc) {
  return mode.gamma * pc.hbar_vF * std::hypot(mode.q, k);
}

std::vector<double> mode_onsets(const ModeSpace& space, const PhysicalConstants& pc) {
  std::vector<double> e;
  e.reserve(space.q.size());
  for (double q : space.q) e.push_back(pc.hbar_vF * std::abs(q));
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end(),
                      [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); }),
          e.end());
  return e;
}

int open_channels(const ModeSpace& space, double E, const PhysicalConstants& pc) {
  int count = 0;
  const double aE = std::abs(E);
  for (double q : space.q)
    if (pc.hbar_vF * std::abs(q) < aE) ++count;
  return count;
}

std::complex<double> z_factor(double q, double k) {
  if (q == 0.0 && k == 0.0) throw std::invalid_argument("z_factor: (q,k) = (0,0)");
  const std::complex<double> num = std::sqrt(std::complex<double>(q, -k));
  const std::complex<double> den = std::sqrt(std::complex<double>(q, k));
  return num / den;
}

}  // namespace rk
