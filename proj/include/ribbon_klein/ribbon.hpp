#pragma once

#include <complex>
#include <vector>

#include "ribbon_klein/constants.hpp"

namespace rk {

enum class RibbonKind { Metallic, Semiconducting };

// Armchair ribbon geometry on a uniform longitudinal grid.
// Device rows sit at y_m = -L/2 + m*delta, m = 0..M-1, with L = M*delta.
struct RibbonGeometry {
  int N = 0;               // width index; W = N*a0/2
  double W = 0.0;          // ribbon width [A]
  double delta = 0.0;      // grid spacing [A]
  int M = 0;               // device row count
  double total_length = 0.0;  // M*delta [A]
  RibbonKind classification = RibbonKind::Semiconducting;

  static RibbonGeometry make(int N, double delta, double requested_length,
                             const PhysicalConstants& pc = {});
  double y(int m) const { return -0.5 * total_length + m * delta; }
};

struct Mode {
  int n = 0;       // subband index
  int gamma = +1;  // +1 conduction, -1 valence
  double q = 0.0;  // transverse momentum [1/A]
};

// Ordered (n, gamma) basis. Pairs sorted by (|q|, n), gamma=+1 before -1, so
// block index 2*i picks gamma=+1 of subband i and 2*i+1 its gamma=-1 partner.
struct ModeSpace {
  std::vector<Mode> modes;
  std::vector<int> distinct_n;  // one entry per subband, in pair order
  std::vector<double> q;        // q per subband, same order
  int n_modes = 0;
  int block_dim = 0;
};

// q_n = (2*pi/a0) * (n/(N+1) + 1/3); may be negative.
double subband_momentum(int n, int N, const PhysicalConstants& pc = {});

RibbonKind classify_ribbon(int N);

// The n_modes subbands with smallest |q| (tie -> smaller n), each with both
// gamma signs. Throws std::invalid_argument unless 1 <= n_modes <= N.
ModeSpace enumerate_modes(int N, int n_modes, const PhysicalConstants& pc = {});

// E = gamma * hbar_vF * sqrt(q^2 + k^2)
double dispersion(const Mode& mode, double k, const PhysicalConstants& pc = {});

// Sorted unique subband edges hbar_vF*|q_n|.
std::vector<double> mode_onsets(const ModeSpace& space, const PhysicalConstants& pc = {});

// Propagating-channel count at energy E: subbands with hbar_vF*|q_n| < |E|
// (strict, so a mode sitting exactly at its onset does not yet count).
int open_channels(const ModeSpace& space, double E, const PhysicalConstants& pc = {});

// z = sqrt(q - ik)/sqrt(q + ik), principal branches; |z| = 1.
std::complex<double> z_factor(double q, double k);

}  // namespace rk
