#pragma once

#include <vector>

#include "ribbon_klein/rgf.hpp"

namespace rk {

// The centered-difference lattice carries two exactly decoupled Dirac cones
// per transverse mode, so the bare Green-function trace counts every physical
// channel twice. Reported transmission is per physical cone.
inline constexpr int kConeDegeneracy = 2;

struct TransmissionPoint {
  double energy = 0.0;  // [eV]
  double T = 0.0;
};

struct TransmissionCurve {
  std::vector<TransmissionPoint> points;
};

struct LdosMap {
  std::vector<double> energies;           // [eV]
  std::vector<std::vector<double>> rows;  // [M][energies] DOS(m, E) in 1/eV
};

struct ThermalSpec {
  double mu = 0.0;           // chemical potential [eV]
  double temperature = 0.0;  // [K]
};

// T = Re Tr[C Gamma_U C^dagger Gamma_L] / kConeDegeneracy with C = G(0,M-1).
// Throws NumericalFailure if the trace's imaginary part exceeds 1e-9*(1+|T|).
double transmission(const CMatrix& corner, const CMatrix& gamma_L, const CMatrix& gamma_U);

// DOS(m, E) = -(1/pi) Im Tr G(m,m)
double ldos(const DeviceGreen& green, int m);
double ldos_from_trace(cx diag_trace);

// Landauer average of T(E) against -df/dE, normalized over the +-10 kB T
// window (spacing must be <= kB T / 4). temperature == 0 interpolates T(mu).
double conductance(const TransmissionCurve& curve, const ThermalSpec& thermal,
                   const PhysicalConstants& pc = {});

// 2D sheet reference: T = cos^2(theta) / (1 - cos^2(kD) sin^2(theta)).
double klein_2d(double theta, double k, double D);

// Quantum-well level spacing estimate hbar_vF / max{D, W}.
double peak_spacing_estimate(double D, double W, const PhysicalConstants& pc = {});

}  // namespace rk
