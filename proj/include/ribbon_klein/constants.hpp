#pragma once

#include <stdexcept>

namespace rk {

inline constexpr const char* kVersion = "0.1.0";

// Material constants for graphene in eV / angstrom units.
struct PhysicalConstants {
  double a0 = 2.46;          // lattice constant [A]
  double hbar_vF = 6.582;    // hbar * Fermi velocity [eV*A] (v_F = 1e6 m/s)
  double kB = 8.617e-5;      // Boltzmann constant [eV/K]

  void validate() const {
    if (!(a0 > 0.0) || !(hbar_vF > 0.0) || !(kB > 0.0))
      throw std::invalid_argument("PhysicalConstants: all entries must be strictly positive");
  }
};

}  // namespace rk
