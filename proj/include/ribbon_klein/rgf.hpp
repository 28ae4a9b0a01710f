#pragma once

#include <functional>
#include <vector>

#include "ribbon_klein/barrier.hpp"
#include "ribbon_klein/complex_matrix.hpp"
#include "ribbon_klein/ribbon.hpp"

namespace rk {

// Broadening floor applied by the transport drivers and the analytic
// self-energy; regularizes subband-edge singularities.
inline constexpr double kEtaFloor = 1e-9;

// Inter-row coupling b = t * blockdiag([[0,-1],[1,0]]) with t = hbar_vF/(2*delta).
// Real, antisymmetric; stored by its scale only.
struct CouplingBlock {
  double t = 0.0;
  int dim = 0;  // block dimension (2 * n_modes), even

  static CouplingBlock make(double delta, int dim, const PhysicalConstants& pc = {});
  CMatrix dense() const;
};

// out = b * g * b (exploits the per-mode 2x2 structure of b)
void sandwich_b(const CouplingBlock& b, const CMatrix& g, CMatrix& out);
// out = c * b
void mul_b_right(const CouplingBlock& b, const CMatrix& c, CMatrix& out);

enum class LeadSide { Lower, Upper };

// Diagonal retarded surface self-energy of a pristine semi-infinite lead.
struct SurfaceSelfEnergy {
  std::vector<cx> diag;
  LeadSide side = LeadSide::Lower;

  CMatrix to_matrix() const;
};

// Device diagonal block a_m = (E + i eta) 1 + D(y_m):
//   [(n,g),(n',g')] = (E+i eta) delta + hbar_vF (g+g')/2 q_n delta_{nn'}
//                     - delta_{gg'} V_{nn'}(y_m)
void assemble_block(double E, double eta, int m, const ModeSpace& space,
                    const PotentialTable& table, const PhysicalConstants& pc, CMatrix& out);

// Lead on-site block (V = 0).
CMatrix lead_block(double E, double eta, const ModeSpace& space, const PhysicalConstants& pc = {});

// Closed-form surface self-energy, per mode (n,gamma):
//   Sigma = 1/2 (1 - sqrt(1 - 1/(Delta^2 (Et^2/(hbar_vF)^2 - q_n^2)))) (Et + gamma hbar_vF q_n)
// with Et = E + i*eta; the branch is flipped where needed so Im Sigma <= 0.
// eta is floored at kEtaFloor.
SurfaceSelfEnergy surface_self_energy_analytic(double E, double eta, const ModeSpace& space,
                                               double delta, const PhysicalConstants& pc = {},
                                               LeadSide side = LeadSide::Lower);

// Fixed point of [a + b G b] G = 1 solved by layer doubling; Sigma = -b G b.
// Stops when successive Sigma iterates differ by < 1e-12 (max-norm); throws
// NumericalFailure with the last residual if 10,000 steps do not converge.
// Requires eta > 0.
SurfaceSelfEnergy surface_self_energy_iterative(double E, double eta, const CMatrix& a_lead,
                                                const CouplingBlock& b,
                                                LeadSide side = LeadSide::Lower);

// Gamma = i (Sigma - Sigma^dagger); Hermitian PSD for a retarded Sigma.
CMatrix gamma_matrix(const SurfaceSelfEnergy& sigma);

// One energy's block-tridiagonal system: row m owns diagonal block a_m
// (self-energies are folded into rows 0 and M-1 by the solver), sub/super
// diagonals are -b/+b.
struct BlockSystem {
  int num_rows = 0;
  int dim = 0;
  double energy = 0.0;
  double eta = 0.0;
  CouplingBlock b;
  SurfaceSelfEnergy sigma_lower, sigma_upper;
  std::function<void(int m, CMatrix& out)> fill_row;  // writes a_m into out
};

struct DeviceGreen {
  CMatrix corner;              // G(0, M-1)
  std::vector<CMatrix> diag;   // G(m, m), m = 0..M-1
  double energy = 0.0;
  double eta = 0.0;
};

// Forward/backward block recursion; O(M) stored blocks. Throws
// NumericalFailure naming the device row on a singular pivot block.
DeviceGreen rgf_solve(const BlockSystem& sys);

// Corner block only (single forward sweep, O(1) block storage).
CMatrix rgf_corner(const BlockSystem& sys);

struct CornerAndTraces {
  CMatrix corner;
  std::vector<cx> diag_trace;  // Tr G(m,m)
};
CornerAndTraces rgf_diag_traces(const BlockSystem& sys);

// Oracle route: materialize the full matrix and invert by LU with partial
// pivoting. Guarded to M*dim <= 4000.
DeviceGreen dense_solve(const BlockSystem& sys);

}  // namespace rk
