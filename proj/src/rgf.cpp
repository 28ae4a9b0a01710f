#include "ribbon_klein/rgf.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ribbon_klein/errors.hpp"
#include "ribbon_klein/kernels.hpp"

namespace rk {

namespace {

void add_inplace(CMatrix& a, const CMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] += b.data()[i];
}

void sub_inplace(CMatrix& a, const CMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] -= b.data()[i];
}

void ensure_shape(CMatrix& m, int r, int c) {
  if (m.rows() != r || m.cols() != c)
    m.resize(r, c);
  else
    m.set_zero();
}

}  // namespace

CouplingBlock CouplingBlock::make(double delta, int dim, const PhysicalConstants& pc) {
  if (!(delta > 0.0)) throw std::invalid_argument("CouplingBlock: delta must be > 0");
  if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("CouplingBlock: dim must be even >= 2");
  return CouplingBlock{pc.hbar_vF / (2.0 * delta), dim};
}

CMatrix CouplingBlock::dense() const {
  CMatrix b(dim, dim);
  for (int i = 0; i + 1 < dim; i += 2) {
    b(i, i + 1) = -t;
    b(i + 1, i) = t;
  }
  return b;
}

void sandwich_b(const CouplingBlock& b, const CMatrix& g, CMatrix& out) {
  const int n = b.dim;
  if (g.rows() != n || g.cols() != n) throw std::invalid_argument("sandwich_b: shape mismatch");
  if (out.rows() != n || out.cols() != n) out.resize(n, n);
  const double t2 = b.t * b.t;
  for (int i = 0; i + 1 < n; i += 2) {
    const cx* ge = g.row(i);      // gamma=+1 row of subband i/2
    const cx* go = g.row(i + 1);  // gamma=-1 row
    cx* pe = out.row(i);
    cx* po = out.row(i + 1);
    for (int j = 0; j + 1 < n; j += 2) {
      pe[j] = -t2 * go[j + 1];
      pe[j + 1] = t2 * go[j];
      po[j] = t2 * ge[j + 1];
      po[j + 1] = -t2 * ge[j];
    }
  }
}

void mul_b_right(const CouplingBlock& b, const CMatrix& c, CMatrix& out) {
  const int rows = c.rows(), n = b.dim;
  if (c.cols() != n) throw std::invalid_argument("mul_b_right: shape mismatch");
  if (out.rows() != rows || out.cols() != n) out.resize(rows, n);
  for (int i = 0; i < rows; ++i) {
    const cx* ci = c.row(i);
    cx* oi = out.row(i);
    for (int j = 0; j + 1 < n; j += 2) {
      oi[j] = b.t * ci[j + 1];
      oi[j + 1] = -b.t * ci[j];
    }
  }
}

CMatrix SurfaceSelfEnergy::to_matrix() const {
  CMatrix m(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) m(int(i), int(i)) = diag[i];
  return m;
}

void assemble_block(double E, double eta, int m, const ModeSpace& space,
                    const PotentialTable& table, const PhysicalConstants& pc, CMatrix& out) {
  if (m < 0 || m >= static_cast<int>(table.rows.size()))
    throw std::invalid_argument("assemble_block: row index out of range");
  const int nm = space.n_modes;
  ensure_shape(out, space.block_dim, space.block_dim);
  const cx Et(E, eta);
  for (int i = 0; i < nm; ++i) {
    const double kin = pc.hbar_vF * space.q[i];
    out(2 * i, 2 * i) = Et + kin;
    out(2 * i + 1, 2 * i + 1) = Et - kin;
    for (int j = 0; j < nm; ++j) {
      const double v = table.entry(m, i, j);
      out(2 * i, 2 * j) -= v;
      out(2 * i + 1, 2 * j + 1) -= v;
    }
  }
}

CMatrix lead_block(double E, double eta, const ModeSpace& space, const PhysicalConstants& pc) {
  CMatrix a(space.block_dim, space.block_dim);
  const cx Et(E, eta);
  for (int i = 0; i < space.n_modes; ++i) {
    const double kin = pc.hbar_vF * space.q[i];
    a(2 * i, 2 * i) = Et + kin;
    a(2 * i + 1, 2 * i + 1) = Et - kin;
  }
  return a;
}

SurfaceSelfEnergy surface_self_energy_analytic(double E, double eta, const ModeSpace& space,
                                               double delta, const PhysicalConstants& pc,
                                               LeadSide side) {
  if (!(delta > 0.0))
    throw std::invalid_argument("surface_self_energy_analytic: delta must be > 0");
  const double eta_eff = std::max(eta, kEtaFloor);
  SurfaceSelfEnergy sigma;
  sigma.side = side;
  sigma.diag.resize(space.block_dim);
  const cx Et(E, eta_eff);
  for (int i = 0; i < space.n_modes; ++i) {
    const double q = space.q[i];
    const cx X = delta * delta * (Et * Et / (pc.hbar_vF * pc.hbar_vF) - q * q);
    const cx root = std::sqrt(1.0 - 1.0 / X);
    for (int gi = 0; gi < 2; ++gi) {
      const double gamma = (gi == 0) ? +1.0 : -1.0;
      const cx pref = Et + gamma * pc.hbar_vF * q;
      cx s = 0.5 * (1.0 - root) * pref;
      if (s.imag() > 0.0) s = 0.5 * (1.0 + root) * pref;
      sigma.diag[2 * i + gi] = s;
    }
  }
  return sigma;
}

SurfaceSelfEnergy surface_self_energy_iterative(double /*E*/, double eta, const CMatrix& a_lead,
                                                const CouplingBlock& b, LeadSide side) {
  if (!(eta > 0.0))
    throw std::invalid_argument("surface_self_energy_iterative: eta must be > 0");
  const int n = a_lead.rows();
  if (a_lead.cols() != n || n != b.dim)
    throw std::invalid_argument("surface_self_energy_iterative: shape mismatch");

  using kernels::gemm;
  using kernels::GemmMode;
  const CMatrix bd = b.dense();
  // Layer-doubling decimation of the semi-infinite chain with on-site a and
  // couplings M_{j,j+1} = -b, M_{j+1,j} = +b.
  CMatrix eps_s = a_lead, eps_b = a_lead;
  CMatrix U(n, n), L(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      U(i, j) = -bd(i, j);
      L(i, j) = bd(i, j);
    }
  CMatrix g(n, n), gs(n, n), t1(n, n), ugl(n, n), lgu(n, n), nu(n, n), nl(n, n), work(n, n);
  CMatrix sig(n, n), sig_prev(n, n);
  std::vector<int> piv;
  constexpr int kMaxIter = 10000;
  constexpr double kTol = 1e-12;
  double resid = 0.0;
  for (int it = 0; it < kMaxIter; ++it) {
    work = eps_b;
    kernels::invert(work, piv, g);
    gemm(GemmMode::set, t1, U, g);
    gemm(GemmMode::set, ugl, t1, L);
    gemm(GemmMode::set_neg, nu, t1, U);
    gemm(GemmMode::set, t1, L, g);
    gemm(GemmMode::set, lgu, t1, U);
    gemm(GemmMode::set_neg, nl, t1, L);
    sub_inplace(eps_s, ugl);
    sub_inplace(eps_b, ugl);
    sub_inplace(eps_b, lgu);
    U = nu;
    L = nl;

    work = eps_s;
    kernels::invert(work, piv, gs);
    gemm(GemmMode::set, t1, bd, gs);
    gemm(GemmMode::set_neg, sig, t1, bd);

    resid = max_abs_diff(sig, sig_prev);
    if (it > 0 && resid < kTol) {
      // result must be diagonal for a diagonal lead block
      double offmax = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) offmax = std::max(offmax, std::abs(sig(i, j)));
      if (offmax > 1e-9 * (1.0 + max_abs(sig)))
        throw NumericalFailure("surface_self_energy_iterative: non-diagonal fixed point");
      SurfaceSelfEnergy out;
      out.side = side;
      out.diag.resize(n);
      for (int i = 0; i < n; ++i) out.diag[i] = sig(i, i);
      return out;
    }
    sig_prev = sig;
  }
  throw NumericalFailure("surface_self_energy_iterative: no convergence after 10000 iterations, last residual " +
                         std::to_string(resid));
}

CMatrix gamma_matrix(const SurfaceSelfEnergy& sigma) {
  const int n = static_cast<int>(sigma.diag.size());
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = cx(-2.0 * sigma.diag[i].imag(), 0.0);
  return g;
}

namespace {

void check_system(const BlockSystem& sys) {
  if (sys.num_rows < 3) throw std::invalid_argument("rgf: need at least 3 device rows");
  if (sys.dim <= 0 || sys.dim != sys.b.dim) throw std::invalid_argument("rgf: bad block dim");
  if (static_cast<int>(sys.sigma_lower.diag.size()) != sys.dim ||
      static_cast<int>(sys.sigma_upper.diag.size()) != sys.dim)
    throw std::invalid_argument("rgf: self-energy dimension mismatch");
  if (!sys.fill_row) throw std::invalid_argument("rgf: missing row source");
}

// Forward sweep: left-connected inverses g_m and the corner product
//   G(0,M-1) = (prod_m -g_{m-1} b) g_{M-1}.
// Stores every g_m in *store when provided; otherwise keeps only the last.
void forward_sweep(const BlockSystem& sys, std::vector<CMatrix>* store, CMatrix& corner) {
  const int M = sys.num_rows, n = sys.dim;
  CMatrix A(n, n), S(n, n), tmp(n, n), g_local(n, n);
  std::vector<int> piv;
  const CMatrix* g_prev = nullptr;
  if (store) store->resize(M);
  for (int m = 0; m < M; ++m) {
    sys.fill_row(m, A);
    if (m == 0)
      for (int i = 0; i < n; ++i) A(i, i) -= sys.sigma_lower.diag[i];
    if (m == M - 1)
      for (int i = 0; i < n; ++i) A(i, i) -= sys.sigma_upper.diag[i];
    if (g_prev) {
      sandwich_b(sys.b, *g_prev, S);
      add_inplace(A, S);
    }
    CMatrix* g_cur = store ? &(*store)[m] : &g_local;
    try {
      kernels::lu_factor(A, piv);
    } catch (const NumericalFailure&) {
      throw NumericalFailure("rgf_solve: singular pivot block at device row " + std::to_string(m));
    }
    kernels::lu_inverse(A, piv, *g_cur);
    if (m == 0) {
      corner = *g_cur;
    } else {
      mul_b_right(sys.b, corner, tmp);
      kernels::gemm(kernels::GemmMode::set_neg, corner, tmp, *g_cur);
    }
    g_prev = g_cur;
  }
}

}  // namespace

DeviceGreen rgf_solve(const BlockSystem& sys) {
  check_system(sys);
  const int M = sys.num_rows, n = sys.dim;
  DeviceGreen out;
  out.energy = sys.energy;
  out.eta = sys.eta;
  std::vector<CMatrix> g;
  forward_sweep(sys, &g, out.corner);
  out.diag.resize(M);
  out.diag[M - 1] = g[M - 1];
  CMatrix P(n, n), t1(n, n), t2(n, n);
  for (int m = M - 2; m >= 0; --m) {
    sandwich_b(sys.b, out.diag[m + 1], P);
    kernels::gemm(kernels::GemmMode::set, t1, P, g[m]);
    kernels::gemm(kernels::GemmMode::set, t2, g[m], t1);
    out.diag[m] = g[m];
    sub_inplace(out.diag[m], t2);
  }
  return out;
}

CMatrix rgf_corner(const BlockSystem& sys) {
  check_system(sys);
  CMatrix corner;
  forward_sweep(sys, nullptr, corner);
  return corner;
}

CornerAndTraces rgf_diag_traces(const BlockSystem& sys) {
  check_system(sys);
  const int M = sys.num_rows, n = sys.dim;
  CornerAndTraces out;
  std::vector<CMatrix> g;
  forward_sweep(sys, &g, out.corner);
  out.diag_trace.resize(M);
  CMatrix Gd = g[M - 1];
  out.diag_trace[M - 1] = trace(Gd);
  CMatrix P(n, n), t1(n, n), t2(n, n);
  for (int m = M - 2; m >= 0; --m) {
    sandwich_b(sys.b, Gd, P);
    kernels::gemm(kernels::GemmMode::set, t1, P, g[m]);
    kernels::gemm(kernels::GemmMode::set, t2, g[m], t1);
    Gd = g[m];
    sub_inplace(Gd, t2);
    out.diag_trace[m] = trace(Gd);
  }
  return out;
}

DeviceGreen dense_solve(const BlockSystem& sys) {
  check_system(sys);
  const int M = sys.num_rows, n = sys.dim;
  const long total = long(M) * n;
  if (total > 4000)
    throw std::invalid_argument("dense_solve: M*block_dim = " + std::to_string(total) +
                                " exceeds the 4000 guard");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(total, total);
  CMatrix row(n, n);
  const CMatrix bd = sys.b.dense();
  for (int m = 0; m < M; ++m) {
    sys.fill_row(m, row);
    if (m == 0)
      for (int i = 0; i < n; ++i) row(i, i) -= sys.sigma_lower.diag[i];
    if (m == M - 1)
      for (int i = 0; i < n; ++i) row(i, i) -= sys.sigma_upper.diag[i];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(m * n + i, m * n + j) = row(i, j);
    if (m + 1 < M)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          A(m * n + i, (m + 1) * n + j) = bd(i, j);
          A((m + 1) * n + i, m * n + j) = -bd(i, j);
        }
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  Eigen::MatrixXcd G = lu.inverse();
  if (!G.allFinite()) throw NumericalFailure("dense_solve: singular system");

  DeviceGreen out;
  out.energy = sys.energy;
  out.eta = sys.eta;
  out.corner.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.corner(i, j) = G(i, (M - 1) * n + j);
  out.diag.resize(M);
  for (int m = 0; m < M; ++m) {
    out.diag[m].resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.diag[m](i, j) = G(m * n + i, m * n + j);
  }
  return out;
}

}  // namespace rk
