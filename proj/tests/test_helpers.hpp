#pragma once

#include <memory>
#include <random>

#include "ribbon_klein/rgf.hpp"

namespace rk::testing {

// Hermitian-plus-damping block-tridiagonal instance with the physical
// coupling structure and random retarded self-energies.
struct RandomInstance {
  int M = 0;
  int dim = 0;
  CouplingBlock b;
  SurfaceSelfEnergy sigma_lower, sigma_upper;
  std::shared_ptr<std::vector<CMatrix>> blocks;

  BlockSystem system() const {
    BlockSystem sys;
    sys.num_rows = M;
    sys.dim = dim;
    sys.b = b;
    sys.sigma_lower = sigma_lower;
    sys.sigma_upper = sigma_upper;
    auto blk = blocks;
    sys.fill_row = [blk](int m, CMatrix& out) { out = (*blk)[m]; };
    return sys;
  }
};

inline RandomInstance random_instance(std::mt19937& rng, int max_modes = 6, int max_rows = 60,
                                      double eta_min = 1e-6, double eta_max = 1e-2) {
  std::uniform_int_distribution<int> modes(1, max_modes);
  std::uniform_int_distribution<int> rows(3, max_rows);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> tdist(0.1, 3.0);
  std::uniform_real_distribution<double> le(std::log(eta_min), std::log(eta_max));

  RandomInstance inst;
  const int nm = modes(rng);
  inst.dim = 2 * nm;
  inst.M = rows(rng);
  inst.b = CouplingBlock{tdist(rng), inst.dim};
  const double eta = std::exp(le(rng));

  inst.blocks = std::make_shared<std::vector<CMatrix>>();
  inst.blocks->reserve(inst.M);
  for (int m = 0; m < inst.M; ++m) {
    CMatrix h(inst.dim, inst.dim);
    for (int i = 0; i < inst.dim; ++i)
      for (int j = i; j < inst.dim; ++j) {
        const cx v(u(rng), i == j ? 0.0 : u(rng));
        h(i, j) = v;
        h(j, i) = std::conj(v);
      }
    for (int i = 0; i < inst.dim; ++i) h(i, i) += cx(0.0, eta);
    inst.blocks->push_back(std::move(h));
  }
  auto random_sigma = [&](LeadSide side) {
    SurfaceSelfEnergy s;
    s.side = side;
    s.diag.resize(inst.dim);
    for (int i = 0; i < inst.dim; ++i) s.diag[i] = cx(u(rng), -std::abs(u(rng)));
    return s;
  };
  inst.sigma_lower = random_sigma(LeadSide::Lower);
  inst.sigma_upper = random_sigma(LeadSide::Upper);
  return inst;
}

inline double rel_diff(const CMatrix& got, const CMatrix& want) {
  const double scale = std::max(max_abs(want), 1e-300);
  return max_abs_diff(got, want) / scale;
}

}  // namespace rk::testing
